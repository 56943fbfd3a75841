// Copyright 2026 The DeCaPH Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <vector>

#include "decaph/audit/lira.h"
#include "decaph/audit/shadow.h"
#include "decaph/eval/roc.h"
#include "generators.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace decaph {
namespace {

constexpr double kPi = 3.14159265358979323846;

TEST(ShadowPlanTest, EveryExampleIsInHalfTheShadows) {
  for (int n_shadow : {4, 8, 32}) {
    auto plan = ShadowPlan::Create(n_shadow, 257, 11);
    ASSERT_TRUE(plan.ok());
    for (std::size_t i = 0; i < 257; ++i) {
      int in = 0;
      for (int s = 0; s < n_shadow; ++s) in += plan->IsMember(s, i);
      ASSERT_EQ(in, n_shadow / 2) << "example " << i;
    }
    for (int s = 0; s < n_shadow; ++s) {
      const auto members = plan->MembersOf(s);
      ASSERT_TRUE(std::is_sorted(members.begin(), members.end()));
      for (auto i : members) ASSERT_TRUE(plan->IsMember(s, i));
      // Each shadow holds about half the population.
      EXPECT_NEAR(static_cast<double>(members.size()), 128.5,
                  5 * std::sqrt(257 * 0.25));
    }
  }
}

TEST(ShadowPlanTest, RejectsTooFewOrOddShadowsAndIsSeeded) {
  EXPECT_FALSE(ShadowPlan::Create(2, 10, 1).ok());
  EXPECT_FALSE(ShadowPlan::Create(5, 10, 1).ok());
  EXPECT_FALSE(ShadowPlan::Create(4, 0, 1).ok());
  auto a = ShadowPlan::Create(8, 50, 3);
  auto b = ShadowPlan::Create(8, 50, 3);
  auto c = ShadowPlan::Create(8, 50, 4);
  bool differs = false;
  for (int s = 0; s < 8; ++s) {
    EXPECT_EQ(a->MembersOf(s), b->MembersOf(s));
    differs |= a->MembersOf(s) != c->MembersOf(s);
  }
  EXPECT_TRUE(differs);
}

TEST(ConfidenceTest, LogitOfProbabilityClamps) {
  EXPECT_NEAR(LogitOfProbability(0.75), std::log(3.0), 1e-15);
  EXPECT_EQ(LogitOfProbability(1.0), kLogitClamp);
  EXPECT_EQ(LogitOfProbability(0.0), -kLogitClamp);
}

TEST(ConfidenceTest, MatchesDirectFormulas) {
  Prng prng = testing::CasePrng(80, 0);
  const Eigen::MatrixXd x = testing::GaussianMatrix(prng, 6, 3);

  auto logistic = ModelState::Initialize(Architecture::Logistic(3), 0, 0.1, 2);
  const Eigen::MatrixXi y = testing::RandomLabels(prng, 6, Task::Binary());
  const Eigen::MatrixXd z = *Logits(*logistic, x);
  const Eigen::VectorXd conf = *LogitConfidence(*logistic, x, y);
  for (Eigen::Index i = 0; i < 6; ++i) {
    EXPECT_NEAR(conf(i), y(i, 0) == 1 ? z(i, 0) : -z(i, 0), 1e-12);
  }

  auto softmax = ModelState::Initialize(
      Architecture::Mlp(3, {4}, 3, LossHead::kSoftmaxCe), 0, 0.1, 2);
  const Eigen::MatrixXi yc = testing::RandomLabels(prng, 6, Task::Multiclass(3));
  const Eigen::MatrixXd p = *Predict(*softmax, x);
  const Eigen::VectorXd cc = *LogitConfidence(*softmax, x, yc);
  for (Eigen::Index i = 0; i < 6; ++i) {
    const double s = p(i, yc(i, 0));
    EXPECT_NEAR(cc(i), std::log(s / (1 - s)), 1e-10);
  }

  // A huge logit saturates at the clamp instead of overflowing.
  Eigen::VectorXd big(4);
  big << 1e6, 0, 0, 0;
  auto sharp = ModelState::Create(Architecture::Logistic(3), big, 0, 0.1);
  Eigen::MatrixXd one(1, 3);
  one << 1, 0, 0;
  Eigen::MatrixXi pos(1, 1);
  pos << 1;
  EXPECT_EQ((*LogitConfidence(*sharp, one, pos))(0), kLogitClamp);
}

TEST(LiraTest, GaussianLogPdf) {
  EXPECT_NEAR(GaussianLogPdf(1.0, 0.0, 2.0),
              -0.125 - std::log(2.0 * std::sqrt(2 * kPi)), 1e-15);
}

// Four shadows on three examples; fits computed by hand from the plan.
TEST(LiraTest, FitsPerExampleGaussians) {
  auto plan = ShadowPlan::Create(4, 3, 5);
  ASSERT_TRUE(plan.ok());
  Eigen::MatrixXd scores(4, 3);
  scores << 1.0, 2.0, -1.0,  //
      3.0, 2.0, 0.5,         //
      -2.0, 4.0, 0.5,        //
      0.0, 6.0, 2.5;
  auto fits = FitLira(*plan, scores);
  ASSERT_TRUE(fits.ok());
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<double> in, out;
    for (int s = 0; s < 4; ++s) {
      (plan->IsMember(s, i) ? in : out).push_back(scores(s, i));
    }
    ASSERT_EQ(in.size(), 2u);
    const double mu_in = (in[0] + in[1]) / 2;
    const double mu_out = (out[0] + out[1]) / 2;
    EXPECT_DOUBLE_EQ((*fits)[i].mu_in, mu_in);
    EXPECT_DOUBLE_EQ((*fits)[i].mu_out, mu_out);
    EXPECT_DOUBLE_EQ((*fits)[i].sigma_in,
                     std::max(std::abs(in[0] - in[1]) / 2, kLiraStdFloor));
    EXPECT_DOUBLE_EQ((*fits)[i].sigma_out,
                     std::max(std::abs(out[0] - out[1]) / 2, kLiraStdFloor));
  }
  EXPECT_FALSE(FitLira(*plan, Eigen::MatrixXd::Zero(3, 3)).ok());
}

TEST(LiraTest, GlobalVariancePoolsAcrossExamples) {
  auto plan = ShadowPlan::Create(4, 2, 6);
  Eigen::MatrixXd scores(4, 2);
  scores << 0, 0, 2, 4, 4, 8, 6, 12;
  auto local = FitLira(*plan, scores, false);
  auto global = FitLira(*plan, scores, true);
  const double mean_var_in =
      ((*local)[0].sigma_in * (*local)[0].sigma_in +
       (*local)[1].sigma_in * (*local)[1].sigma_in) / 2;
  EXPECT_NEAR((*global)[0].sigma_in, std::sqrt(mean_var_in), 1e-12);
  EXPECT_EQ((*global)[0].sigma_in, (*global)[1].sigma_in);
  EXPECT_EQ((*global)[0].mu_in, (*local)[0].mu_in);
}

TEST(LiraTest, AttackStatisticIsLogLikelihoodRatio) {
  const LiraFit fits[] = {{2.0, 1.0, 0.0, 0.5}, {0.0, 1.0, 0.0, 1.0}};
  const double target[] = {1.0, 3.0};
  const int member[] = {1, 0};
  auto scores = Attack(target, fits, member);
  ASSERT_TRUE(scores.ok());
  EXPECT_NEAR((*scores)[0].lira_statistic,
              GaussianLogPdf(1.0, 2.0, 1.0) - GaussianLogPdf(1.0, 0.0, 0.5),
              1e-15);
  EXPECT_EQ((*scores)[1].lira_statistic, 0.0);
  EXPECT_TRUE((*scores)[0].is_member);
  EXPECT_EQ((*scores)[1].example_id, 1u);
  const int short_member[] = {1};
  EXPECT_FALSE(Attack(target, fits, short_member).ok());
}

// When members and non-members are well separated in every model, the
// attack separates the target's members almost perfectly.
TEST(LiraTest, SeparableConstructionIsDetected) {
  constexpr int kShadows = 16;
  constexpr std::size_t kN = 400;
  auto plan = ShadowPlan::Create(kShadows, kN, 9);
  Prng prng = testing::CasePrng(81, 0);
  Eigen::MatrixXd scores(kShadows, kN);
  for (int s = 0; s < kShadows; ++s) {
    for (std::size_t i = 0; i < kN; ++i) {
      scores(s, i) = (plan->IsMember(s, i) ? 3.0 : 0.0) + prng.NextGaussian();
    }
  }
  auto fits = FitLira(*plan, scores);
  std::vector<double> target(kN);
  std::vector<int> member(kN);
  for (std::size_t i = 0; i < kN; ++i) {
    member[i] = prng.NextBernoulli(0.5);
    target[i] = (member[i] ? 3.0 : 0.0) + prng.NextGaussian();
  }
  auto attack = Attack(target, *fits, member);
  std::vector<double> stat;
  for (const AttackScore& a : *attack) stat.push_back(a.lira_statistic);
  EXPECT_GE(*Auroc(stat, member), 0.95);
}

TEST(AuditModeTest, SmallRunIsDeterministicAndWellFormed) {
  Prng prng = testing::CasePrng(82, 0);
  std::vector<DatasetShard> shards;
  for (ParticipantId id = 0; id < 2; ++id) {
    shards.push_back(testing::RandomShard(prng, id, 30, 3, Task::Binary()));
  }
  ProtocolConfig protocol;
  protocol.mode = Mode::kFl;
  protocol.aggregate_batch_target = 10;
  protocol.max_rounds = 5;
  auto initial = ModelState::Initialize(Architecture::Logistic(3), 0, 0.1, 1);
  AuditConfig audit{4, false, 3, 1};
  auto a = AuditMode(protocol, shards, *initial, audit);
  ASSERT_TRUE(a.ok()) << a.status();
  ASSERT_EQ(a->scores.size(), 60u);
  int members = 0;
  for (const AttackScore& s : a->scores) members += s.is_member;
  EXPECT_EQ(members, 30);
  EXPECT_EQ(a->target_rounds, 5);
  EXPECT_EQ(a->mode, Mode::kFl);
  audit.workers = 3;
  auto b = AuditMode(protocol, shards, *initial, audit);
  ASSERT_TRUE(b.ok());
  for (std::size_t i = 0; i < 60; ++i) {
    EXPECT_EQ(a->scores[i].lira_statistic, b->scores[i].lira_statistic);
  }
  EXPECT_EQ(a->roc.auroc, b->roc.auroc);
  audit.n_shadow = 2;
  EXPECT_FALSE(AuditMode(protocol, shards, *initial, audit).ok());
}

}  // namespace
}  // namespace decaph
