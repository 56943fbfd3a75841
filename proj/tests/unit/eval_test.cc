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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "decaph/eval/metrics.h"
#include "decaph/eval/roc.h"
#include "decaph/util/logging.h"
#include "generators.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace decaph {
namespace {

using ::testing::Optional;
using ::testing::DoubleNear;

constexpr double kInf = std::numeric_limits<double>::infinity();

void ExpectSameMetric(const MaybeMetric& got, const std::optional<double>& want,
                      const char* name, std::uint64_t c) {
  ASSERT_EQ(got.has_value(), want.has_value()) << name << " case " << c;
  if (want) ASSERT_NEAR(*got, *want, 1e-12) << name << " case " << c;
}

TEST(RocTest, HandExample) {
  const double scores[] = {0.1, 0.4, 0.35, 0.8};
  const int labels[] = {0, 0, 1, 1};
  auto roc = Roc(scores, labels);
  ASSERT_TRUE(roc.ok());
  EXPECT_EQ(roc->auroc, 0.75);
  ASSERT_EQ(roc->points.size(), 5u);
  EXPECT_EQ(roc->points.front().threshold, kInf);
  EXPECT_EQ(roc->points.front().fpr, 0.0);
  EXPECT_EQ(roc->points.back().fpr, 1.0);
  EXPECT_EQ(roc->points.back().tpr, 1.0);
  EXPECT_EQ(*YoudenThreshold(scores, labels), 0.35);  // ties 0.8
}

TEST(RocTest, RejectsDegenerateInput) {
  const double scores[] = {0.1, 0.2};
  const int one_class[] = {1, 1};
  EXPECT_FALSE(Roc(scores, one_class).ok());
  const double nan_scores[] = {0.1, std::nan("")};
  const int labels[] = {0, 1};
  EXPECT_FALSE(Roc(nan_scores, labels).ok());
  const int short_labels[] = {0};
  EXPECT_FALSE(Auroc(scores, short_labels).ok());
  const int bad_labels[] = {0, 2};
  EXPECT_FALSE(Auroc(scores, bad_labels).ok());
}

// Oracle: the trapezoid area equals the O(n^2) pairwise count exactly, and
// Youden's threshold equals an exhaustive sweep, with and without ties.
TEST(RocPropertyTest, MatchesPairwiseAndExhaustiveOracles) {
  for (std::uint64_t c = 0; c < 300; ++c) {
    Prng prng = testing::CasePrng(50, c);
    const auto n = static_cast<std::size_t>(testing::UniformInt(prng, 2, 500));
    const int grid = static_cast<int>(testing::UniformInt(prng, 0, 3)) * 4;
    std::vector<double> scores;
    std::vector<int> labels;
    testing::RandomScoresLabels(prng, n, grid, scores, labels);
    auto roc = Roc(scores, labels);
    ASSERT_TRUE(roc.ok()) << roc.status();
    ASSERT_EQ(roc->auroc, testing::PairwiseAuroc(scores, labels))
        << "case " << c;
    const double threshold = *YoudenThreshold(scores, labels);
    ASSERT_EQ(threshold, testing::BruteForceYouden(scores, labels))
        << "case " << c;
    for (std::size_t i = 1; i < roc->points.size(); ++i) {
      ASSERT_LT(roc->points[i].threshold, roc->points[i - 1].threshold);
      ASSERT_GE(roc->points[i].fpr, roc->points[i - 1].fpr);
      ASSERT_GE(roc->points[i].tpr, roc->points[i - 1].tpr);
      ASSERT_NEAR(roc->points[i].tpr - roc->points[i].fpr,
                  testing::YoudenJ(scores, labels, roc->points[i].threshold),
                  1e-12);
    }
  }
}

// Invariances: monotone transforms and permutations leave AUROC unchanged;
// swapping the classes reflects it.
TEST(RocPropertyTest, Invariances) {
  for (std::uint64_t c = 0; c < 100; ++c) {
    Prng prng = testing::CasePrng(51, c);
    const auto n = static_cast<std::size_t>(testing::UniformInt(prng, 2, 200));
    std::vector<double> scores;
    std::vector<int> labels;
    testing::RandomScoresLabels(prng, n, 8, scores, labels);
    const double base = *Auroc(scores, labels);

    std::vector<double> squashed(scores);
    for (double& s : squashed) s = std::tanh(s) * 3 + 1;
    ASSERT_EQ(*Auroc(squashed, labels), base);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(order[i], order[prng.NextBelow(i + 1)]);
    }
    std::vector<double> ps(n);
    std::vector<int> pl(n);
    for (std::size_t i = 0; i < n; ++i) {
      ps[i] = scores[order[i]];
      pl[i] = labels[order[i]];
    }
    ASSERT_EQ(*Auroc(ps, pl), base);

    std::vector<int> flipped(labels);
    for (int& l : flipped) l = 1 - l;
    ASSERT_NEAR(*Auroc(scores, flipped), 1.0 - base, 1e-12);
  }
}

TEST(RocTest, TprAtLowFpr) {
  // 1000 negatives at distinct scores 0..999, positives above 995.
  std::vector<double> scores;
  std::vector<int> labels;
  for (int i = 0; i < 1000; ++i) {
    scores.push_back(i);
    labels.push_back(0);
  }
  for (int i = 0; i < 10; ++i) {
    scores.push_back(995.5 + i * 0.01);
    labels.push_back(1);
  }
  auto roc = Roc(scores, labels);
  ASSERT_EQ(roc->tpr_at_fpr.size(), 3u);
  EXPECT_EQ(roc->tpr_at_fpr[0].fpr_limit, 1e-3);
  // FPR 0.001 admits one negative (999); every positive is above 995.
  EXPECT_EQ(roc->tpr_at_fpr[0].tpr, 0.0);
  EXPECT_EQ(roc->tpr_at_fpr[1].tpr, 1.0);
  EXPECT_EQ(roc->tpr_at_fpr[2].tpr, 1.0);
}

TEST(RocTest, YoudenPrefersSmallestThresholdOnTies) {
  const double scores[] = {1, 2, 3, 4};
  const int labels[] = {0, 1, 0, 1};
  // J is 1/2 at thresholds 4 and 2; the smaller one wins.
  EXPECT_EQ(*YoudenThreshold(scores, labels), 2.0);
}

TEST(MetricsTest, RatioAndMedian) {
  EXPECT_EQ(Ratio(1, 0), std::nullopt);
  EXPECT_THAT(Ratio(1, 4), Optional(0.25));
  EXPECT_EQ(Median({}), std::nullopt);
  EXPECT_THAT(Median({3, 1, 2}), Optional(2.0));
  EXPECT_THAT(Median({4, 1, 2, 3}), Optional(2.5));
  EXPECT_EQ(F1(ConfusionCounts{}), std::nullopt);
  EXPECT_THAT(F1(ConfusionCounts{2, 1, 5, 1}), Optional(DoubleNear(2.0 / 3, 1e-15)));
}

TEST(MetricsTest, BinaryHandExample) {
  const double scores[] = {0.9, 0.8, 0.3, 0.2, 0.6};
  const int labels[] = {1, 0, 1, 0, 0};
  auto r = BinaryMetrics(scores, labels, 0.5);
  ASSERT_TRUE(r.ok());
  // Predicted positive: 0.9 (tp), 0.8 (fp), 0.6 (fp). Negative: 0.3 (fn),
  // 0.2 (tn).
  EXPECT_EQ(r->positive.tp, 1);
  EXPECT_EQ(r->positive.fp, 2);
  EXPECT_EQ(r->positive.fn, 1);
  EXPECT_EQ(r->positive.tn, 1);
  EXPECT_THAT(r->ppv, Optional(DoubleNear(1.0 / 3, 1e-15)));
  EXPECT_THAT(r->npv, Optional(0.5));
  EXPECT_THAT(r->f1_positive, Optional(0.4));
  EXPECT_THAT(r->f1_negative, Optional(0.4));
  EXPECT_THAT(r->macro_f1, Optional(DoubleNear(0.4, 1e-15)));
  EXPECT_THAT(r->weighted_f1, Optional(DoubleNear(0.4, 1e-15)));
}

TEST(MetricsTest, BinaryUndefinedWhenNothingPredictedPositive) {
  const double scores[] = {0.1, 0.2};
  const int labels[] = {0, 1};
  auto r = BinaryMetrics(scores, labels, 0.5);
  EXPECT_EQ(r->ppv, std::nullopt);
  EXPECT_THAT(r->f1_positive, Optional(0.0));
  EXPECT_FALSE(BinaryMetrics(scores, labels, kInf).ok());
}

// Oracle: 1000 random instances against textbook formulas.
TEST(MetricsPropertyTest, BinaryMatchesFormulas) {
  for (std::uint64_t c = 0; c < 1000; ++c) {
    Prng prng = testing::CasePrng(52, c);
    const auto n = static_cast<std::size_t>(testing::UniformInt(prng, 1, 60));
    std::vector<double> scores(n);
    std::vector<int> labels(n), predicted(n);
    const double threshold = testing::Uniform(prng, -1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = testing::Uniform(prng, -2.0, 2.0);
      labels[i] = prng.NextBernoulli(0.5);
      predicted[i] = scores[i] >= threshold;
    }
    auto r = BinaryMetrics(scores, labels, threshold);
    ASSERT_TRUE(r.ok());
    const testing::BinaryOracle o = testing::BinaryFormulas(predicted, labels);
    ExpectSameMetric(r->ppv, o.ppv, "ppv", c);
    ExpectSameMetric(r->npv, o.npv, "npv", c);
    ExpectSameMetric(r->f1_positive, o.f1_pos, "f1_pos", c);
    ExpectSameMetric(r->f1_negative, o.f1_neg, "f1_neg", c);
    ExpectSameMetric(r->macro_f1, o.macro_f1, "macro_f1", c);
    ExpectSameMetric(r->weighted_f1, o.weighted_f1, "weighted_f1", c);
  }
}

TEST(MetricsPropertyTest, MulticlassMatchesFormulas) {
  for (std::uint64_t c = 0; c < 1000; ++c) {
    Prng prng = testing::CasePrng(53, c);
    const int k = static_cast<int>(testing::UniformInt(prng, 2, 6));
    const auto n = static_cast<std::size_t>(testing::UniformInt(prng, 1, 80));
    std::vector<int> labels(n), predicted(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(prng.NextBelow(k));
      predicted[i] = prng.NextBernoulli(0.6) ? labels[i]
                                             : static_cast<int>(prng.NextBelow(k));
    }
    ScopedWarningCapture quiet;
    auto r = MulticlassMetrics(predicted, labels, k);
    ASSERT_TRUE(r.ok());
    const testing::MulticlassOracle o =
        testing::MulticlassFormulas(predicted, labels, k);
    ExpectSameMetric(r->median_f1, o.median_f1, "median_f1", c);
    ExpectSameMetric(r->weighted_precision, o.weighted_precision, "wp", c);
    ExpectSameMetric(r->weighted_recall, o.weighted_recall, "wr", c);
  }
}

TEST(MetricsTest, MulticlassWarnsAboutAbsentAndUnpredictedClasses) {
  const int labels[] = {0, 0, 1, 1};
  const int predicted[] = {0, 0, 0, 1};
  {
    ScopedWarningCapture capture;
    auto r = MulticlassMetrics(predicted, labels, 3);
    ASSERT_TRUE(r.ok());
    EXPECT_FALSE(capture.warnings().empty());
    EXPECT_EQ(r->f1[2], std::nullopt);
    EXPECT_THAT(r->median_f1, Optional(DoubleNear((0.8 + 2.0 / 3) / 2, 1e-15)));
  }
  const int out_of_range[] = {0, 0, 3, 1};
  EXPECT_FALSE(MulticlassMetrics(out_of_range, labels, 3).ok());
}

}  // namespace
}  // namespace decaph
