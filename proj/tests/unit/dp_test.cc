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

#include "decaph/dp/accountant.h"
#include "decaph/dp/mechanism.h"
#include "decaph/dp/rdp.h"
#include "generators.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace decaph {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> IntegerOrders() {
  std::vector<double> alphas;
  for (int a = 2; a <= 64; ++a) alphas.push_back(a);
  return alphas;
}

TEST(ClipTest, BoundsNormsAndKeepsShortRows) {
  GradientMatrix g(3, 2);
  g << 3, 4, 0.3, 0.4, 0, 0;
  auto clipped = Clip(g, 1.0);
  ASSERT_TRUE(clipped.ok());
  EXPECT_NEAR(clipped->row(0).norm(), 1.0, 1e-15);
  EXPECT_NEAR((*clipped)(0, 0), 0.6, 1e-15);
  EXPECT_EQ(clipped->row(1), g.row(1));
  EXPECT_EQ(clipped->row(2), g.row(2));
  EXPECT_EQ(*Clip(g, kInf), g);
  EXPECT_FALSE(Clip(g, 0.0).ok());
  EXPECT_FALSE(Clip(g, -1.0).ok());
}

// Property: clipping is idempotent, bounded and scale-equivariant.
TEST(ClipPropertyTest, IdempotentAndScaleEquivariant) {
  for (std::uint64_t c = 0; c < 200; ++c) {
    Prng prng = testing::CasePrng(40, c);
    const GradientMatrix g = testing::GaussianRows(
        prng, testing::UniformInt(prng, 1, 20), testing::UniformInt(prng, 1, 30),
        testing::Uniform(prng, 0.01, 10.0));
    const double clip = testing::Uniform(prng, 0.1, 5.0);
    const double scale = testing::Uniform(prng, 0.1, 10.0);
    const GradientMatrix once = *Clip(g, clip);
    const GradientMatrix twice = *Clip(once, clip);
    ASSERT_LE((once - twice).cwiseAbs().maxCoeff(), 1e-12 * clip);
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      ASSERT_LE(once.row(r).norm(), clip * (1 + 1e-12));
    }
    const GradientMatrix scaled = *Clip(scale * g, scale * clip);
    ASSERT_LE((scaled - scale * once).cwiseAbs().maxCoeff(),
              1e-12 * scale * clip);
  }
}

TEST(NoiseTest, ValidatesArguments) {
  Prng prng(1, MakeStreamId(StreamDomain::kTest));
  const GradientMatrix rows = GradientMatrix::Zero(2, 3);
  EXPECT_FALSE(LocalNoiseAndSum(rows, 3, 2, 1, 1, prng).ok());
  EXPECT_FALSE(LocalNoiseAndSum(rows, 1, 5, 1, 1, prng).ok());
  EXPECT_FALSE(LocalNoiseAndSum(rows, 2, 5, 1, -1, prng).ok());
  EXPECT_FALSE(LocalNoiseAndSum(rows, 2, 5, 1, kInf, prng).ok());
}

TEST(NoiseTest, EmptyBatchesAddNothing) {
  Prng prng(1, MakeStreamId(StreamDomain::kTest));
  const auto empty = LocalNoiseAndSum(GradientMatrix::Zero(0, 4), 0, 10, 1, 1, prng);
  ASSERT_TRUE(empty.ok());
  EXPECT_EQ(*empty, Eigen::VectorXd::Zero(4));
  GradientMatrix one(1, 2);
  one << 1, 2;
  EXPECT_EQ(*LocalNoiseAndSum(one, 1, 1, 1, 0, prng), Eigen::Vector2d(1, 2));
}

// Summing every participant's share reproduces one centralized draw of
// variance (C sigma)^2 with zero mean.
TEST(NoiseTest, SharesAddUpToCentralizedVariance) {
  const double clip = 1.5;
  const double sigma = 0.8;
  const std::vector<std::vector<std::int64_t>> batches = {
      {3, 7}, {1, 2, 3, 10}, {1, 2, 3, 4, 5, 6, 7, 8}};
  constexpr int kTrials = 100000;
  for (const auto& local : batches) {
    std::int64_t total = 0;
    for (auto b : local) total += b;
    std::vector<Prng> prngs;
    for (std::size_t h = 0; h < local.size(); ++h) {
      prngs.emplace_back(local.size(), MakeStreamId(StreamDomain::kTest, {h}));
    }
    double sum = 0, sum_sq = 0;
    for (int t = 0; t < kTrials; ++t) {
      double aggregate = 0;
      for (std::size_t h = 0; h < local.size(); ++h) {
        aggregate += (*LocalNoiseAndSum(GradientMatrix::Zero(local[h], 1),
                                        local[h], total, clip, sigma,
                                        prngs[h]))(0);
      }
      sum += aggregate;
      sum_sq += aggregate * aggregate;
    }
    const double mean = sum / kTrials;
    const double variance = (sum_sq - kTrials * mean * mean) / (kTrials - 1);
    const double target = clip * sigma * clip * sigma;
    EXPECT_NEAR(variance / target, 1.0, 0.05) << "H=" << local.size();
    EXPECT_LE(std::abs(mean), 3 * clip * sigma / std::sqrt(kTrials))
        << "H=" << local.size();
  }
}

TEST(PoissonSampleTest, RateAndEdgeCases) {
  Prng prng(5, MakeStreamId(StreamDomain::kTest));
  EXPECT_FALSE(PoissonSample(10, 0.0, prng).ok());
  EXPECT_FALSE(PoissonSample(10, 1.5, prng).ok());
  EXPECT_EQ(PoissonSample(7, 1.0, prng)->size(), 7u);
  EXPECT_TRUE(PoissonSample(0, 0.5, prng)->empty());
  constexpr int kN = 1000;
  constexpr int kTrials = 400;
  std::vector<int> hits(kN, 0);
  double total = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto picked = *PoissonSample(kN, 0.1, prng);
    total += picked.size();
    for (std::size_t i = 1; i < picked.size(); ++i) {
      ASSERT_LT(picked[i - 1], picked[i]);
    }
    for (auto i : picked) ++hits[i];
  }
  // Mean batch 100 with sd sqrt(90)/sqrt(400).
  EXPECT_NEAR(total / kTrials, 100.0, 5 * std::sqrt(90.0 / kTrials));
  // Every index is included at the same rate: chi-square over indices.
  double chi2 = 0;
  const double expected = 0.1 * kTrials;
  for (int h : hits) chi2 += (h - expected) * (h - expected) / (expected * 0.9);
  EXPECT_LT(chi2, kN + 5 * std::sqrt(2.0 * kN));
}

TEST(RdpTest, HelperFunctions) {
  EXPECT_NEAR(LogAddExp(std::log(2.0), std::log(3.0)), std::log(5.0), 1e-15);
  EXPECT_EQ(LogAddExp(-kInf, 1.5), 1.5);
  EXPECT_NEAR(LogAddExp(1000.0, 1000.0), 1000.0 + std::log(2.0), 1e-12);
  for (double x : {-3.0, -0.5, 0.0, 0.7, 2.0, 5.0, 20.0}) {
    EXPECT_NEAR(LogErfc(x), std::log(std::erfc(x)), 1e-12) << x;
  }
  // Far tail where erfc underflows: asymptotic series to four terms.
  const double x = 40.0;
  const double x2 = x * x;
  const double series = 1 - 1 / (2 * x2) + 3 / (4 * x2 * x2) -
                        15 / (8 * x2 * x2 * x2);
  EXPECT_NEAR(LogErfc(x),
              -x2 - std::log(x * std::sqrt(M_PI)) + std::log(series), 1e-10);
}

TEST(RdpTest, DefaultGridIsSortedAndAboveOne) {
  const auto grid = DefaultAlphaGrid();
  ASSERT_GE(grid.size(), 10u);
  EXPECT_EQ(grid.front(), 1.25);
  EXPECT_EQ(grid.back(), 64.0);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_LT(grid[i - 1], grid[i]);
}

// The fast path agrees with numerical integration on every integer order.
TEST(RdpTest, MatchesQuadratureOnIntegerOrders) {
  for (double p : {0.001, 0.01, 0.1}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      for (double alpha : IntegerOrders()) {
        const double fast = *SubsampledGaussianRdp(p, sigma, alpha);
        const double oracle = testing::QuadratureRdp(p, sigma, alpha);
        ASSERT_LE(std::abs(fast - oracle), 1e-6 * std::abs(oracle))
            << "p=" << p << " sigma=" << sigma << " alpha=" << alpha
            << " fast=" << fast << " oracle=" << oracle;
      }
    }
  }
}

TEST(RdpTest, MatchesQuadratureOnFractionalOrders) {
  for (double p : {0.001, 0.01, 0.1}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      for (double alpha : {1.25, 1.5, 1.75, 2.5, 3.5}) {
        const double fast = *SubsampledGaussianRdp(p, sigma, alpha);
        const double oracle = testing::QuadratureRdp(p, sigma, alpha);
        EXPECT_LE(std::abs(fast - oracle), 1e-6 * std::abs(oracle))
            << "p=" << p << " sigma=" << sigma << " alpha=" << alpha;
      }
    }
  }
}

TEST(RdpTest, FullBatchClosedFormAndNonPrivateStep) {
  for (double sigma : {0.3, 1.0, 4.0}) {
    for (double alpha : {1.5, 2.0, 17.0, 64.0}) {
      EXPECT_EQ(*SubsampledGaussianRdp(1.0, sigma, alpha),
                alpha / (2 * sigma * sigma));
    }
  }
  EXPECT_EQ(*SubsampledGaussianRdp(0.1, 0.0, 2.0), kInf);
  EXPECT_FALSE(SubsampledGaussianRdp(0.0, 1.0, 2.0).ok());
  EXPECT_FALSE(SubsampledGaussianRdp(0.1, 1.0, 1.0).ok());
  EXPECT_FALSE(SubsampledGaussianRdp(0.1, -1.0, 2.0).ok());
}

// Property: RDP grows with p and alpha and shrinks with sigma.
TEST(RdpPropertyTest, Monotone) {
  for (std::uint64_t c = 0; c < 200; ++c) {
    Prng prng = testing::CasePrng(41, c);
    const double p = testing::Uniform(prng, 1e-4, 0.9);
    const double sigma = testing::Uniform(prng, 0.4, 5.0);
    const double alpha = testing::Uniform(prng, 1.1, 60.0);
    const double base = *SubsampledGaussianRdp(p, sigma, alpha);
    ASSERT_GE(base, 0.0);
    ASSERT_GE(*SubsampledGaussianRdp(p * 1.05, sigma, alpha), base);
    ASSERT_LE(*SubsampledGaussianRdp(p, sigma * 1.05, alpha), base);
    ASSERT_GE(*SubsampledGaussianRdp(p, sigma, alpha + 1.0), base);
  }
}

TEST(ConversionTest, WorkedExample) {
  const double alpha[] = {2.0};
  const double rdp[] = {1.0};
  auto g = RdpToDp(alpha, rdp, 1e-5);
  ASSERT_TRUE(g.ok());
  EXPECT_NEAR(g->epsilon, 12.5129, 1e-4);
  EXPECT_EQ(g->alpha, 2.0);
}

TEST(ConversionTest, PicksTheMinimizingOrder) {
  const double alphas[] = {2.0, 10.0, 30.0};
  const double rdp[] = {0.1, 0.5, 3.0};
  auto g = RdpToDp(alphas, rdp, 1e-5);
  const double e10 = 0.5 + std::log(1e5) / 9;
  EXPECT_NEAR(g->epsilon, e10, 1e-12);
  EXPECT_EQ(g->alpha, 10.0);
  const double short_rdp[] = {0.1};
  EXPECT_FALSE(RdpToDp(alphas, short_rdp, 1e-5).ok());
  EXPECT_FALSE(RdpToDp(alphas, rdp, 0.0).ok());
}

TEST(DefaultDeltaTest, CapsAtOneOverN) {
  EXPECT_EQ(DefaultDelta(1000), 1e-5);
  EXPECT_DOUBLE_EQ(DefaultDelta(1000000), 1.0 / 1.1e6);
}

TEST(LedgerTest, StepsComposeAndReplayExactly) {
  auto ledger = PrivacyLedger::Create(0.01, 1.1, 1e-5, 3.0, DefaultAlphaGrid());
  ASSERT_TRUE(ledger.ok());
  EXPECT_FALSE(ledger->Guarantee().ok());
  EXPECT_EQ(ledger->GuaranteeAfter(0).epsilon, 0.0);
  double previous = 0;
  while (!ledger->exhausted()) {
    ASSERT_TRUE(ledger->Step().ok());
    const DpGuarantee now = *ledger->Guarantee();
    ASSERT_GE(now.epsilon, previous);
    ASSERT_LE(now.epsilon, 3.0);
    previous = now.epsilon;
    // Replay from first principles: steps * per-step RDP, then convert.
    std::vector<double> totals;
    for (double a : ledger->alphas()) {
      totals.push_back(ledger->steps() * *SubsampledGaussianRdp(0.01, 1.1, a));
    }
    ASSERT_EQ(now.epsilon, RdpToDp(ledger->alphas(), totals, 1e-5)->epsilon);
  }
  EXPECT_GT(ledger->GuaranteeAfter(ledger->steps() + 1).epsilon, 3.0);
  EXPECT_EQ(ledger->Step().code(), absl::StatusCode::kResourceExhausted);
}

TEST(LedgerTest, InfiniteTargetNeverExhausts) {
  auto ledger = PrivacyLedger::Create(0.5, 0.5, 1e-5, kInf, DefaultAlphaGrid());
  for (int i = 0; i < 1000; ++i) ASSERT_TRUE(ledger->Step().ok());
  EXPECT_FALSE(ledger->exhausted());
}

TEST(LedgerTest, FromConfigValidates) {
  DpConfig config;
  config.sampling_rate = 0.0;
  EXPECT_FALSE(PrivacyLedger::FromConfig(config).ok());
  config.sampling_rate = 0.1;
  config.target_delta = 1.0;
  EXPECT_FALSE(PrivacyLedger::FromConfig(config).ok());
  config.target_delta = 1e-5;
  config.alpha_grid = {2.0, 0.5};
  EXPECT_FALSE(PrivacyLedger::FromConfig(config).ok());
  config.alpha_grid = DefaultAlphaGrid();
  EXPECT_TRUE(PrivacyLedger::FromConfig(config).ok());
}

TEST(CalibrationTest, FindsTheSmallestSufficientSigma) {
  const auto grid = DefaultAlphaGrid();
  for (double target : {0.5, 2.0, 8.0}) {
    for (std::int64_t steps : {1, 100, 5000}) {
      auto sigma = CalibrateNoiseMultiplier(0.02, steps, target, 1e-5, grid);
      ASSERT_TRUE(sigma.ok()) << sigma.status();
      auto at = [&](double s) {
        auto ledger = PrivacyLedger::Create(0.02, s, 1e-5, target, grid);
        return ledger->GuaranteeAfter(steps).epsilon;
      };
      EXPECT_LE(at(*sigma), target);
      EXPECT_GT(at(*sigma * (1 - 2e-6)), target)
          << "target " << target << " steps " << steps;
    }
  }
  EXPECT_FALSE(CalibrateNoiseMultiplier(0.02, 10, kInf, 1e-5, grid).ok());
  EXPECT_FALSE(CalibrateNoiseMultiplier(0.02, 0, 1.0, 1e-5, grid).ok());
}

}  // namespace
}  // namespace decaph
