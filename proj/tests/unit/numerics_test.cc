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
#include <cstdint>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "decaph/numerics/fixed_point.h"
#include "decaph/numerics/prng.h"
#include "generators.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace decaph {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

// Upper-tail p-value of a chi-square statistic.
double ChiSquarePValue(double statistic, int dof) {
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

TEST(PrngTest, SameSeedAndStreamGiveIdenticalSequences) {
  Prng a(42, MakeStreamId(StreamDomain::kNoise, {3, 7}));
  Prng b(42, MakeStreamId(StreamDomain::kNoise, {3, 7}));
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.NextU64(), b.NextU64());
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.NextGaussian(), b.NextGaussian());
}

TEST(PrngTest, OutputsArePinnedAcrossPlatforms) {
  // The generator is a pure integer function; these values must never move.
  Prng a(1, 2);
  EXPECT_EQ(a.NextU64(), 8742323405063376645ULL);
  EXPECT_EQ(a.NextU64(), 15371393018407944436ULL);
  Prng b(1, 2);
  EXPECT_DOUBLE_EQ(b.NextGaussian(), 0.61070640301017698);
  EXPECT_EQ(MakeStreamId(StreamDomain::kNoise, {3, 7}),
            13044828195050387207ULL);
}

TEST(PrngTest, DistinctStreamsDiffer) {
  Prng a(7, MakeStreamId(StreamDomain::kSampling, {0, 0}));
  Prng b(7, MakeStreamId(StreamDomain::kSampling, {0, 1}));
  Prng c(7, MakeStreamId(StreamDomain::kNoise, {0, 0}));
  int equal_ab = 0;
  int equal_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t x = a.NextU64();
    equal_ab += x == b.NextU64();
    equal_ac += x == c.NextU64();
  }
  EXPECT_EQ(equal_ab, 0);
  EXPECT_EQ(equal_ac, 0);
}

TEST(PrngTest, DistinctStreamsAreUncorrelated) {
  Prng a(11, MakeStreamId(StreamDomain::kMask, {1}));
  Prng b(11, MakeStreamId(StreamDomain::kMask, {2}));
  constexpr int kN = 200000;
  double sxy = 0.0;
  for (int i = 0; i < kN; ++i) sxy += a.NextGaussian() * b.NextGaussian();
  // Correlation of independent N(0,1) pairs has standard error 1/sqrt(n).
  EXPECT_LT(std::abs(sxy / kN), 4.0 / std::sqrt(kN));
}

TEST(PrngTest, UniformDoublesPassChiSquare) {
  for (std::uint64_t stream : {1ULL, 99ULL, 123456789ULL}) {
    Prng prng(2024, stream);
    constexpr int kBins = 100;
    constexpr int kDraws = 200000;
    std::vector<int> counts(kBins, 0);
    for (int i = 0; i < kDraws; ++i) {
      ++counts[static_cast<int>(prng.NextDouble() * kBins)];
    }
    const double expected = static_cast<double>(kDraws) / kBins;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    EXPECT_GT(ChiSquarePValue(chi2, kBins - 1), 0.001) << "stream " << stream;
  }
}

TEST(PrngTest, RawWordsPassChiSquareOnEveryByte) {
  Prng prng(5, 6);
  constexpr int kDraws = 100000;
  std::vector<std::vector<int>> counts(8, std::vector<int>(256, 0));
  for (int i = 0; i < kDraws; ++i) {
    const std::uint64_t w = prng.NextU64();
    for (int b = 0; b < 8; ++b) ++counts[b][(w >> (8 * b)) & 0xff];
  }
  for (int b = 0; b < 8; ++b) {
    const double expected = kDraws / 256.0;
    double chi2 = 0.0;
    for (int c : counts[b]) chi2 += (c - expected) * (c - expected) / expected;
    EXPECT_GT(ChiSquarePValue(chi2, 255), 0.001) << "byte " << b;
  }
}

TEST(PrngTest, NextBelowIsUnbiasedForAwkwardBounds) {
  Prng prng(3, 4);
  constexpr std::uint64_t kBound = 7;
  constexpr int kDraws = 140000;
  std::vector<int> counts(kBound, 0);
  for (int i = 0; i < kDraws; ++i) {
    const std::uint64_t v = prng.NextBelow(kBound);
    ASSERT_LT(v, kBound);
    ++counts[v];
  }
  const double expected = static_cast<double>(kDraws) / kBound;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_GT(ChiSquarePValue(chi2, kBound - 1), 0.001);
}

TEST(PrngTest, OpenDoubleNeverReturnsZero) {
  Prng prng(8, 9);
  for (int i = 0; i < 100000; ++i) {
    const double u = prng.NextOpenDouble();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

TEST(PrngTest, ShuffleIsAPermutation) {
  Prng prng(1, 1);
  std::vector<int> items = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  prng.Shuffle(std::span<int>(items));
  std::vector<int> sorted = items;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_THAT(sorted, ElementsAre(0, 1, 2, 3, 4, 5, 6, 7, 8, 9));
}

TEST(GaussianTest, ZeroStdReturnsCopiesOfMean) {
  Prng prng(1, 2);
  auto v = Gaussian(prng, 0.0, 0.0, 5);
  ASSERT_TRUE(v.ok());
  EXPECT_THAT(*v, ElementsAre(0.0, 0.0, 0.0, 0.0, 0.0));
  auto w = Gaussian(prng, 3.5, 0.0, 2);
  ASSERT_TRUE(w.ok());
  EXPECT_THAT(*w, ElementsAre(3.5, 3.5));
}

TEST(GaussianTest, NegativeStdIsInvalid) {
  Prng prng(1, 2);
  auto v = Gaussian(prng, 0.0, -1.0, 3);
  EXPECT_EQ(v.status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(GaussianTest, MillionDrawsHaveUnitMoments) {
  Prng prng(20240101, MakeStreamId(StreamDomain::kTest, {1}));
  auto v = Gaussian(prng, 0.0, 1.0, 1000000);
  ASSERT_TRUE(v.ok());
  double sum = 0.0;
  for (double x : *v) sum += x;
  const double mean = sum / v->size();
  double ss = 0.0;
  for (double x : *v) ss += (x - mean) * (x - mean);
  const double var = ss / (v->size() - 1);
  EXPECT_LT(std::abs(mean), 0.01);
  EXPECT_LT(std::abs(var - 1.0), 0.01);
}

TEST(GaussianTest, SameStreamTwiceIsIdentical) {
  Prng a(77, 88);
  Prng b(77, 88);
  EXPECT_EQ(*Gaussian(a, 1.0, 2.0, 100), *Gaussian(b, 1.0, 2.0, 100));
}

TEST(GaussianTest, ShapeMatchesNormalQuantiles) {
  // Fraction of draws below the N(0,1) deciles.
  const double deciles[] = {-1.2816, -0.8416, -0.5244, -0.2533, 0.0,
                            0.2533,  0.5244,  0.8416,  1.2816};
  Prng prng(31337, 1);
  constexpr int kN = 200000;
  std::vector<int> counts(10, 0);
  for (int i = 0; i < kN; ++i) {
    const double x = prng.NextGaussian();
    int bin = 0;
    while (bin < 9 && x > deciles[bin]) ++bin;
    ++counts[bin];
  }
  const double expected = kN / 10.0;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_GT(ChiSquarePValue(chi2, 9), 0.001);
}

TEST(FixedPointTest, EncodesExactMultiples) {
  auto codec = FixedPointCodec::Create(16, 64);
  ASSERT_TRUE(codec.ok());
  const double v[] = {1.25, 0.0};
  auto words = codec->Encode(v);
  ASSERT_TRUE(words.ok());
  EXPECT_THAT(*words, ElementsAre(RingWord{81920}, RingWord{0}));
}

TEST(FixedPointTest, NegativeValuesWrapIntoTopHalf) {
  auto codec = FixedPointCodec::Create(16, 64);
  const double v[] = {-1.0};
  auto words = codec->Encode(v);
  ASSERT_TRUE(words.ok());
  EXPECT_EQ((*words)[0], ~RingWord{0} - 65535);
  EXPECT_EQ(codec->DecodeOne((*words)[0]), -1.0);
}

TEST(FixedPointTest, PointOneRoundTripsWithinResolution) {
  auto codec = FixedPointCodec::Create();
  const double v[] = {0.1};
  const double back = codec->Decode(*codec->Encode(v))[0];
  EXPECT_LE(std::abs(back - 0.1), std::ldexp(1.0, -16));
}

TEST(FixedPointTest, OverflowNamesTheOffendingIndex) {
  auto codec = FixedPointCodec::Create(16, 64);
  const double v[] = {1.0, 2.0, codec->max_abs_value() * 4.0};
  auto words = codec->Encode(v);
  EXPECT_EQ(words.status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_THAT(words.status().message(), HasSubstr("index 2"));
}

TEST(FixedPointTest, NonFiniteValuesAreRejected) {
  auto codec = FixedPointCodec::Create();
  const double v[] = {std::nan("")};
  EXPECT_FALSE(codec->Encode(v).ok());
}

TEST(FixedPointTest, InvalidParametersAreRejected) {
  EXPECT_FALSE(FixedPointCodec::Create(-1, 64).ok());
  EXPECT_FALSE(FixedPointCodec::Create(62, 64).ok());
  EXPECT_FALSE(FixedPointCodec::Create(16, 65).ok());
  EXPECT_TRUE(FixedPointCodec::Create(16, 32).ok());
}

// Property: round trip error <= 2^-scale_bits for random in-range values.
TEST(FixedPointPropertyTest, RoundTripWithinResolution) {
  for (int scale : {8, 16, 24}) {
    auto codec = FixedPointCodec::Create(scale, 64);
    ASSERT_TRUE(codec.ok());
    Prng prng = testing::CasePrng(1, static_cast<std::uint64_t>(scale));
    std::vector<double> values(10000);
    for (double& v : values) {
      // Log-uniform magnitudes up to the representable limit.
      const double mag = std::exp(testing::Uniform(
          prng, std::log(1e-6), std::log(codec->max_abs_value())));
      v = prng.NextBernoulli(0.5) ? mag : -mag;
    }
    auto words = codec->Encode(values);
    ASSERT_TRUE(words.ok());
    const std::vector<double> back = codec->Decode(*words);
    for (std::size_t i = 0; i < values.size(); ++i) {
      ASSERT_LE(std::abs(back[i] - values[i]), std::ldexp(1.0, -scale))
          << values[i];
    }
  }
}

// Property: sum-then-decode equals decode-then-sum within k * 2^-scale_bits.
TEST(FixedPointPropertyTest, RingSumMatchesRealSum) {
  auto codec = FixedPointCodec::Create(16, 64);
  for (std::uint64_t c = 0; c < 200; ++c) {
    Prng prng = testing::CasePrng(2, c);
    const int k = static_cast<int>(testing::UniformInt(prng, 2, 50));
    std::vector<double> values(k);
    double real_sum = 0.0;
    RingWord ring_sum = 0;
    for (double& v : values) {
      v = testing::Uniform(prng, -1e6, 1e6);
      real_sum += v;
      const double one[] = {v};
      ring_sum = codec->Add(ring_sum, (*codec->Encode(one))[0]);
    }
    ASSERT_LE(std::abs(codec->DecodeOne(ring_sum) - real_sum),
              k * std::ldexp(1.0, -16));
  }
}

TEST(FixedPointTest, SmallModulusWrapsCorrectly) {
  auto codec = FixedPointCodec::Create(4, 16);
  ASSERT_TRUE(codec.ok());
  const double v[] = {-3.5, 2.25};
  auto words = codec->Encode(v);
  ASSERT_TRUE(words.ok());
  for (RingWord w : *words) EXPECT_LT(w, RingWord{1} << 16);
  const RingWord sum = codec->Add((*words)[0], (*words)[1]);
  EXPECT_EQ(codec->DecodeOne(sum), -1.25);
}

}  // namespace
}  // namespace decaph
