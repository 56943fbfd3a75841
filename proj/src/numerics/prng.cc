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

#include "decaph/numerics/prng.h"

#include <cmath>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace decaph {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t Mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t MakeStreamId(std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (std::uint64_t tag : tags) {
    h = Mix64(h ^ Mix64(tag + kGolden));
  }
  return h;
}

std::uint64_t MakeStreamId(StreamDomain domain,
                           std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = MakeStreamId({static_cast<std::uint64_t>(domain)});
  for (std::uint64_t tag : tags) {
    h = Mix64(h ^ Mix64(tag + kGolden));
  }
  return h;
}

Prng::Prng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      key_(Mix64(Mix64(seed) ^ (stream_id * kGolden + 0x243F6A8885A308D3ULL))) {
}

std::uint64_t Prng::NextU64() {
  ++counter_;
  return Mix64(key_ + counter_ * kGolden);
}

double Prng::NextDouble() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double Prng::NextOpenDouble() {
  return (static_cast<double>(NextU64() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint64_t Prng::NextBelow(std::uint64_t bound) {
  // Lemire's nearly-divisionless rejection method.
  unsigned __int128 m = static_cast<unsigned __int128>(NextU64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(NextU64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

bool Prng::NextBernoulli(double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return NextDouble() < p;
}

double Prng::NextGaussian() {
  if (spare_gaussian_.has_value()) {
    const double z = *spare_gaussian_;
    spare_gaussian_.reset();
    return z;
  }
  const double u1 = NextOpenDouble();
  const double u2 = NextDouble();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

absl::StatusOr<std::vector<double>> Gaussian(Prng& prng, double mean,
                                             double std, std::size_t n) {
  if (!std::isfinite(std) || std < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("standard deviation must be finite and non-negative, got ",
                     std));
  }
  std::vector<double> out(n, mean);
  if (std == 0.0) return out;
  for (double& v : out) v += std * prng.NextGaussian();
  return out;
}

}  // namespace decaph
