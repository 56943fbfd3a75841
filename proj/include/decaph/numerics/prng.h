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

#ifndef DECAPH_NUMERICS_PRNG_H_
#define DECAPH_NUMERICS_PRNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace decaph {

// Domain-separation tags. Every consumer of randomness draws from a stream
// whose id starts with one of these, so participants, noise, sampling, masks
// and initialization never share a sequence.
enum class StreamDomain : std::uint64_t {
  kData = 1,
  kInit = 2,
  kSampling = 3,
  kNoise = 4,
  kMask = 5,
  kLeader = 6,
  kSplit = 7,
  kShuffle = 8,
  kShadow = 9,
  kTest = 100,
};

// Hashes a list of tags into a single 64-bit stream id.
std::uint64_t MakeStreamId(std::initializer_list<std::uint64_t> tags);
std::uint64_t MakeStreamId(StreamDomain domain,
                           std::initializer_list<std::uint64_t> tags = {});

// 64-bit finalizer used throughout for seeding and key derivation.
std::uint64_t Mix64(std::uint64_t x);

// Counter-based generator: the i-th output is a pure function of
// (seed, stream_id, i), so two Prng objects built from the same pair produce
// identical sequences on every platform. Not cryptographically secure.
//
// Gaussians use the Box-Muller transform; both outputs of each pair are used.
// Satisfies UniformRandomBitGenerator, but library algorithms whose results
// are implementation-defined (std::shuffle, std::normal_distribution) must
// not be used where reproducibility matters; use the members below instead.
class Prng {
 public:
  using result_type = std::uint64_t;

  Prng(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return NextU64(); }

  std::uint64_t NextU64();
  // Uniform on [0, 1) with 53 bits of precision.
  double NextDouble();
  // Uniform on (0, 1].
  double NextOpenDouble();
  // Unbiased uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t NextBelow(std::uint64_t bound);
  bool NextBernoulli(double p);
  double NextGaussian();

  // Fisher-Yates with NextBelow.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(NextBelow(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_gaussian_;
};

// n i.i.d. draws from N(mean, std^2). std == 0 returns n copies of mean.
absl::StatusOr<std::vector<double>> Gaussian(Prng& prng, double mean,
                                             double std, std::size_t n);

}  // namespace decaph

#endif  // DECAPH_NUMERICS_PRNG_H_
