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

#ifndef DECAPH_NUMERICS_FIXED_POINT_H_
#define DECAPH_NUMERICS_FIXED_POINT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace decaph {

using RingWord = std::uint64_t;

// Signed fixed-point numbers embedded in the ring Z_{2^modulus_bits}.
//
// A real v encodes as round(v * 2^scale_bits) mod 2^modulus_bits; negative
// values wrap to the top half of the ring. Encodable magnitudes are limited to
// 2^(modulus_bits - scale_bits - 2), which leaves one bit of headroom so that
// sums of a few encodings still decode correctly.
class FixedPointCodec {
 public:
  static constexpr int kDefaultScaleBits = 16;
  static constexpr int kDefaultModulusBits = 64;

  // Validates 0 <= scale_bits and scale_bits + 2 < modulus_bits <= 64.
  static absl::StatusOr<FixedPointCodec> Create(
      int scale_bits = kDefaultScaleBits,
      int modulus_bits = kDefaultModulusBits);

  FixedPointCodec() = default;

  int scale_bits() const { return scale_bits_; }
  int modulus_bits() const { return modulus_bits_; }
  // Largest |v| that Encode accepts.
  double max_abs_value() const;
  // Worst-case absolute error of a single encode/decode round trip.
  double resolution() const;

  absl::StatusOr<std::vector<RingWord>> Encode(
      std::span<const double> values) const;
  std::vector<double> Decode(std::span<const RingWord> words) const;
  double DecodeOne(RingWord word) const;

  RingWord Add(RingWord a, RingWord b) const { return (a + b) & mask(); }
  RingWord Sub(RingWord a, RingWord b) const { return (a - b) & mask(); }
  RingWord Reduce(RingWord a) const { return a & mask(); }
  // Elementwise a += b in the ring. Sizes must match.
  void AddInPlace(std::span<RingWord> acc, std::span<const RingWord> b) const;

  RingWord mask() const {
    return modulus_bits_ == 64 ? ~RingWord{0}
                               : ((RingWord{1} << modulus_bits_) - 1);
  }

 private:
  FixedPointCodec(int scale_bits, int modulus_bits)
      : scale_bits_(scale_bits), modulus_bits_(modulus_bits) {}

  int scale_bits_ = kDefaultScaleBits;
  int modulus_bits_ = kDefaultModulusBits;
};

}  // namespace decaph

#endif  // DECAPH_NUMERICS_FIXED_POINT_H_
