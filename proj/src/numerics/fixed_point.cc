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

#include "decaph/numerics/fixed_point.h"

#include <cmath>
#include <cstddef>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace decaph {

absl::StatusOr<FixedPointCodec> FixedPointCodec::Create(int scale_bits,
                                                        int modulus_bits) {
  if (modulus_bits > 64 || scale_bits < 0 || scale_bits + 2 >= modulus_bits) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid fixed-point layout: scale_bits=", scale_bits,
                     " modulus_bits=", modulus_bits));
  }
  return FixedPointCodec(scale_bits, modulus_bits);
}

double FixedPointCodec::max_abs_value() const {
  return std::ldexp(1.0, modulus_bits_ - scale_bits_ - 2);
}

double FixedPointCodec::resolution() const {
  return std::ldexp(1.0, -scale_bits_);
}

absl::StatusOr<std::vector<RingWord>> FixedPointCodec::Encode(
    std::span<const double> values) const {
  const double limit = max_abs_value();
  const double scale = std::ldexp(1.0, scale_bits_);
  std::vector<RingWord> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || std::abs(v) > limit) {
      return absl::OutOfRangeError(
          absl::StrCat("value ", v, " at index ", i,
                       " is outside the fixed-point range +/-", limit));
    }
    const auto scaled = static_cast<std::int64_t>(std::llround(v * scale));
    out[i] = static_cast<RingWord>(scaled) & mask();
  }
  return out;
}

double FixedPointCodec::DecodeOne(RingWord word) const {
  word &= mask();
  std::int64_t signed_value;
  if (modulus_bits_ == 64) {
    signed_value = static_cast<std::int64_t>(word);
  } else {
    const RingWord half = RingWord{1} << (modulus_bits_ - 1);
    signed_value = word >= half
                       ? static_cast<std::int64_t>(word) -
                             static_cast<std::int64_t>(RingWord{1}
                                                       << modulus_bits_)
                       : static_cast<std::int64_t>(word);
  }
  return std::ldexp(static_cast<double>(signed_value), -scale_bits_);
}

std::vector<double> FixedPointCodec::Decode(
    std::span<const RingWord> words) const {
  std::vector<double> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) out[i] = DecodeOne(words[i]);
  return out;
}

void FixedPointCodec::AddInPlace(std::span<RingWord> acc,
                                 std::span<const RingWord> b) const {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = Add(acc[i], b[i]);
}

}  // namespace decaph
