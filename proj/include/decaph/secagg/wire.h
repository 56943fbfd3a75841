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

#ifndef DECAPH_SECAGG_WIRE_H_
#define DECAPH_SECAGG_WIRE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "decaph/secagg/session.h"

namespace decaph {

// Share wire format (all fields little-endian):
//
//   offset  size  field
//   0       8     session_id      (uint64)
//   8       8     participant_id  (uint64, zero-extended)
//   16      8     vector_len      (uint64)
//   24      8*n   ring words      (uint64 each)
//
// See docs/wire_format.md.
inline constexpr std::size_t kShareHeaderBytes = 24;
inline constexpr std::size_t kRingWordBytes = 8;

std::vector<std::uint8_t> SerializeShare(const MaskedShare& share);
absl::StatusOr<MaskedShare> ParseShare(std::span<const std::uint8_t> bytes);

}  // namespace decaph

#endif  // DECAPH_SECAGG_WIRE_H_
