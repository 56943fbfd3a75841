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

#include "decaph/secagg/wire.h"

#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace decaph {
namespace {

void PutU64(std::uint64_t v, std::vector<std::uint8_t>& out) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

std::uint64_t GetU64(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(bytes[offset + i]) << (8 * i);
  }
  return v;
}

}  // namespace

std::vector<std::uint8_t> SerializeShare(const MaskedShare& share) {
  std::vector<std::uint8_t> out;
  out.reserve(kShareHeaderBytes + kRingWordBytes * share.masked_vector.size());
  PutU64(share.session_id, out);
  PutU64(share.participant_id, out);
  PutU64(share.masked_vector.size(), out);
  for (RingWord w : share.masked_vector) PutU64(w, out);
  return out;
}

absl::StatusOr<MaskedShare> ParseShare(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kShareHeaderBytes) {
    return absl::DataLossError(
        absl::StrCat("share truncated: ", bytes.size(), " bytes"));
  }
  MaskedShare share;
  share.session_id = GetU64(bytes, 0);
  const std::uint64_t participant = GetU64(bytes, 8);
  if (participant > std::numeric_limits<ParticipantId>::max()) {
    return absl::DataLossError(
        absl::StrCat("participant id ", participant, " out of range"));
  }
  share.participant_id = static_cast<ParticipantId>(participant);
  const std::uint64_t len = GetU64(bytes, 16);
  if ((bytes.size() - kShareHeaderBytes) / kRingWordBytes != len ||
      (bytes.size() - kShareHeaderBytes) % kRingWordBytes != 0) {
    return absl::DataLossError(
        absl::StrCat("share declares ", len, " words but carries ",
                     bytes.size() - kShareHeaderBytes, " payload bytes"));
  }
  share.masked_vector.resize(len);
  for (std::uint64_t i = 0; i < len; ++i) {
    share.masked_vector[i] =
        GetU64(bytes, kShareHeaderBytes + kRingWordBytes * i);
  }
  return share;
}

}  // namespace decaph
