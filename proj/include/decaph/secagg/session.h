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

#ifndef DECAPH_SECAGG_SESSION_H_
#define DECAPH_SECAGG_SESSION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "decaph/numerics/fixed_point.h"

namespace decaph {

using ParticipantId = std::uint32_t;

// One pairwise-masking aggregation instance.
//
// Key agreement is simulated: the seed shared by participants i and j is
// derived from the session's root seed, the session id and the sorted pair.
// The masking arithmetic is the real thing; the cryptography is not.
class SecAggSession {
 public:
  // `participant_ids` must be non-empty and free of duplicates; it is stored
  // sorted ascending.
  static absl::StatusOr<SecAggSession> Create(
      std::uint64_t session_id, std::vector<ParticipantId> participant_ids,
      std::size_t vector_len, FixedPointCodec codec, std::uint64_t root_seed);

  std::uint64_t session_id() const { return session_id_; }
  const std::vector<ParticipantId>& participant_ids() const {
    return participant_ids_;
  }
  std::size_t vector_len() const { return vector_len_; }
  const FixedPointCodec& codec() const { return codec_; }
  bool Contains(ParticipantId id) const;

  // Seed shared by the unordered pair {a, b}. Both must be members, a != b.
  absl::StatusOr<std::uint64_t> PairSeed(ParticipantId a,
                                         ParticipantId b) const;

 private:
  SecAggSession() = default;

  std::uint64_t session_id_ = 0;
  std::vector<ParticipantId> participant_ids_;
  std::size_t vector_len_ = 0;
  FixedPointCodec codec_;
  std::uint64_t root_seed_ = 0;
};

struct MaskedShare {
  ParticipantId participant_id = 0;
  std::uint64_t session_id = 0;
  std::vector<RingWord> masked_vector;

  friend bool operator==(const MaskedShare&, const MaskedShare&) = default;
};

// encode(plain) + sum_{j > i} PRG(s_ij) - sum_{j < i} PRG(s_ij) in the ring.
absl::StatusOr<MaskedShare> Mask(const SecAggSession& session,
                                 ParticipantId participant_id,
                                 std::span<const double> plain);

// Sums one share from every session member; pairwise masks cancel and the
// decoded total is returned. Any missing, duplicate, foreign or mis-sized
// share is a protocol error (there is no dropout recovery).
absl::StatusOr<std::vector<double>> Aggregate(
    const SecAggSession& session, std::span<const MaskedShare> shares);

}  // namespace decaph

#endif  // DECAPH_SECAGG_SESSION_H_
