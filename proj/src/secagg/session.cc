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

#include "decaph/secagg/session.h"

#include <algorithm>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "decaph/numerics/prng.h"
#include "decaph/util/status_macros.h"

namespace decaph {

absl::StatusOr<SecAggSession> SecAggSession::Create(
    std::uint64_t session_id, std::vector<ParticipantId> participant_ids,
    std::size_t vector_len, FixedPointCodec codec, std::uint64_t root_seed) {
  if (participant_ids.empty()) {
    return absl::InvalidArgumentError("secagg session needs participants");
  }
  std::sort(participant_ids.begin(), participant_ids.end());
  if (std::adjacent_find(participant_ids.begin(), participant_ids.end()) !=
      participant_ids.end()) {
    return absl::InvalidArgumentError("duplicate participant id in session");
  }
  SecAggSession session;
  session.session_id_ = session_id;
  session.participant_ids_ = std::move(participant_ids);
  session.vector_len_ = vector_len;
  session.codec_ = codec;
  session.root_seed_ = root_seed;
  return session;
}

bool SecAggSession::Contains(ParticipantId id) const {
  return std::binary_search(participant_ids_.begin(), participant_ids_.end(),
                            id);
}

absl::StatusOr<std::uint64_t> SecAggSession::PairSeed(ParticipantId a,
                                                      ParticipantId b) const {
  if (a == b) {
    return absl::InvalidArgumentError("pair seed requested for a single party");
  }
  if (!Contains(a) || !Contains(b)) {
    return absl::NotFoundError(
        absl::StrCat("pair {", a, ", ", b, "} not in session ", session_id_));
  }
  const auto lo = std::min(a, b);
  const auto hi = std::max(a, b);
  return MakeStreamId(StreamDomain::kMask,
                      {root_seed_, session_id_, lo, hi});
}

absl::StatusOr<MaskedShare> Mask(const SecAggSession& session,
                                 ParticipantId participant_id,
                                 std::span<const double> plain) {
  if (!session.Contains(participant_id)) {
    return absl::FailedPreconditionError(
        absl::StrCat("participant ", participant_id, " not in session ",
                     session.session_id()));
  }
  if (plain.size() != session.vector_len()) {
    return absl::InvalidArgumentError(
        absl::StrCat("vector length ", plain.size(), " != session length ",
                     session.vector_len()));
  }
  const FixedPointCodec& codec = session.codec();
  MaskedShare share;
  share.participant_id = participant_id;
  share.session_id = session.session_id();
  ASSIGN_OR_RETURN(share.masked_vector, codec.Encode(plain));

  for (ParticipantId other : session.participant_ids()) {
    if (other == participant_id) continue;
    ASSIGN_OR_RETURN(const std::uint64_t seed,
                     session.PairSeed(participant_id, other));
    Prng prg(seed, session.session_id());
    const bool add = other > participant_id;
    for (RingWord& w : share.masked_vector) {
      const RingWord m = codec.Reduce(prg.NextU64());
      w = add ? codec.Add(w, m) : codec.Sub(w, m);
    }
  }
  return share;
}

absl::StatusOr<std::vector<double>> Aggregate(
    const SecAggSession& session, std::span<const MaskedShare> shares) {
  std::set<ParticipantId> seen;
  for (const MaskedShare& share : shares) {
    if (share.session_id != session.session_id()) {
      return absl::FailedPreconditionError(
          absl::StrCat("share from session ", share.session_id,
                       " submitted to session ", session.session_id()));
    }
    if (!session.Contains(share.participant_id)) {
      return absl::FailedPreconditionError(
          absl::StrCat("share from non-member ", share.participant_id));
    }
    if (!seen.insert(share.participant_id).second) {
      return absl::FailedPreconditionError(
          absl::StrCat("duplicate share from participant ",
                       share.participant_id));
    }
    if (share.masked_vector.size() != session.vector_len()) {
      return absl::FailedPreconditionError(
          absl::StrCat("share from participant ", share.participant_id,
                       " has length ", share.masked_vector.size(),
                       ", expected ", session.vector_len()));
    }
  }
  if (seen.size() != session.participant_ids().size()) {
    return absl::FailedPreconditionError(
        absl::StrCat("missing shares: got ", seen.size(), " of ",
                     session.participant_ids().size()));
  }
  const FixedPointCodec& codec = session.codec();
  std::vector<RingWord> total(session.vector_len(), 0);
  for (const MaskedShare& share : shares) {
    codec.AddInPlace(total, share.masked_vector);
  }
  return codec.Decode(total);
}

}  // namespace decaph
