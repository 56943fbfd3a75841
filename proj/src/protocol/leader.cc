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

#include "decaph/protocol/leader.h"

#include "absl/strings/str_cat.h"
#include "decaph/numerics/prng.h"

namespace decaph {

absl::StatusOr<ParticipantId> SelectLeader(
    std::int64_t round, std::uint64_t leader_seed,
    std::span<const ParticipantId> participant_ids) {
  if (participant_ids.empty()) {
    return absl::InvalidArgumentError("no participants to choose a leader from");
  }
  Prng prng(leader_seed, MakeStreamId(StreamDomain::kLeader,
                                      {static_cast<std::uint64_t>(round)}));
  return participant_ids[prng.NextBelow(participant_ids.size())];
}

absl::StatusOr<std::vector<double>> LeaderAggregate(
    const SecAggSession& session, MessageKind kind, std::int64_t round,
    std::span<const RoundMessage> inbox) {
  std::vector<MaskedShare> shares;
  for (const RoundMessage& m : inbox) {
    if (m.kind != kind || m.round != round) continue;
    const auto* share = std::get_if<MaskedShare>(&m.payload);
    if (share == nullptr) {
      return absl::InternalError(
          absl::StrCat(MessageKindName(kind), " without a masked payload"));
    }
    if (share->participant_id != m.sender) {
      return absl::FailedPreconditionError(
          absl::StrCat("share of participant ", share->participant_id,
                       " sent by ", m.sender));
    }
    shares.push_back(*share);
  }
  return Aggregate(session, shares);
}

}  // namespace decaph
