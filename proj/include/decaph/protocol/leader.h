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

#ifndef DECAPH_PROTOCOL_LEADER_H_
#define DECAPH_PROTOCOL_LEADER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "decaph/protocol/messages.h"
#include "decaph/secagg/session.h"

namespace decaph {

// Uniform draw over `participant_ids`, a pure function of (seed, round).
absl::StatusOr<ParticipantId> SelectLeader(
    std::int64_t round, std::uint64_t leader_seed,
    std::span<const ParticipantId> participant_ids);

// The leader's side of a secure aggregation. It accepts only messages of
// `kind` for `round` whose payload is a MaskedShare, and hands back nothing
// but the decoded session total.
absl::StatusOr<std::vector<double>> LeaderAggregate(
    const SecAggSession& session, MessageKind kind, std::int64_t round,
    std::span<const RoundMessage> inbox);

}  // namespace decaph

#endif  // DECAPH_PROTOCOL_LEADER_H_
