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

#include "decaph/secagg/aggregator.h"

#include "absl/status/status.h"
#include "decaph/util/status_macros.h"

namespace decaph {

SecureAggregator::SecureAggregator(std::uint64_t root_seed,
                                   FixedPointCodec codec)
    : root_seed_(root_seed), codec_(codec) {}

absl::StatusOr<SecAggSession> SecureAggregator::OpenSession(
    std::vector<ParticipantId> participant_ids, std::size_t vector_len) {
  return SecAggSession::Create(next_session_id_++, std::move(participant_ids),
                               vector_len, codec_, root_seed_);
}

void SecureAggregator::RecordTraffic(const SecAggSession& session) {
  traffic_ += ComputeCommCost(session, /*with_secagg=*/true);
}

absl::StatusOr<std::vector<double>> SecureAggregator::SumVectors(
    std::span<const ParticipantId> participant_ids,
    std::span<const std::vector<double>> inputs) {
  if (participant_ids.size() != inputs.size() || inputs.empty()) {
    return absl::InvalidArgumentError(
        "need one input vector per participant");
  }
  const std::size_t len = inputs.front().size();
  ASSIGN_OR_RETURN(
      SecAggSession session,
      OpenSession({participant_ids.begin(), participant_ids.end()}, len));
  std::vector<MaskedShare> shares;
  shares.reserve(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    ASSIGN_OR_RETURN(MaskedShare share,
                     Mask(session, participant_ids[k], inputs[k]));
    shares.push_back(std::move(share));
  }
  RecordTraffic(session);
  return Aggregate(session, shares);
}

}  // namespace decaph
