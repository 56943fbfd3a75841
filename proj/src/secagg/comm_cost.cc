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

#include "decaph/secagg/comm_cost.h"

#include "decaph/secagg/wire.h"

namespace decaph {

CommCost ComputeCommCost(std::size_t num_participants, std::size_t vector_len,
                         bool with_secagg) {
  const auto h = static_cast<std::uint64_t>(num_participants);
  const auto len = static_cast<std::uint64_t>(vector_len);
  CommCost cost;
  if (with_secagg) {
    cost.participant_bytes =
        kPublicKeyBytes + kShareHeaderBytes + kRingWordBytes * len;
  } else {
    cost.participant_bytes = kPlainWordBytes * len;
  }
  cost.aggregator_bytes = h * cost.participant_bytes;
  return cost;
}

CommCost ComputeCommCost(const SecAggSession& session, bool with_secagg) {
  return ComputeCommCost(session.participant_ids().size(),
                         session.vector_len(), with_secagg);
}

}  // namespace decaph
