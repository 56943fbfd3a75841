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

#ifndef DECAPH_SECAGG_COMM_COST_H_
#define DECAPH_SECAGG_COMM_COST_H_

#include <cstddef>
#include <cstdint>

#include "decaph/secagg/session.h"

namespace decaph {

// Bytes moved by one aggregation of a length-L vector among H parties.
//
// Only upstream traffic is counted: what each participant sends and what the
// aggregator receives.
//
//   without SecAgg: participant = 8L, aggregator = 8LH (raw float64 payload)
//   with SecAgg:    participant = 32 + 24 + 8L
//                   (public-key advertisement, share header, ring words)
//                   aggregator  = H * participant
struct CommCost {
  std::uint64_t participant_bytes = 0;
  std::uint64_t aggregator_bytes = 0;

  CommCost& operator+=(const CommCost& other) {
    participant_bytes += other.participant_bytes;
    aggregator_bytes += other.aggregator_bytes;
    return *this;
  }
  friend bool operator==(const CommCost&, const CommCost&) = default;
};

inline constexpr std::uint64_t kPublicKeyBytes = 32;
inline constexpr std::uint64_t kPlainWordBytes = 8;

CommCost ComputeCommCost(std::size_t num_participants, std::size_t vector_len,
                         bool with_secagg);
CommCost ComputeCommCost(const SecAggSession& session, bool with_secagg);

}  // namespace decaph

#endif  // DECAPH_SECAGG_COMM_COST_H_
