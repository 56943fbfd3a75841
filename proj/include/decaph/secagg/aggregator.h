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

#ifndef DECAPH_SECAGG_AGGREGATOR_H_
#define DECAPH_SECAGG_AGGREGATOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "decaph/numerics/fixed_point.h"
#include "decaph/secagg/comm_cost.h"
#include "decaph/secagg/session.h"

namespace decaph {

// Issues SecAgg sessions with consecutive ids under one root seed and keeps a
// running byte count. SumVectors runs a complete session in-process: each
// input is masked on behalf of its owner and only the masked shares are
// combined.
class SecureAggregator {
 public:
  explicit SecureAggregator(std::uint64_t root_seed,
                            FixedPointCodec codec = FixedPointCodec());

  absl::StatusOr<SecAggSession> OpenSession(
      std::vector<ParticipantId> participant_ids, std::size_t vector_len);

  // inputs[k] belongs to participant_ids[k].
  absl::StatusOr<std::vector<double>> SumVectors(
      std::span<const ParticipantId> participant_ids,
      std::span<const std::vector<double>> inputs);

  // Adds the cost of one aggregation over `session` to the running totals.
  void RecordTraffic(const SecAggSession& session);

  const FixedPointCodec& codec() const { return codec_; }
  const CommCost& traffic() const { return traffic_; }
  std::uint64_t sessions_opened() const { return next_session_id_; }

 private:
  std::uint64_t root_seed_;
  FixedPointCodec codec_;
  std::uint64_t next_session_id_ = 0;
  CommCost traffic_;
};

}  // namespace decaph

#endif  // DECAPH_SECAGG_AGGREGATOR_H_
