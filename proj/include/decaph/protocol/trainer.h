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

#ifndef DECAPH_PROTOCOL_TRAINER_H_
#define DECAPH_PROTOCOL_TRAINER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "decaph/data/dataset.h"
#include "decaph/models/model.h"
#include "decaph/protocol/config.h"
#include "decaph/protocol/rounds.h"
#include "json.hpp"

namespace decaph {

struct TrainResult {
  ModelState model;                            // the synchronized model
  std::vector<ModelState> participant_models;  // every participant's copy
  std::vector<RoundRecord> log;
  // decaph: one ledger dump; local_dp: array of per-participant dumps;
  // fl: null.
  nlohmann::json ledger;
  std::string stop_reason;  // "max_rounds", "max_epochs" or "budget"
  double sampling_rate = 0.0;
  CommCost traffic;  // includes the preparation-phase size aggregation
};

// Repeats rounds until the round limit or until the budget cannot cover
// another round.
absl::StatusOr<TrainResult> Train(const ProtocolConfig& config,
                                  std::vector<DatasetShard> shards,
                                  const ModelState& initial);

// Header plus one line per record. Batch sizes and active ids are
// ';'-separated in participant-id order.
std::string RoundLogCsv(const std::vector<RoundRecord>& log);

}  // namespace decaph

#endif  // DECAPH_PROTOCOL_TRAINER_H_
