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

#include "decaph/protocol/trainer.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "decaph/util/status_macros.h"

namespace decaph {

absl::StatusOr<TrainResult> Train(const ProtocolConfig& config,
                                  std::vector<DatasetShard> shards,
                                  const ModelState& initial) {
  ASSIGN_OR_RETURN(Federation fed,
                   Federation::Create(config, std::move(shards), initial));
  fed.mutable_bus().set_keep_log(false);
  TrainResult result;
  result.sampling_rate = fed.sampling_rate();
  const std::int64_t limit = RoundLimit(config, fed.sampling_rate());
  for (std::int64_t round = 0;; ++round) {
    if (limit >= 0 && round >= limit) {
      result.stop_reason =
          config.max_rounds >= 0 && round >= config.max_rounds ? "max_rounds"
                                                               : "max_epochs";
      break;
    }
    if (fed.BudgetExhausted()) {
      result.stop_reason = "budget";
      break;
    }
    ASSIGN_OR_RETURN(RoundRecord rec, fed.RunRound(round));
    result.log.push_back(std::move(rec));
  }
  result.model = fed.model();
  for (const Participant& p : fed.participants()) {
    result.participant_models.push_back(p.model());
  }
  if (fed.ledger().has_value()) {
    result.ledger = fed.ledger()->ToJson();
  } else if (!fed.local_ledgers().empty()) {
    result.ledger = nlohmann::json::array();
    for (std::size_t k = 0; k < fed.local_ledgers().size(); ++k) {
      nlohmann::json j = fed.local_ledgers()[k].ToJson();
      j["participant_id"] = fed.participant_ids()[k];
      result.ledger.push_back(std::move(j));
    }
  }
  result.traffic = fed.aggregator().traffic();
  return result;
}

std::string RoundLogCsv(const std::vector<RoundRecord>& log) {
  std::string out =
      "round,leader,aggregate_batch,batch_sizes,active,epsilon,train_loss,"
      "updated,participant_bytes,aggregator_bytes\n";
  for (const RoundRecord& r : log) {
    absl::StrAppend(
        &out, r.round, ",", r.leader, ",", r.aggregate_batch, ",",
        absl::StrJoin(r.batch_sizes, ";"), ",", absl::StrJoin(r.active, ";"),
        ",", absl::StrFormat("%.17g", r.epsilon), ",",
        absl::StrFormat("%.17g", r.train_loss), ",", r.updated ? 1 : 0, ",",
        r.bytes.participant_bytes, ",", r.bytes.aggregator_bytes, "\n");
  }
  return out;
}

}  // namespace decaph
