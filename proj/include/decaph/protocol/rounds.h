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

#ifndef DECAPH_PROTOCOL_ROUNDS_H_
#define DECAPH_PROTOCOL_ROUNDS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "decaph/data/dataset.h"
#include "decaph/dp/accountant.h"
#include "decaph/models/model.h"
#include "decaph/protocol/config.h"
#include "decaph/protocol/messages.h"
#include "decaph/protocol/participant.h"
#include "decaph/secagg/aggregator.h"
#include "decaph/secagg/comm_cost.h"

namespace decaph {

struct RoundRecord {
  std::int64_t round = 0;
  ParticipantId leader = 0;
  std::int64_t aggregate_batch = 0;         // sum of batch_sizes
  std::vector<std::int64_t> batch_sizes;    // participant-id order; 0 if idle
  std::vector<ParticipantId> active;        // contributors this round
  double epsilon = 0.0;   // after this round; +inf when nothing is private
  double train_loss = 0.0;  // mean loss over the sampled examples
  bool updated = false;     // false when the aggregate batch was empty
  CommCost bytes;           // secure-aggregation uploads this round
};

// Rounds in one epoch: ceil(1 / p).
std::int64_t RoundsPerEpoch(double sampling_rate);

// The tighter of max_rounds and max_epochs * RoundsPerEpoch, or -1 if
// neither is set.
std::int64_t RoundLimit(const ProtocolConfig& config, double sampling_rate);

// All actors of one training run plus the shared harness: the message bus,
// the secure aggregator and the privacy ledger(s).
//
// Setup runs the preparation phase: dataset sizes are summed through
// secure aggregation to fix the sampling rate p = B / N, and every
// participant starts from the same initial model.
class Federation {
 public:
  static absl::StatusOr<Federation> Create(const ProtocolConfig& config,
                                           std::vector<DatasetShard> shards,
                                           const ModelState& initial);

  // Leader election, secure batch-size sum, clipped and split-noised
  // gradient shares, masked aggregation, update and sync; advances the ledger
  // by one step. An empty aggregate batch skips the update but still counts.
  absl::StatusOr<RoundRecord> RunDecaphRound(std::int64_t round);
  // The identical pipeline with C = inf and sigma = 0; no ledger.
  absl::StatusOr<RoundRecord> RunFlRound(std::int64_t round);
  // Every participant with budget left takes one local DP-SGD step; the
  // leader merges the size-weighted parameter changes.
  absl::StatusOr<RoundRecord> RunLocalDpRound(std::int64_t round);
  // Dispatches on config().mode.
  absl::StatusOr<RoundRecord> RunRound(std::int64_t round);

  // True when the next round may not run for lack of budget.
  bool BudgetExhausted() const;

  const ProtocolConfig& config() const { return config_; }
  const ModelState& model() const { return model_; }
  const std::vector<Participant>& participants() const { return participants_; }
  const std::vector<ParticipantId>& participant_ids() const { return ids_; }
  double sampling_rate() const { return sampling_rate_; }
  std::int64_t pooled_size() const { return pooled_size_; }
  const std::optional<PrivacyLedger>& ledger() const { return ledger_; }
  const std::vector<PrivacyLedger>& local_ledgers() const {
    return local_ledgers_;
  }
  const MessageBus& bus() const { return bus_; }
  MessageBus& mutable_bus() { return bus_; }
  const SecureAggregator& aggregator() const { return aggregator_; }

 private:
  Federation(const ProtocolConfig& config, SecureAggregator aggregator)
      : config_(config), aggregator_(std::move(aggregator)) {}

  absl::StatusOr<RoundRecord> RunAggregatedRound(std::int64_t round,
                                                 double clip_norm,
                                                 double noise_multiplier);
  absl::Status Broadcast(ParticipantId sender, MessageKind kind,
                         std::int64_t round, const MessagePayload& payload);
  // Drains every participant's queue and applies the ModelSync it holds.
  absl::Status DeliverSync(std::int64_t round);

  ProtocolConfig config_;
  SecureAggregator aggregator_;
  MessageBus bus_;
  std::vector<Participant> participants_;
  std::vector<ParticipantId> ids_;
  ModelState model_;
  double sampling_rate_ = 1.0;
  std::int64_t pooled_size_ = 0;
  std::optional<PrivacyLedger> ledger_;
  std::vector<PrivacyLedger> local_ledgers_;
  std::vector<double> local_expected_batch_;
};

}  // namespace decaph

#endif  // DECAPH_PROTOCOL_ROUNDS_H_
