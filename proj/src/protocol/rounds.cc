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

#include "decaph/protocol/rounds.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <set>

#include "absl/strings/str_cat.h"
#include "decaph/numerics/fixed_point.h"
#include "decaph/numerics/prng.h"
#include "decaph/protocol/leader.h"
#include "decaph/util/status_macros.h"

namespace decaph {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs fn(k) for k in [0, n), concurrently if asked, and returns the results
// in index order so every later reduction sees the same sequence.
template <typename T>
std::vector<absl::StatusOr<T>> ForEachParticipant(
    std::size_t n, bool parallel,
    const std::function<absl::StatusOr<T>(std::size_t)>& fn) {
  std::vector<absl::StatusOr<T>> out;
  out.reserve(n);
  if (!parallel || n < 2) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(fn(k));
    return out;
  }
  std::vector<std::future<absl::StatusOr<T>>> futures;
  futures.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    futures.push_back(std::async(std::launch::async, fn, k));
  }
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

struct MaskedContribution {
  MaskedShare share;
  double loss_sum = 0.0;
};

}  // namespace

std::int64_t RoundsPerEpoch(double sampling_rate) {
  return static_cast<std::int64_t>(std::ceil(1.0 / sampling_rate - 1e-12));
}

std::int64_t RoundLimit(const ProtocolConfig& config, double sampling_rate) {
  std::int64_t limit = config.max_rounds;
  if (config.max_epochs > 0.0) {
    const auto by_epochs = static_cast<std::int64_t>(
        std::ceil(config.max_epochs * RoundsPerEpoch(sampling_rate) - 1e-9));
    limit = limit < 0 ? by_epochs : std::min(limit, by_epochs);
  }
  return limit;
}

absl::StatusOr<Federation> Federation::Create(const ProtocolConfig& config,
                                              std::vector<DatasetShard> shards,
                                              const ModelState& initial) {
  RETURN_IF_ERROR(config.Validate());
  if (shards.empty()) {
    return absl::InvalidArgumentError("no participants");
  }
  std::sort(shards.begin(), shards.end(),
            [](const DatasetShard& a, const DatasetShard& b) {
              return a.participant_id < b.participant_id;
            });
  std::set<ParticipantId> seen;
  for (const DatasetShard& s : shards) {
    if (!seen.insert(s.participant_id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate participant id ", s.participant_id));
    }
    if (s.num_examples() == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("participant ", s.participant_id, " has no data"));
    }
    if (static_cast<int>(s.num_features()) != initial.arch.input_dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("participant ", s.participant_id, " has ",
                       s.num_features(), " features; model expects ",
                       initial.arch.input_dim));
    }
    RETURN_IF_ERROR(initial.arch.CheckTask(s.task));
  }
  ASSIGN_OR_RETURN(FixedPointCodec codec,
                   FixedPointCodec::Create(config.scale_bits, 64));
  Federation fed(config,
                 SecureAggregator(Mix64(config.seed ^ 0x5ec'a66'5eedULL), codec));
  fed.model_ = initial;
  for (DatasetShard& s : shards) {
    fed.ids_.push_back(s.participant_id);
    fed.participants_.emplace_back(std::move(s), initial, config.seed);
  }

  // Preparation: the pooled size is learned only as a secure sum.
  std::vector<std::vector<double>> sizes;
  for (const Participant& p : fed.participants_) {
    sizes.push_back({static_cast<double>(p.dataset_size())});
  }
  ASSIGN_OR_RETURN(std::vector<double> total,
                   fed.aggregator_.SumVectors(fed.ids_, sizes));
  fed.pooled_size_ = std::llround(total[0]);
  fed.sampling_rate_ =
      std::min(1.0, static_cast<double>(config.aggregate_batch_target) /
                        static_cast<double>(fed.pooled_size_));

  if (config.calibrate_noise && config.mode != Mode::kFl) {
    ASSIGN_OR_RETURN(
        fed.config_.dp.noise_multiplier,
        CalibrateNoiseMultiplier(fed.sampling_rate_,
                                 RoundLimit(config, fed.sampling_rate_),
                                 config.dp.target_epsilon,
                                 config.auto_delta
                                     ? DefaultDelta(fed.pooled_size_)
                                     : config.dp.target_delta,
                                 config.dp.alpha_grid));
  }
  const DpConfig& dp = fed.config_.dp;
  if (config.mode == Mode::kDecaph) {
    const double delta = config.auto_delta
                             ? DefaultDelta(fed.pooled_size_)
                             : dp.target_delta;
    ASSIGN_OR_RETURN(PrivacyLedger ledger,
                     PrivacyLedger::Create(fed.sampling_rate_,
                                           dp.noise_multiplier, delta,
                                           dp.target_epsilon, dp.alpha_grid));
    fed.ledger_ = std::move(ledger);
  } else if (config.mode == Mode::kLocalDp) {
    const double local_batch =
        config.local_batch_size > 0
            ? static_cast<double>(config.local_batch_size)
            : static_cast<double>(config.aggregate_batch_target) /
                  static_cast<double>(fed.participants_.size());
    for (const Participant& p : fed.participants_) {
      const double size = static_cast<double>(p.dataset_size());
      const double rate = std::min(1.0, local_batch / size);
      const double delta =
          config.auto_delta ? DefaultDelta(p.dataset_size()) : dp.target_delta;
      ASSIGN_OR_RETURN(PrivacyLedger ledger,
                       PrivacyLedger::Create(rate, dp.noise_multiplier, delta,
                                             dp.target_epsilon, dp.alpha_grid));
      fed.local_ledgers_.push_back(std::move(ledger));
      fed.local_expected_batch_.push_back(rate * size);
    }
  }
  return fed;
}

absl::Status Federation::Broadcast(ParticipantId sender, MessageKind kind,
                                   std::int64_t round,
                                   const MessagePayload& payload) {
  for (ParticipantId id : ids_) {
    RETURN_IF_ERROR(bus_.Send({kind, sender, id, round, payload}));
  }
  return absl::OkStatus();
}

absl::Status Federation::DeliverSync(std::int64_t round) {
  for (Participant& p : participants_) {
    bool synced = false;
    for (RoundMessage& m : bus_.Receive(p.id())) {
      if (m.kind == MessageKind::kModelSync && m.round == round) {
        p.Sync(std::get<Eigen::VectorXd>(m.payload));
        synced = true;
      }
    }
    if (!synced) {
      return absl::InternalError(
          absl::StrCat("participant ", p.id(), " missed round ", round,
                       " model sync"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<RoundRecord> Federation::RunAggregatedRound(
    std::int64_t round, double clip_norm, double noise_multiplier) {
  RoundRecord rec;
  rec.round = round;
  const CommCost traffic_before = aggregator_.traffic();

  // Leader election.
  ASSIGN_OR_RETURN(rec.leader, SelectLeader(round, config_.leader_seed, ids_));
  RETURN_IF_ERROR(
      Broadcast(rec.leader, MessageKind::kLeaderAnnounce, round, rec.leader));

  // Sample locally, learn |B| only as a secure sum.
  // Everyone reads the leader announcement before any share is in flight.
  for (ParticipantId id : ids_) bus_.Receive(id);
  ASSIGN_OR_RETURN(SecAggSession size_session, aggregator_.OpenSession(ids_, 1));
  for (Participant& p : participants_) {
    ASSIGN_OR_RETURN(std::int64_t b, p.SampleBatch(round, sampling_rate_));
    rec.batch_sizes.push_back(b);
    if (b > 0) rec.active.push_back(p.id());
    const double plain = static_cast<double>(b);
    ASSIGN_OR_RETURN(MaskedShare share,
                     Mask(size_session, p.id(), std::span(&plain, 1)));
    RETURN_IF_ERROR(bus_.Send({MessageKind::kBatchSizeShare, p.id(),
                               rec.leader, round, std::move(share)}));
  }
  aggregator_.RecordTraffic(size_session);
  {
    const std::vector<RoundMessage> inbox = bus_.Receive(rec.leader);
    ASSIGN_OR_RETURN(std::vector<double> total,
                     LeaderAggregate(size_session, MessageKind::kBatchSizeShare,
                                     round, inbox));
    rec.aggregate_batch = std::llround(total[0]);
  }
  RETURN_IF_ERROR(Broadcast(rec.leader, MessageKind::kBatchTotal, round,
                            rec.aggregate_batch));

  if (rec.aggregate_batch == 0) {
    for (ParticipantId id : ids_) bus_.Receive(id);
    rec.bytes = aggregator_.traffic();
    rec.bytes.participant_bytes -= traffic_before.participant_bytes;
    rec.bytes.aggregator_bytes -= traffic_before.aggregator_bytes;
    return rec;
  }

  // Clipped, noised local sums, masked and sent to the leader.
  std::vector<std::int64_t> announced(participants_.size(), -1);
  for (std::size_t k = 0; k < participants_.size(); ++k) {
    for (const RoundMessage& m : bus_.Receive(participants_[k].id())) {
      if (m.kind == MessageKind::kBatchTotal) {
        announced[k] = std::get<std::int64_t>(m.payload);
      }
    }
  }
  const std::size_t dim = static_cast<std::size_t>(model_.params.size());
  ASSIGN_OR_RETURN(SecAggSession grad_session,
                   aggregator_.OpenSession(ids_, dim));
  auto contributions = ForEachParticipant<MaskedContribution>(
      participants_.size(), config_.parallel,
      [&](std::size_t k) -> absl::StatusOr<MaskedContribution> {
        const Participant& p = participants_[k];
        if (announced[k] < 0) {
          return absl::InternalError("aggregate batch size not received");
        }
        ASSIGN_OR_RETURN(Participant::Contribution c,
                         p.SplitNoiseContribution(round, announced[k],
                                                  clip_norm, noise_multiplier));
        ASSIGN_OR_RETURN(
            MaskedShare share,
            Mask(grad_session, p.id(),
                 std::span(c.noised_sum.data(), c.noised_sum.size())));
        return MaskedContribution{std::move(share), c.loss_sum};
      });
  double loss_sum = 0.0;
  for (std::size_t k = 0; k < participants_.size(); ++k) {
    if (!contributions[k].ok()) return contributions[k].status();
    loss_sum += contributions[k]->loss_sum;
    RETURN_IF_ERROR(bus_.Send({MessageKind::kGradientShare,
                               participants_[k].id(), rec.leader, round,
                               std::move(contributions[k]->share)}));
  }
  aggregator_.RecordTraffic(grad_session);

  // The leader sees only the masked shares and their sum.
  {
    const std::vector<RoundMessage> inbox = bus_.Receive(rec.leader);
    ASSIGN_OR_RETURN(std::vector<double> sum,
                     LeaderAggregate(grad_session, MessageKind::kGradientShare,
                                     round, inbox));
    const Eigen::VectorXd g =
        Eigen::Map<const Eigen::VectorXd>(sum.data(), sum.size()) /
        static_cast<double>(rec.aggregate_batch);
    ASSIGN_OR_RETURN(model_, ApplyUpdate(model_, g));
  }
  // Everyone adopts the updated model.
  RETURN_IF_ERROR(
      Broadcast(rec.leader, MessageKind::kModelSync, round, model_.params));
  RETURN_IF_ERROR(DeliverSync(round));

  rec.updated = true;
  rec.train_loss = loss_sum / static_cast<double>(rec.aggregate_batch);
  rec.bytes = aggregator_.traffic();
  rec.bytes.participant_bytes -= traffic_before.participant_bytes;
  rec.bytes.aggregator_bytes -= traffic_before.aggregator_bytes;
  return rec;
}

absl::StatusOr<RoundRecord> Federation::RunDecaphRound(std::int64_t round) {
  if (!ledger_.has_value()) {
    return absl::FailedPreconditionError("federation is not in decaph mode");
  }
  if (ledger_->exhausted()) {
    return absl::ResourceExhaustedError(
        "privacy budget exhausted: training complete");
  }
  ASSIGN_OR_RETURN(RoundRecord rec,
                   RunAggregatedRound(round, config_.dp.clip_norm,
                                      config_.dp.noise_multiplier));
  RETURN_IF_ERROR(ledger_->Step());
  rec.epsilon = ledger_->GuaranteeAfter(ledger_->steps()).epsilon;
  return rec;
}

absl::StatusOr<RoundRecord> Federation::RunFlRound(std::int64_t round) {
  ASSIGN_OR_RETURN(RoundRecord rec, RunAggregatedRound(round, kInf, 0.0));
  rec.epsilon = kInf;
  return rec;
}

absl::StatusOr<RoundRecord> Federation::RunLocalDpRound(std::int64_t round) {
  if (local_ledgers_.size() != participants_.size()) {
    return absl::FailedPreconditionError("federation is not in local_dp mode");
  }
  RoundRecord rec;
  rec.round = round;
  const CommCost traffic_before = aggregator_.traffic();
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < participants_.size(); ++k) {
    if (!local_ledgers_[k].exhausted()) {
      active.push_back(k);
      rec.active.push_back(participants_[k].id());
    }
  }
  if (active.empty()) {
    return absl::ResourceExhaustedError(
        "every participant's privacy budget is exhausted: training complete");
  }
  ASSIGN_OR_RETURN(rec.leader, SelectLeader(round, config_.leader_seed, ids_));
  RETURN_IF_ERROR(
      Broadcast(rec.leader, MessageKind::kLeaderAnnounce, round, rec.leader));

  rec.batch_sizes.assign(participants_.size(), 0);
  for (std::size_t k : active) {
    Participant& p = participants_[k];
    bus_.Receive(p.id());
    ASSIGN_OR_RETURN(rec.batch_sizes[k],
                     p.SampleBatch(round, local_ledgers_[k].sampling_rate()));
    rec.aggregate_batch += rec.batch_sizes[k];
  }
  for (ParticipantId id : ids_) bus_.Receive(id);

  // Each share is [w_h * (W_h' - W), w_h] with w_h the shard size.
  const std::size_t dim = static_cast<std::size_t>(model_.params.size());
  ASSIGN_OR_RETURN(SecAggSession session,
                   aggregator_.OpenSession(rec.active, dim + 1));
  auto contributions = ForEachParticipant<MaskedContribution>(
      active.size(), config_.parallel,
      [&](std::size_t a) -> absl::StatusOr<MaskedContribution> {
        const std::size_t k = active[a];
        const Participant& p = participants_[k];
        ASSIGN_OR_RETURN(
            Participant::Contribution c,
            p.LocalDpDelta(round, local_expected_batch_[k],
                           config_.dp.clip_norm, config_.dp.noise_multiplier));
        const double weight = static_cast<double>(p.dataset_size());
        std::vector<double> plain(dim + 1);
        for (std::size_t i = 0; i < dim; ++i) {
          plain[i] = weight * c.noised_sum[static_cast<Eigen::Index>(i)];
        }
        plain[dim] = weight;
        ASSIGN_OR_RETURN(MaskedShare share, Mask(session, p.id(), plain));
        return MaskedContribution{std::move(share), c.loss_sum};
      });
  double loss_sum = 0.0;
  for (std::size_t a = 0; a < active.size(); ++a) {
    if (!contributions[a].ok()) return contributions[a].status();
    loss_sum += contributions[a]->loss_sum;
    RETURN_IF_ERROR(bus_.Send({MessageKind::kGradientShare,
                               participants_[active[a]].id(), rec.leader,
                               round, std::move(contributions[a]->share)}));
  }
  aggregator_.RecordTraffic(session);
  {
    const std::vector<RoundMessage> inbox = bus_.Receive(rec.leader);
    ASSIGN_OR_RETURN(std::vector<double> sum,
                     LeaderAggregate(session, MessageKind::kGradientShare,
                                     round, inbox));
    const Eigen::VectorXd delta =
        Eigen::Map<const Eigen::VectorXd>(sum.data(), dim) / sum[dim];
    if (!delta.allFinite()) {
      return absl::InternalError("non-finite model update: training diverged");
    }
    model_.params += delta;
  }
  RETURN_IF_ERROR(
      Broadcast(rec.leader, MessageKind::kModelSync, round, model_.params));
  RETURN_IF_ERROR(DeliverSync(round));

  double eps = 0.0;
  for (std::size_t k : active) RETURN_IF_ERROR(local_ledgers_[k].Step());
  for (const PrivacyLedger& l : local_ledgers_) {
    eps = std::max(eps, l.GuaranteeAfter(l.steps()).epsilon);
  }
  rec.epsilon = eps;
  rec.updated = true;
  rec.train_loss =
      rec.aggregate_batch > 0
          ? loss_sum / static_cast<double>(rec.aggregate_batch)
          : 0.0;
  rec.bytes = aggregator_.traffic();
  rec.bytes.participant_bytes -= traffic_before.participant_bytes;
  rec.bytes.aggregator_bytes -= traffic_before.aggregator_bytes;
  return rec;
}

absl::StatusOr<RoundRecord> Federation::RunRound(std::int64_t round) {
  switch (config_.mode) {
    case Mode::kDecaph:
      return RunDecaphRound(round);
    case Mode::kFl:
      return RunFlRound(round);
    case Mode::kLocalDp:
      return RunLocalDpRound(round);
  }
  return absl::InternalError("unknown mode");
}

bool Federation::BudgetExhausted() const {
  switch (config_.mode) {
    case Mode::kDecaph:
      return ledger_->exhausted();
    case Mode::kFl:
      return false;
    case Mode::kLocalDp:
      return std::all_of(local_ledgers_.begin(), local_ledgers_.end(),
                         [](const PrivacyLedger& l) { return l.exhausted(); });
  }
  return false;
}

}  // namespace decaph
