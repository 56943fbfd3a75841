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

#include "decaph/audit/shadow.h"

#include <algorithm>
#include <future>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "decaph/numerics/prng.h"
#include "decaph/protocol/trainer.h"
#include "decaph/util/status_macros.h"

namespace decaph {
namespace {

struct TrainedScores {
  Eigen::VectorXd scores;
  double epsilon = 0.0;
  std::int64_t rounds = 0;
};

// Trains one model on the pooled examples flagged in `member` and scores
// every pooled example.
absl::StatusOr<TrainedScores> TrainAndScore(
    const ProtocolConfig& protocol, std::span<const DatasetShard> shards,
    const std::vector<std::size_t>& owner_offsets, const DatasetShard& pooled,
    const std::vector<bool>& member, const ModelState& initial,
    std::uint64_t model_seed) {
  std::vector<DatasetShard> train;
  for (std::size_t h = 0; h < shards.size(); ++h) {
    std::vector<Eigen::Index> rows;
    for (std::size_t r = 0; r < shards[h].num_examples(); ++r) {
      if (member[owner_offsets[h] + r]) rows.push_back(static_cast<Eigen::Index>(r));
    }
    if (!rows.empty()) train.push_back(shards[h].Subset(rows));
  }
  ProtocolConfig cfg = protocol;
  cfg.seed = Mix64(model_seed ^ 0x7a11);
  cfg.leader_seed = Mix64(model_seed ^ 0x1ead);
  cfg.parallel = false;
  ASSIGN_OR_RETURN(ModelState init,
                   ModelState::Initialize(initial.arch, initial.l2_weight_decay,
                                          initial.learning_rate, model_seed));
  ASSIGN_OR_RETURN(TrainResult result, Train(cfg, std::move(train), init));
  TrainedScores out;
  ASSIGN_OR_RETURN(out.scores,
                   LogitConfidence(result.model, pooled.features, pooled.labels));
  out.rounds = static_cast<std::int64_t>(result.log.size());
  out.epsilon =
      result.log.empty() ? 0.0 : result.log.back().epsilon;
  return out;
}

}  // namespace

absl::StatusOr<AuditResult> AuditMode(const ProtocolConfig& protocol,
                                      std::span<const DatasetShard> shards,
                                      const ModelState& initial,
                                      const AuditConfig& audit) {
  ASSIGN_OR_RETURN(DatasetShard pooled, Pool(shards));
  const std::size_t n = pooled.num_examples();
  ASSIGN_OR_RETURN(ShadowPlan plan, ShadowPlan::Create(audit.n_shadow, n,
                                                       audit.seed));
  std::vector<std::size_t> offsets;
  std::size_t at = 0;
  for (const DatasetShard& s : shards) {
    offsets.push_back(at);
    at += s.num_examples();
  }

  // Index n_shadow is the target.
  std::vector<std::vector<bool>> masks(audit.n_shadow + 1,
                                       std::vector<bool>(n, false));
  for (int s = 0; s < audit.n_shadow; ++s) {
    for (std::size_t i = 0; i < n; ++i) masks[s][i] = plan.IsMember(s, i);
  }
  {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Prng prng(audit.seed, MakeStreamId(StreamDomain::kShadow, {1}));
    prng.Shuffle(std::span(perm));
    for (std::size_t k = 0; k < n / 2; ++k) masks[audit.n_shadow][perm[k]] = true;
  }

  const int total = audit.n_shadow + 1;
  std::vector<absl::StatusOr<TrainedScores>> trained(
      total, absl::UnknownError("not run"));
  auto run = [&](int m) {
    const std::uint64_t model_seed = MakeStreamId(
        StreamDomain::kShadow, {audit.seed, 2, static_cast<std::uint64_t>(m)});
    return TrainAndScore(protocol, shards, offsets, pooled, masks[m], initial,
                         model_seed);
  };
  const int workers = std::max(1, audit.workers);
  for (int start = 0; start < total; start += workers) {
    const int end = std::min(total, start + workers);
    if (workers == 1) {
      trained[start] = run(start);
      continue;
    }
    std::vector<std::future<absl::StatusOr<TrainedScores>>> futures;
    for (int m = start; m < end; ++m) {
      futures.push_back(std::async(std::launch::async, run, m));
    }
    for (int m = start; m < end; ++m) trained[m] = futures[m - start].get();
  }

  Eigen::MatrixXd shadow_scores(audit.n_shadow, static_cast<Eigen::Index>(n));
  for (int s = 0; s < audit.n_shadow; ++s) {
    if (!trained[s].ok()) return trained[s].status();
    shadow_scores.row(s) = trained[s]->scores.transpose();
  }
  if (!trained[audit.n_shadow].ok()) return trained[audit.n_shadow].status();
  const TrainedScores& target = *trained[audit.n_shadow];

  ASSIGN_OR_RETURN(std::vector<LiraFit> fits,
                   FitLira(plan, shadow_scores, audit.global_variance));
  std::vector<int> is_member(n);
  for (std::size_t i = 0; i < n; ++i) is_member[i] = masks[audit.n_shadow][i];
  std::vector<double> target_scores(target.scores.data(),
                                    target.scores.data() + n);
  AuditResult result;
  result.mode = protocol.mode;
  ASSIGN_OR_RETURN(result.scores, Attack(target_scores, fits, is_member));
  std::vector<double> stats;
  for (const AttackScore& a : result.scores) stats.push_back(a.lira_statistic);
  ASSIGN_OR_RETURN(result.roc, Roc(stats, is_member));
  result.target_epsilon = target.epsilon;
  result.target_rounds = target.rounds;
  return result;
}

}  // namespace decaph
