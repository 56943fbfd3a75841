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

#ifndef DECAPH_CLI_COMMANDS_H_
#define DECAPH_CLI_COMMANDS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "decaph/cli/experiment_config.h"
#include "decaph/data/dataset.h"
#include "decaph/eval/metrics.h"
#include "decaph/models/model.h"
#include "decaph/protocol/trainer.h"

namespace decaph {

struct MetricValue {
  std::string name;
  MaybeMetric value;
};

// Binary: auroc, youden_threshold, ppv, npv, f1_negative, f1_positive,
// macro_f1, weighted_f1 (the threshold is chosen on `test` itself).
// Multiclass (argmax prediction): median_f1, weighted_precision,
// weighted_recall, accuracy. Multilabel: mean_auroc over labels with both
// values present, plus auroc_<j> per label.
absl::StatusOr<std::vector<MetricValue>> EvaluateModel(
    const ModelState& model, const DatasetShard& test);

// One trained model of a fold.
struct ModeRun {
  std::string mode;         // decaph, fl, local_dp or solo
  std::string participant;  // "all", or the participant id for solo
  std::vector<MetricValue> metrics;
  TrainResult train;
};

// Participant shards for one seed: synthetic data is generated with `seed`,
// CSV shards are loaded with ids 0..H-1 in file order.
absl::StatusOr<std::vector<DatasetShard>> LoadShards(
    const ExperimentConfig& config, std::uint64_t seed);

// Splits `shards` into fold `fold`, replicates the configured class in the
// training part, standardizes with pooled training statistics (each solo
// model uses its own shard's statistics) and trains every requested mode.
// All models are scored on the pooled test rows of every participant.
absl::StatusOr<std::vector<ModeRun>> RunFold(
    const ExperimentConfig& config, const std::vector<DatasetShard>& shards,
    std::uint64_t seed, int fold);

// Job-level parallelism: DECAPH_WORKERS if set, else config.workers; 1 when
// config.deterministic. Outputs never depend on the value.
int ResolveWorkers(const ExperimentConfig& config);

// Each command writes under config.output_dir. See README.md for layouts.
absl::Status CmdTrain(const ExperimentConfig& config);
absl::Status CmdAudit(const ExperimentConfig& config);
absl::Status CmdCommCost(const ExperimentConfig& config);
absl::Status CmdGenData(const ExperimentConfig& config);

// The commcost table body (header plus rows), without provenance.
std::string CommCostCsv(const CommCostOptions& options);

}  // namespace decaph

#endif  // DECAPH_CLI_COMMANDS_H_
