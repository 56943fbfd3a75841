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

#ifndef DECAPH_CLI_EXPERIMENT_CONFIG_H_
#define DECAPH_CLI_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "decaph/data/dataset.h"
#include "decaph/data/synthetic.h"
#include "decaph/models/architecture.h"
#include "decaph/protocol/config.h"
#include "json.hpp"

namespace decaph {

struct DataSource {
  // Exactly one of the two is used. For synthetic data the seed of each run
  // replaces synthetic->seed.
  std::optional<SyntheticSpec> synthetic;
  std::vector<std::string> csv_paths;  // one file per participant
  Task task;
  // Training rows of this class are repeated `replicate_factor` times.
  std::optional<int> replicate_class;
  int replicate_factor = 1;
};

struct ModelSpec {
  std::string type = "logistic";  // logistic | mlp | svc
  std::vector<int> hidden;
  std::optional<LossHead> head;  // mlp only; default from the task
  double l2_weight_decay = 0.0;
  double learning_rate = 0.1;         // decaph and local_dp
  double learning_rate_non_dp = 0.1;  // fl and solo

  absl::StatusOr<Architecture> ToArchitecture(int input_dim,
                                              const Task& task) const;
};

struct AuditOptions {
  int n_shadow = 64;
  bool global_variance = false;
  std::vector<std::string> modes = {"fl", "decaph"};
  std::optional<double> target_epsilon;  // overrides dp.target_epsilon
};

struct CommCostRow {
  std::string task;
  std::int64_t participants = 0;
  std::int64_t params = 0;
};

struct CommCostOptions {
  std::int64_t rounds = 1;
  std::vector<CommCostRow> rows;  // empty: built-in reference rows
};

// Reference model sizes: GEMINI MLP / logistic, pancreas MLP / SVC and the
// chest X-ray DenseNet121.
std::vector<CommCostRow> DefaultCommCostRows();

// The declarative experiment file. See docs/config.md for the schema.
struct ExperimentConfig {
  DataSource data;
  ModelSpec model;
  ProtocolConfig protocol;  // mode is set per run
  // decaph, fl, local_dp, solo.
  std::vector<std::string> modes = {"decaph", "fl"};
  int folds = 5;
  std::vector<std::uint64_t> seeds = {1};
  std::string output_dir = "decaph_out";
  AuditOptions audit;
  CommCostOptions commcost;
  int workers = 1;
  bool deterministic = false;

  static absl::StatusOr<ExperimentConfig> FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
  absl::Status Validate() const;
  // ToJson without the execution settings (workers, deterministic,
  // output_dir), which never change results.
  nlohmann::json ResultJson() const;
  // FNV-1a of the canonical ResultJson dump, as 16 hex digits.
  std::string Hash() const;
};

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path);

// Comma-separated list parsing for flag overrides.
absl::StatusOr<std::vector<std::string>> ParseModeList(const std::string& csv);
absl::StatusOr<std::vector<std::uint64_t>> ParseSeedList(const std::string& csv);

}  // namespace decaph

#endif  // DECAPH_CLI_EXPERIMENT_CONFIG_H_
