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

// Command-line experiment runner.
//
//   decaph train     --config exp.json [--modes fl,decaph] [--seeds 1,2]
//   decaph audit     --config exp.json
//   decaph commcost  [--config exp.json]
//   decaph gen-data  --config exp.json
//
// Flags given on the command line override the config file.

#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "decaph/cli/commands.h"
#include "decaph/cli/experiment_config.h"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> modes;
  std::optional<std::string> seeds;
  std::optional<std::string> out;
  std::optional<int> folds;
  std::optional<std::string> epsilon;
  std::optional<double> sigma;
  std::optional<double> clip;
  bool deterministic = false;
};

void AddCommonFlags(CLI::App* cmd, Overrides& o, bool config_required) {
  auto* config = cmd->add_option("--config", o.config_path,
                                 "experiment file (JSON)");
  if (config_required) config->required();
  cmd->add_option("--modes", o.modes,
                  "comma-separated: decaph, fl, local_dp, solo");
  cmd->add_option("--seeds", o.seeds, "comma-separated seeds");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--folds", o.folds, "number of cross-validation folds");
  cmd->add_option("--epsilon", o.epsilon, "target epsilon, or inf");
  cmd->add_option("--sigma", o.sigma, "noise multiplier");
  cmd->add_option("--clip", o.clip, "per-example clipping norm");
  cmd->add_flag("--deterministic", o.deterministic,
                "run every job sequentially");
}

absl::StatusOr<decaph::ExperimentConfig> BuildConfig(const Overrides& o,
                                                     bool audit) {
  decaph::ExperimentConfig config;
  if (!o.config_path.empty()) {
    auto loaded = decaph::LoadExperimentConfig(o.config_path);
    if (!loaded.ok()) return loaded.status();
    config = *std::move(loaded);
  }
  if (o.modes) {
    auto modes = decaph::ParseModeList(*o.modes);
    if (!modes.ok()) return modes.status();
    (audit ? config.audit.modes : config.modes) = *modes;
  }
  if (o.seeds) {
    auto seeds = decaph::ParseSeedList(*o.seeds);
    if (!seeds.ok()) return seeds.status();
    config.seeds = *seeds;
  }
  if (o.out) config.output_dir = *o.out;
  if (o.folds) config.folds = *o.folds;
  if (o.epsilon) {
    double eps = 0.0;
    if (*o.epsilon == "inf") {
      eps = std::numeric_limits<double>::infinity();
    } else {
      try {
        std::size_t used = 0;
        eps = std::stod(*o.epsilon, &used);
        if (used != o.epsilon->size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        return absl::InvalidArgumentError(
            "--epsilon expects a number or 'inf'");
      }
    }
    config.protocol.dp.target_epsilon = eps;
    if (audit) config.audit.target_epsilon = eps;
  }
  if (o.sigma) {
    config.protocol.dp.noise_multiplier = *o.sigma;
    config.protocol.calibrate_noise = false;
  }
  if (o.clip) config.protocol.dp.clip_norm = *o.clip;
  if (o.deterministic) config.deterministic = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative private training simulator and auditor"};
  app.require_subcommand(1);

  Overrides train_o, audit_o, cost_o, gen_o;
  CLI::App* train = app.add_subcommand("train", "train and evaluate models");
  CLI::App* audit =
      app.add_subcommand("audit", "membership-inference audit (LiRA)");
  CLI::App* cost =
      app.add_subcommand("commcost", "secure-aggregation traffic table");
  CLI::App* gen =
      app.add_subcommand("gen-data", "write synthetic shards as CSV");
  AddCommonFlags(train, train_o, true);
  AddCommonFlags(audit, audit_o, true);
  AddCommonFlags(cost, cost_o, false);
  AddCommonFlags(gen, gen_o, true);

  CLI11_PARSE(app, argc, argv);

  absl::Status status;
  auto run = [&](const Overrides& o, bool is_audit,
                 absl::Status (*cmd)(const decaph::ExperimentConfig&)) {
    auto config = BuildConfig(o, is_audit);
    if (!config.ok()) return config.status();
    return cmd(*config);  // every command validates what it uses
  };
  if (train->parsed()) {
    status = run(train_o, false, decaph::CmdTrain);
  } else if (audit->parsed()) {
    status = run(audit_o, true, decaph::CmdAudit);
  } else if (cost->parsed()) {
    status = run(cost_o, false, decaph::CmdCommCost);
  } else if (gen->parsed()) {
    status = run(gen_o, false, decaph::CmdGenData);
  }
  if (!status.ok()) {
    std::cerr << "error: " << status << "\n";
    return 1;
  }
  return 0;
}
