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

#include "decaph/protocol/config.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "decaph/util/status_macros.h"

namespace decaph {

std::string ModeName(Mode mode) {
  switch (mode) {
    case Mode::kDecaph:
      return "decaph";
    case Mode::kFl:
      return "fl";
    case Mode::kLocalDp:
      return "local_dp";
  }
  return "unknown";
}

absl::StatusOr<Mode> ParseMode(std::string_view name) {
  for (Mode m : {Mode::kDecaph, Mode::kFl, Mode::kLocalDp}) {
    if (ModeName(m) == name) return m;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mode '", std::string(name), "' (expected decaph, fl, local_dp)"));
}

absl::Status ProtocolConfig::Validate() const {
  if (mode == Mode::kDecaph && !sync_every_step) {
    return absl::InvalidArgumentError(
        "decaph mode synchronizes after every step; sync_every_step must be "
        "true");
  }
  if (aggregate_batch_target < 1) {
    return absl::InvalidArgumentError("aggregate_batch_target must be >= 1");
  }
  if (local_batch_size < 0) {
    return absl::InvalidArgumentError("local_batch_size must be >= 0");
  }
  if (scale_bits < 1 || scale_bits > 40) {
    return absl::InvalidArgumentError("scale_bits must lie in [1, 40]");
  }
  if (mode != Mode::kFl) RETURN_IF_ERROR(dp.Validate());
  const bool bounded_by_budget =
      mode != Mode::kFl && std::isfinite(dp.target_epsilon) &&
      dp.noise_multiplier > 0.0;
  const bool has_limit = max_rounds >= 0 || max_epochs > 0.0;
  if (calibrate_noise && mode != Mode::kFl &&
      (!has_limit || !std::isfinite(dp.target_epsilon))) {
    return absl::InvalidArgumentError(
        "noise calibration needs max_rounds or max_epochs and a finite "
        "target_epsilon");
  }
  if (!has_limit && !bounded_by_budget) {
    return absl::InvalidArgumentError(
        "training is unbounded: set max_rounds, max_epochs or a finite "
        "target_epsilon");
  }
  return absl::OkStatus();
}

nlohmann::json ProtocolConfig::ToJson() const {
  return {{"mode", ModeName(mode)},
          {"aggregate_batch_target", aggregate_batch_target},
          {"local_batch_size", local_batch_size},
          {"dp", dp.ToJson()},
          {"auto_delta", auto_delta},
          {"calibrate_noise", calibrate_noise},
          {"max_rounds", max_rounds},
          {"max_epochs", max_epochs},
          {"seed", seed},
          {"leader_seed", leader_seed},
          {"sync_every_step", sync_every_step},
          {"scale_bits", scale_bits}};
}

}  // namespace decaph
