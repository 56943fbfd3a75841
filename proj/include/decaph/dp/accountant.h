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

#ifndef DECAPH_DP_ACCOUNTANT_H_
#define DECAPH_DP_ACCOUNTANT_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "decaph/dp/rdp.h"
#include "json.hpp"

namespace decaph {

struct DpConfig {
  double clip_norm = 1.0;
  double noise_multiplier = 1.0;
  // +inf means no budget: training stops only on round/epoch limits.
  double target_epsilon = std::numeric_limits<double>::infinity();
  double target_delta = 1e-5;
  double sampling_rate = 0.01;
  std::vector<double> alpha_grid = DefaultAlphaGrid();

  absl::Status Validate() const;
  nlohmann::json ToJson() const;
};

// min(1e-5, 1 / (1.1 N)) for a dataset of N records.
double DefaultDelta(std::size_t num_records);

// Smallest noise multiplier whose epsilon after `steps` subsampled-Gaussian
// steps at `sampling_rate` is at most `target_epsilon`. Bisection on sigma;
// the result is the upper end of the final bracket, so it never overshoots
// the budget, and lies within a relative 1e-6 of the exact root.
absl::StatusOr<double> CalibrateNoiseMultiplier(double sampling_rate,
                                                std::int64_t steps,
                                                double target_epsilon,
                                                double delta,
                                                std::span<const double> alphas);

// Running RDP totals for a sequence of identical subsampled-Gaussian steps.
class PrivacyLedger {
 public:
  static absl::StatusOr<PrivacyLedger> Create(double sampling_rate,
                                              double noise_multiplier,
                                              double delta,
                                              double target_epsilon,
                                              std::vector<double> alphas);
  static absl::StatusOr<PrivacyLedger> FromConfig(const DpConfig& config);

  // Adds one step. Fails if the ledger is already exhausted.
  absl::Status Step();

  // (epsilon, alpha) after `steps` steps, without mutating the ledger.
  // Zero steps gives epsilon 0.
  DpGuarantee GuaranteeAfter(std::int64_t steps) const;
  // Current guarantee; an error before the first step.
  absl::StatusOr<DpGuarantee> Guarantee() const;

  // True when one more step would push epsilon past the target.
  bool exhausted() const { return exhausted_; }
  std::int64_t steps() const { return steps_; }
  const std::vector<double>& alphas() const { return alphas_; }
  const std::vector<double>& step_rdp() const { return step_rdp_; }
  std::vector<double> rdp_totals() const;
  double sampling_rate() const { return sampling_rate_; }
  double noise_multiplier() const { return noise_multiplier_; }
  double delta() const { return delta_; }
  double target_epsilon() const { return target_epsilon_; }

  nlohmann::json ToJson() const;

 private:
  PrivacyLedger() = default;
  void RefreshExhausted();

  double sampling_rate_ = 1.0;
  double noise_multiplier_ = 0.0;
  double delta_ = 1e-5;
  double target_epsilon_ = 0.0;
  std::vector<double> alphas_;
  std::vector<double> step_rdp_;
  std::int64_t steps_ = 0;
  bool exhausted_ = false;
};

}  // namespace decaph

#endif  // DECAPH_DP_ACCOUNTANT_H_
