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

#include "decaph/dp/accountant.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "decaph/util/status_macros.h"

namespace decaph {
namespace {

// JSON has no infinity; encode it as a string.
nlohmann::json Number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

absl::Status DpConfig::Validate() const {
  if (!(clip_norm > 0.0)) {
    return absl::InvalidArgumentError("clip_norm must be > 0");
  }
  if (!(noise_multiplier >= 0.0) || !std::isfinite(noise_multiplier)) {
    return absl::InvalidArgumentError("noise_multiplier must be finite, >= 0");
  }
  if (!(target_epsilon > 0.0)) {
    return absl::InvalidArgumentError("target_epsilon must be > 0");
  }
  if (!(target_delta > 0.0 && target_delta < 1.0)) {
    return absl::InvalidArgumentError("target_delta must lie in (0, 1)");
  }
  if (!(sampling_rate > 0.0 && sampling_rate <= 1.0)) {
    return absl::InvalidArgumentError("sampling_rate must lie in (0, 1]");
  }
  if (alpha_grid.empty()) {
    return absl::InvalidArgumentError("alpha_grid must be non-empty");
  }
  for (double a : alpha_grid) {
    if (!(a > 1.0) || !std::isfinite(a)) {
      return absl::InvalidArgumentError(
          absl::StrCat("RDP order must be finite and > 1, got ", a));
    }
  }
  return absl::OkStatus();
}

nlohmann::json DpConfig::ToJson() const {
  return {{"clip_norm", Number(clip_norm)},
          {"noise_multiplier", noise_multiplier},
          {"target_epsilon", Number(target_epsilon)},
          {"target_delta", target_delta},
          {"sampling_rate", sampling_rate},
          {"alpha_grid", alpha_grid}};
}

double DefaultDelta(std::size_t num_records) {
  if (num_records == 0) return 1e-5;
  return std::min(1e-5, 1.0 / (1.1 * static_cast<double>(num_records)));
}

absl::StatusOr<double> CalibrateNoiseMultiplier(
    double sampling_rate, std::int64_t steps, double target_epsilon,
    double delta, std::span<const double> alphas) {
  if (!(sampling_rate > 0.0 && sampling_rate <= 1.0)) {
    return absl::InvalidArgumentError("sampling_rate must lie in (0, 1]");
  }
  if (steps < 1) return absl::InvalidArgumentError("steps must be >= 1");
  if (!(target_epsilon > 0.0) || !std::isfinite(target_epsilon)) {
    return absl::InvalidArgumentError(
        "calibration needs a finite target_epsilon > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  auto epsilon_at = [&](double sigma) -> absl::StatusOr<double> {
    ASSIGN_OR_RETURN(std::vector<double> rdp,
                     RdpStep(sampling_rate, sigma, alphas));
    for (double& r : rdp) r *= static_cast<double>(steps);
    ASSIGN_OR_RETURN(DpGuarantee g, RdpToDp(alphas, rdp, delta));
    return g.epsilon;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (;;) {
    ASSIGN_OR_RETURN(double eps, epsilon_at(hi));
    if (eps <= target_epsilon) break;
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) {
      return absl::InvalidArgumentError(absl::StrCat(
          "no noise multiplier up to 1e6 reaches epsilon ", target_epsilon,
          " (the RDP order grid may be too coarse)"));
    }
  }
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    ASSIGN_OR_RETURN(double eps, epsilon_at(mid));
    (eps <= target_epsilon ? hi : lo) = mid;
  }
  return hi;
}

absl::StatusOr<PrivacyLedger> PrivacyLedger::Create(double sampling_rate,
                                                    double noise_multiplier,
                                                    double delta,
                                                    double target_epsilon,
                                                    std::vector<double> alphas) {
  if (!(target_epsilon > 0.0)) {
    return absl::InvalidArgumentError("target epsilon must be > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  PrivacyLedger ledger;
  ASSIGN_OR_RETURN(ledger.step_rdp_,
                   RdpStep(sampling_rate, noise_multiplier, alphas));
  ledger.sampling_rate_ = sampling_rate;
  ledger.noise_multiplier_ = noise_multiplier;
  ledger.delta_ = delta;
  ledger.target_epsilon_ = target_epsilon;
  ledger.alphas_ = std::move(alphas);
  ledger.RefreshExhausted();
  return ledger;
}

absl::StatusOr<PrivacyLedger> PrivacyLedger::FromConfig(const DpConfig& config) {
  RETURN_IF_ERROR(config.Validate());
  return Create(config.sampling_rate, config.noise_multiplier,
                config.target_delta, config.target_epsilon, config.alpha_grid);
}

absl::Status PrivacyLedger::Step() {
  if (exhausted_) {
    return absl::ResourceExhaustedError(
        absl::StrCat("privacy budget epsilon=", target_epsilon_,
                     " exhausted after ", steps_, " steps"));
  }
  ++steps_;
  RefreshExhausted();
  return absl::OkStatus();
}

DpGuarantee PrivacyLedger::GuaranteeAfter(std::int64_t steps) const {
  if (steps <= 0) return DpGuarantee{0.0, alphas_.front(), delta_};
  std::vector<double> totals(step_rdp_.size());
  for (std::size_t i = 0; i < totals.size(); ++i) {
    totals[i] = static_cast<double>(steps) * step_rdp_[i];
  }
  // Inputs were validated at construction.
  return *RdpToDp(alphas_, totals, delta_);
}

absl::StatusOr<DpGuarantee> PrivacyLedger::Guarantee() const {
  if (steps_ == 0) {
    return absl::FailedPreconditionError("ledger has no steps");
  }
  return GuaranteeAfter(steps_);
}

std::vector<double> PrivacyLedger::rdp_totals() const {
  std::vector<double> totals(step_rdp_.size());
  for (std::size_t i = 0; i < totals.size(); ++i) {
    totals[i] = steps_ == 0 ? 0.0 : static_cast<double>(steps_) * step_rdp_[i];
  }
  return totals;
}

void PrivacyLedger::RefreshExhausted() {
  exhausted_ = GuaranteeAfter(steps_ + 1).epsilon > target_epsilon_;
}

nlohmann::json PrivacyLedger::ToJson() const {
  nlohmann::json table = nlohmann::json::array();
  const std::vector<double> totals = rdp_totals();
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    table.push_back({{"alpha", alphas_[i]}, {"rdp", Number(totals[i])}});
  }
  const DpGuarantee g = GuaranteeAfter(steps_);
  return {{"steps", steps_},
          {"sampling_rate", sampling_rate_},
          {"noise_multiplier", noise_multiplier_},
          {"delta", delta_},
          {"target_epsilon", Number(target_epsilon_)},
          {"epsilon", Number(g.epsilon)},
          {"best_alpha", g.alpha},
          {"exhausted", exhausted_},
          {"rdp", table}};
}

}  // namespace decaph
