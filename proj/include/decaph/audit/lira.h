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

#ifndef DECAPH_AUDIT_LIRA_H_
#define DECAPH_AUDIT_LIRA_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "decaph/models/model.h"

namespace decaph {

// Confidence scores are clamped to [-kLogitClamp, kLogitClamp].
inline constexpr double kLogitClamp = 30.0;
// Fitted standard deviations never go below this.
inline constexpr double kLiraStdFloor = 1e-3;

// Membership masks for the shadow models: example i is a member of exactly
// n_shadow / 2 shadows. Built by ranking i.i.d. uniforms per example.
class ShadowPlan {
 public:
  // n_shadow must be even and >= 4 so both sides get two scores.
  static absl::StatusOr<ShadowPlan> Create(int n_shadow,
                                           std::size_t n_examples,
                                           std::uint64_t seed);

  int n_shadow() const { return n_shadow_; }
  std::size_t n_examples() const { return n_examples_; }
  bool IsMember(int shadow, std::size_t example) const {
    return members_[static_cast<std::size_t>(shadow) * n_examples_ + example];
  }
  // Example indices that shadow `shadow` trains on, ascending.
  std::vector<std::size_t> MembersOf(int shadow) const;

 private:
  int n_shadow_ = 0;
  std::size_t n_examples_ = 0;
  std::vector<bool> members_;  // shadow-major
};

// ln(s / (1 - s)) clamped, for a probability s.
double LogitOfProbability(double s);

// Per example: the logit-scaled confidence of the true label, computed from
// raw outputs without forming s explicitly. Softmax and multi-margin heads
// use log s - log(1 - s) of the softmax over the outputs; multilabel heads
// average the per-label signed logits.
absl::StatusOr<Eigen::VectorXd> LogitConfidence(const ModelState& model,
                                                const Eigen::MatrixXd& features,
                                                const Eigen::MatrixXi& labels);

struct LiraFit {
  double mu_in = 0.0;
  double sigma_in = kLiraStdFloor;
  double mu_out = 0.0;
  double sigma_out = kLiraStdFloor;
};

// scores(s, i): confidence of shadow s on example i. Population standard
// deviations (ddof 0), floored at kLiraStdFloor. With `global_variance`
// each side's variance is the mean of the per-example variances.
absl::StatusOr<std::vector<LiraFit>> FitLira(const ShadowPlan& plan,
                                             const Eigen::MatrixXd& scores,
                                             bool global_variance = false);

double GaussianLogPdf(double x, double mu, double sigma);

struct AttackScore {
  std::size_t example_id = 0;
  double lira_statistic = 0.0;  // log N(x; in) - log N(x; out)
  bool is_member = false;
};

absl::StatusOr<std::vector<AttackScore>> Attack(
    std::span<const double> target_scores, std::span<const LiraFit> fits,
    std::span<const int> is_member);

}  // namespace decaph

#endif  // DECAPH_AUDIT_LIRA_H_
