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

#include "decaph/audit/lira.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "decaph/numerics/prng.h"
#include "decaph/util/status_macros.h"

namespace decaph {
namespace {

double Clamp(double v) { return std::clamp(v, -kLogitClamp, kLogitClamp); }

// log(s / (1 - s)) for s = softmax(z)_y.
double SoftmaxTrueClassLogit(const Eigen::RowVectorXd& z, int y) {
  double m = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (j != y) m = std::max(m, z(j));
  }
  double rest = 0.0;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (j != y) rest += std::exp(z(j) - m);
  }
  return z(y) - (m + std::log(rest));
}

}  // namespace

absl::StatusOr<ShadowPlan> ShadowPlan::Create(int n_shadow,
                                              std::size_t n_examples,
                                              std::uint64_t seed) {
  if (n_shadow < 4 || n_shadow % 2 != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need an even number of at least 4 shadow models (2 in and 2 out per "
        "example), got ",
        n_shadow));
  }
  if (n_examples == 0) {
    return absl::InvalidArgumentError("no examples to audit");
  }
  ShadowPlan plan;
  plan.n_shadow_ = n_shadow;
  plan.n_examples_ = n_examples;
  plan.members_.assign(static_cast<std::size_t>(n_shadow) * n_examples, false);
  Prng prng(seed, MakeStreamId(StreamDomain::kShadow, {0}));
  std::vector<double> u(n_shadow);
  std::vector<int> order(n_shadow);
  for (std::size_t i = 0; i < n_examples; ++i) {
    for (double& v : u) v = prng.NextDouble();
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return u[a] < u[b]; });
    for (int r = 0; r < n_shadow / 2; ++r) {
      plan.members_[static_cast<std::size_t>(order[r]) * n_examples + i] = true;
    }
  }
  return plan;
}

std::vector<std::size_t> ShadowPlan::MembersOf(int shadow) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_examples_; ++i) {
    if (IsMember(shadow, i)) out.push_back(i);
  }
  return out;
}

double LogitOfProbability(double s) {
  if (!(s > 0.0)) return -kLogitClamp;
  if (!(s < 1.0)) return kLogitClamp;
  return Clamp(std::log(s) - std::log1p(-s));
}

absl::StatusOr<Eigen::VectorXd> LogitConfidence(const ModelState& model,
                                                const Eigen::MatrixXd& features,
                                                const Eigen::MatrixXi& labels) {
  ASSIGN_OR_RETURN(Eigen::MatrixXd z, Logits(model, features));
  if (labels.rows() != z.rows()) {
    return absl::InvalidArgumentError("one label row per example required");
  }
  Eigen::VectorXd out(z.rows());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    double v = 0.0;
    switch (model.arch.head) {
      case LossHead::kSigmoidBce:
        v = labels(i, 0) == 1 ? z(i, 0) : -z(i, 0);
        break;
      case LossHead::kSoftmaxCe:
      case LossHead::kMultiMargin:
        v = SoftmaxTrueClassLogit(z.row(i), labels(i, 0));
        break;
      case LossHead::kMultilabelBce:
        for (Eigen::Index j = 0; j < z.cols(); ++j) {
          v += labels(i, j) == 1 ? z(i, j) : -z(i, j);
        }
        v /= static_cast<double>(z.cols());
        break;
    }
    out(i) = Clamp(v);
  }
  return out;
}

absl::StatusOr<std::vector<LiraFit>> FitLira(const ShadowPlan& plan,
                                             const Eigen::MatrixXd& scores,
                                             bool global_variance) {
  if (scores.rows() != plan.n_shadow() ||
      static_cast<std::size_t>(scores.cols()) != plan.n_examples()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "score matrix is ", scores.rows(), "x", scores.cols(), "; plan has ",
        plan.n_shadow(), " shadows and ", plan.n_examples(), " examples"));
  }
  const std::size_t n = plan.n_examples();
  std::vector<LiraFit> fits(n);
  std::vector<double> var_in(n);
  std::vector<double> var_out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum[2] = {0, 0};
    double sq[2] = {0, 0};
    int count[2] = {0, 0};
    for (int s = 0; s < plan.n_shadow(); ++s) {
      const int side = plan.IsMember(s, i) ? 1 : 0;
      const double x = scores(s, static_cast<Eigen::Index>(i));
      sum[side] += x;
      ++count[side];
    }
    if (count[0] < 2 || count[1] < 2) {
      return absl::FailedPreconditionError(absl::StrCat(
          "example ", i, " has ", count[1], " in-scores and ", count[0],
          " out-scores; at least 2 of each are needed"));
    }
    const double mean[2] = {sum[0] / count[0], sum[1] / count[1]};
    for (int s = 0; s < plan.n_shadow(); ++s) {
      const int side = plan.IsMember(s, i) ? 1 : 0;
      const double d = scores(s, static_cast<Eigen::Index>(i)) - mean[side];
      sq[side] += d * d;
    }
    fits[i].mu_in = mean[1];
    fits[i].mu_out = mean[0];
    var_in[i] = sq[1] / count[1];
    var_out[i] = sq[0] / count[0];
  }
  double pooled_in = 0.0;
  double pooled_out = 0.0;
  if (global_variance) {
    for (std::size_t i = 0; i < n; ++i) {
      pooled_in += var_in[i] / static_cast<double>(n);
      pooled_out += var_out[i] / static_cast<double>(n);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double vi = global_variance ? pooled_in : var_in[i];
    const double vo = global_variance ? pooled_out : var_out[i];
    fits[i].sigma_in = std::max(std::sqrt(vi), kLiraStdFloor);
    fits[i].sigma_out = std::max(std::sqrt(vo), kLiraStdFloor);
  }
  return fits;
}

double GaussianLogPdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return -0.5 * z * z - std::log(sigma) -
         0.5 * std::log(2.0 * std::numbers::pi);
}

absl::StatusOr<std::vector<AttackScore>> Attack(
    std::span<const double> target_scores, std::span<const LiraFit> fits,
    std::span<const int> is_member) {
  if (fits.size() < target_scores.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("no fit for example ", fits.size()));
  }
  if (is_member.size() != target_scores.size()) {
    return absl::InvalidArgumentError(
        "one membership label per target score required");
  }
  std::vector<AttackScore> out;
  out.reserve(target_scores.size());
  for (std::size_t i = 0; i < target_scores.size(); ++i) {
    const LiraFit& f = fits[i];
    const double x = target_scores[i];
    out.push_back({i,
                   GaussianLogPdf(x, f.mu_in, f.sigma_in) -
                       GaussianLogPdf(x, f.mu_out, f.sigma_out),
                   is_member[i] != 0});
  }
  return out;
}

}  // namespace decaph
