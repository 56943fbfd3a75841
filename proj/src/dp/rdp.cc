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

#include "decaph/dp/rdp.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace decaph {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(exp(a) - exp(b)) for a >= b.
double LogSubExp(double a, double b) {
  if (b == -kInf) return a;
  if (a == b) return -kInf;
  return a + std::log1p(-std::exp(b - a));
}

double LogBinomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log E_{z~mu0}[(mu(z)/mu0(z))^alpha] for integer alpha.
double LogAInteger(double q, double sigma, int alpha) {
  double log_a = -kInf;
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  for (int i = 0; i <= alpha; ++i) {
    const double term = LogBinomial(alpha, i) + i * log_q +
                        (alpha - i) * log_1mq +
                        (static_cast<double>(i) * i - i) / (2.0 * sigma * sigma);
    log_a = LogAddExp(log_a, term);
  }
  return log_a;
}

// Same quantity for fractional alpha: the integral is split at the point z0
// where the two mixture components cross and each half expanded as a
// (generalized) binomial series.
double LogAFractional(double q, double sigma, double alpha) {
  double log_a0 = -kInf;
  double log_a1 = -kInf;
  const double z0 = sigma * sigma * std::log(1.0 / q - 1.0) + 0.5;
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  double log_abs_coef = 0.0;  // log|binom(alpha, i)|
  bool coef_positive = true;
  for (int i = 0; i < 100000; ++i) {
    if (i > 0) {
      const double ratio = (alpha - (i - 1)) / static_cast<double>(i);
      if (ratio == 0.0) break;
      log_abs_coef += std::log(std::abs(ratio));
      if (ratio < 0) coef_positive = !coef_positive;
    }
    const double j = alpha - i;
    const double log_t0 = log_abs_coef + i * log_q + j * log_1mq;
    const double log_t1 = log_abs_coef + j * log_q + i * log_1mq;
    const double log_e0 =
        std::log(0.5) + LogErfc((i - z0) / (std::numbers::sqrt2 * sigma));
    const double log_e1 =
        std::log(0.5) + LogErfc((z0 - j) / (std::numbers::sqrt2 * sigma));
    const double log_s0 =
        log_t0 + (static_cast<double>(i) * i - i) / (2 * sigma * sigma) + log_e0;
    const double log_s1 = log_t1 + (j * j - j) / (2 * sigma * sigma) + log_e1;
    if (coef_positive) {
      log_a0 = LogAddExp(log_a0, log_s0);
      log_a1 = LogAddExp(log_a1, log_s1);
    } else {
      log_a0 = LogSubExp(log_a0, log_s0);
      log_a1 = LogSubExp(log_a1, log_s1);
    }
    if (std::max(log_s0, log_s1) < -30.0) break;
  }
  return LogAddExp(log_a0, log_a1);
}

}  // namespace

std::vector<double> DefaultAlphaGrid() {
  std::vector<double> grid = {1.25, 1.5, 1.75, 2.0, 2.5, 3.0, 3.5};
  for (int a = 4; a <= 64; ++a) grid.push_back(a);
  return grid;
}

double LogAddExp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double LogErfc(double x) {
  if (x < 20.0) return std::log(std::erfc(x));
  // Asymptotic expansion of erfc(x) * x * sqrt(pi) * exp(x^2).
  const double inv2 = 1.0 / (x * x);
  double series = 1.0;
  double term = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -(2.0 * k - 1.0) * inv2 / 2.0;
    series += term;
  }
  return -x * x - std::log(x) - 0.5 * std::log(std::numbers::pi) +
         std::log(series);
}

absl::StatusOr<double> SubsampledGaussianRdp(double p, double sigma,
                                             double alpha) {
  if (!(p > 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sampling rate must lie in (0, 1], got ", p));
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError("noise multiplier must be finite, >= 0");
  }
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    return absl::InvalidArgumentError(
        absl::StrCat("RDP order must be > 1, got ", alpha));
  }
  if (sigma == 0.0) return kInf;
  if (p == 1.0) return alpha / (2.0 * sigma * sigma);
  const double log_a = alpha == std::floor(alpha) && alpha < 1e6
                           ? LogAInteger(p, sigma, static_cast<int>(alpha))
                           : LogAFractional(p, sigma, alpha);
  return std::max(log_a, 0.0) / (alpha - 1.0);
}

absl::StatusOr<std::vector<double>> RdpStep(double p, double sigma,
                                            std::span<const double> alphas) {
  if (alphas.empty()) {
    return absl::InvalidArgumentError("RDP order grid is empty");
  }
  std::vector<double> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    absl::StatusOr<double> r = SubsampledGaussianRdp(p, sigma, alpha);
    if (!r.ok()) return r.status();
    out.push_back(*r);
  }
  return out;
}

absl::StatusOr<DpGuarantee> RdpToDp(std::span<const double> alphas,
                                    std::span<const double> rdp, double delta) {
  if (alphas.empty() || alphas.size() != rdp.size()) {
    return absl::InvalidArgumentError(
        "RDP table must be non-empty with one value per order");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  DpGuarantee best{kInf, alphas[0], delta};
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 1.0)) {
      return absl::InvalidArgumentError("RDP orders must be > 1");
    }
    const double eps = rdp[i] + std::log(1.0 / delta) / (alphas[i] - 1.0);
    if (eps < best.epsilon) {
      best.epsilon = eps;
      best.alpha = alphas[i];
    }
  }
  return best;
}

}  // namespace decaph
