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

#ifndef DECAPH_DP_RDP_H_
#define DECAPH_DP_RDP_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace decaph {

// {1.25, 1.5, 1.75, 2, 2.5, 3, 3.5, 4, 5, ..., 64}.
std::vector<double> DefaultAlphaGrid();

// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
double LogAddExp(double a, double b);

// log(erfc(x)), accurate far into the tail where erfc underflows.
double LogErfc(double x);

// Renyi divergence of order `alpha` for one step of the Poisson-subsampled
// Gaussian mechanism with sampling rate `p` and noise multiplier `sigma`
// (sensitivity 1). Integer orders use the exact binomial expansion,
// fractional orders the convergent two-sided series. p == 1 gives
// alpha / (2 sigma^2); sigma == 0 gives +inf (the step is not private).
absl::StatusOr<double> SubsampledGaussianRdp(double p, double sigma,
                                             double alpha);

// SubsampledGaussianRdp for every order in `alphas`.
absl::StatusOr<std::vector<double>> RdpStep(double p, double sigma,
                                            std::span<const double> alphas);

struct DpGuarantee {
  double epsilon;
  double alpha;  // minimizing order
  double delta;
};

// min over alpha of rdp(alpha) + ln(1/delta) / (alpha - 1).
absl::StatusOr<DpGuarantee> RdpToDp(std::span<const double> alphas,
                                    std::span<const double> rdp, double delta);

}  // namespace decaph

#endif  // DECAPH_DP_RDP_H_
