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

#include "decaph/dp/mechanism.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "decaph/util/status_macros.h"

namespace decaph {

absl::StatusOr<GradientMatrix> Clip(const GradientMatrix& grads,
                                    double clip_norm) {
  if (!(clip_norm > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip norm must be > 0, got ", clip_norm));
  }
  GradientMatrix out = grads;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    const double factor = std::max(norm / clip_norm, 1.0);
    if (factor > 1.0) out.row(i) /= factor;
  }
  return out;
}

absl::StatusOr<Eigen::VectorXd> LocalNoiseAndSum(const GradientMatrix& clipped,
                                                 std::int64_t local_batch,
                                                 std::int64_t aggregate_batch,
                                                 double clip_norm,
                                                 double noise_multiplier,
                                                 Prng& prng) {
  if (local_batch < 0 || local_batch > aggregate_batch) {
    return absl::InvalidArgumentError(
        absl::StrCat("local batch ", local_batch,
                     " must lie in [0, aggregate batch ", aggregate_batch, "]"));
  }
  if (clipped.rows() != local_batch) {
    return absl::InvalidArgumentError(
        absl::StrCat("local batch ", local_batch, " but ", clipped.rows(),
                     " gradient rows"));
  }
  if (!(noise_multiplier >= 0.0) || !std::isfinite(noise_multiplier)) {
    return absl::InvalidArgumentError("noise multiplier must be finite, >= 0");
  }
  const Eigen::Index dim = clipped.cols();
  Eigen::VectorXd sum = clipped.colwise().sum().transpose();
  if (aggregate_batch == 0 || noise_multiplier == 0.0 || local_batch == 0) {
    return sum;
  }
  const double fraction =
      static_cast<double>(local_batch) / static_cast<double>(aggregate_batch);
  const double std = std::sqrt(fraction) * clip_norm * noise_multiplier;
  ASSIGN_OR_RETURN(std::vector<double> noise,
                   Gaussian(prng, 0.0, std, static_cast<std::size_t>(dim)));
  sum += Eigen::Map<const Eigen::VectorXd>(noise.data(), dim);
  return sum;
}

absl::StatusOr<std::vector<std::size_t>> PoissonSample(std::size_t n, double p,
                                                       Prng& prng) {
  if (!(p > 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sampling rate must lie in (0, 1], got ", p));
  }
  std::vector<std::size_t> picked;
  picked.reserve(static_cast<std::size_t>(p * n * 1.2) + 8);
  for (std::size_t i = 0; i < n; ++i) {
    if (prng.NextBernoulli(p)) picked.push_back(i);
  }
  return picked;
}

}  // namespace decaph
