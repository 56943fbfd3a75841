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

#ifndef DECAPH_DP_MECHANISM_H_
#define DECAPH_DP_MECHANISM_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "decaph/models/model.h"
#include "decaph/numerics/prng.h"

namespace decaph {

// Row i becomes g_i / max(||g_i|| / clip_norm, 1). clip_norm may be +inf
// (no clipping) but must be positive.
absl::StatusOr<GradientMatrix> Clip(const GradientMatrix& grads,
                                    double clip_norm);

// Sum of the (already clipped) rows plus N(0, (local/aggregate)(C sigma)^2)
// per coordinate. With the participant shares added together the noise
// variance is exactly (C sigma)^2, the single-draw centralized amount.
//
// `clipped` may have zero rows (empty local batch); the result then holds
// only noise, whose variance is zero by the formula above. An aggregate
// batch of zero yields the zero vector.
absl::StatusOr<Eigen::VectorXd> LocalNoiseAndSum(const GradientMatrix& clipped,
                                                 std::int64_t local_batch,
                                                 std::int64_t aggregate_batch,
                                                 double clip_norm,
                                                 double noise_multiplier,
                                                 Prng& prng);

// Independent Bernoulli(p) inclusion of each index in [0, n). May be empty.
absl::StatusOr<std::vector<std::size_t>> PoissonSample(std::size_t n, double p,
                                                       Prng& prng);

}  // namespace decaph

#endif  // DECAPH_DP_MECHANISM_H_
