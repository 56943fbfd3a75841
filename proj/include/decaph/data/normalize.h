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

#ifndef DECAPH_DATA_NORMALIZE_H_
#define DECAPH_DATA_NORMALIZE_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "decaph/data/dataset.h"
#include "decaph/secagg/aggregator.h"

namespace decaph {

struct NormalizationStats {
  Eigen::RowVectorXd mean;
  // Population standard deviation; 1 for zero-variance features.
  Eigen::RowVectorXd std;
  std::size_t count = 0;
};

// Per-feature mean and standard deviation over the union of all shards.
// Only per-participant sums pass through `aggregator`: one session for
// [sum x, n], a second for sum (x - mean)^2. The statistics are not noised.
absl::StatusOr<NormalizationStats> ComputeGlobalStats(
    std::span<const DatasetShard> shards, SecureAggregator& aggregator);

// (x - mean) / std. Marks the result normalized.
absl::StatusOr<DatasetShard> ApplyNormalization(
    const DatasetShard& shard, const NormalizationStats& stats);

// ComputeGlobalStats followed by ApplyNormalization on every shard. Shards
// must not already be normalized. Zero-variance features are only centered,
// with a warning.
absl::StatusOr<std::vector<DatasetShard>> GlobalNormalize(
    std::span<const DatasetShard> shards, SecureAggregator& aggregator);

}  // namespace decaph

#endif  // DECAPH_DATA_NORMALIZE_H_
