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

#ifndef DECAPH_DATA_TRANSFORMS_H_
#define DECAPH_DATA_TRANSFORMS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "decaph/data/dataset.h"

namespace decaph {

// Every row of `class_id` ends up `factor` times in the result (so factor=3
// triples the class); row order is then shuffled with a stream derived from
// `seed`. If the class is absent the shard is returned unchanged and a
// warning is logged. Run this before the sampling rate is fixed so the
// accountant sees the inflated dataset size.
absl::StatusOr<DatasetShard> ReplicateMinority(const DatasetShard& shard,
                                               int class_id, int factor,
                                               std::uint64_t seed);

struct FoldSplit {
  std::vector<DatasetShard> train;
  std::vector<DatasetShard> test;
};

// Stratified k-fold split applied independently to each participant. Rows
// are grouped by class, shuffled within each class, concatenated and dealt
// round-robin into k folds; fold `fold` is the test set. The assignment does
// not depend on `fold`, so the k test sets partition each shard.
absl::StatusOr<FoldSplit> KFold(std::span<const DatasetShard> shards, int k,
                                int fold, std::uint64_t seed);

// Fold index (0..k-1) of every row of `shard`; exposed for tests.
absl::StatusOr<std::vector<int>> FoldAssignment(const DatasetShard& shard,
                                                int k, std::uint64_t seed);

}  // namespace decaph

#endif  // DECAPH_DATA_TRANSFORMS_H_
