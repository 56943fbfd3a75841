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

#include "decaph/data/transforms.h"

#include <map>

#include "absl/strings/str_cat.h"
#include "decaph/numerics/prng.h"
#include "decaph/util/logging.h"
#include "decaph/util/status_macros.h"

namespace decaph {

absl::StatusOr<DatasetShard> ReplicateMinority(const DatasetShard& shard,
                                               int class_id, int factor,
                                               std::uint64_t seed) {
  if (factor < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("replication factor must be >= 1, got ", factor));
  }
  std::vector<Eigen::Index> rows;
  bool present = false;
  for (Eigen::Index i = 0; i < shard.features.rows(); ++i) {
    const bool member = shard.task.kind == TaskKind::kMultilabel
                            ? (class_id >= 0 &&
                               class_id < shard.labels.cols() &&
                               shard.labels(i, class_id) != 0)
                            : shard.labels(i, 0) == class_id;
    present = present || member;
    const int copies = member ? factor : 1;
    for (int c = 0; c < copies; ++c) rows.push_back(i);
  }
  if (!present) {
    LogWarning(absl::StrCat("participant ", shard.participant_id,
                            " has no rows of class ", class_id,
                            "; nothing replicated"));
    return shard;
  }
  Prng prng(seed,
            MakeStreamId(StreamDomain::kShuffle, {shard.participant_id}));
  prng.Shuffle(std::span<Eigen::Index>(rows));
  return shard.Subset(rows);
}

absl::StatusOr<std::vector<int>> FoldAssignment(const DatasetShard& shard,
                                                int k, std::uint64_t seed) {
  if (k < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("k-fold needs k >= 2, got ", k));
  }
  const Eigen::Index n = shard.features.rows();
  if (n < k) {
    return absl::InvalidArgumentError(
        absl::StrCat("participant ", shard.participant_id, " has ", n,
                     " rows, fewer than k=", k));
  }
  std::map<int, std::vector<Eigen::Index>> by_class;
  for (Eigen::Index i = 0; i < n; ++i) by_class[shard.ClassOf(i)].push_back(i);

  Prng prng(seed, MakeStreamId(StreamDomain::kSplit, {shard.participant_id}));
  std::vector<int> fold_of(static_cast<std::size_t>(n), -1);
  std::size_t position = 0;
  for (auto& [label, rows] : by_class) {
    prng.Shuffle(std::span<Eigen::Index>(rows));
    for (Eigen::Index row : rows) {
      fold_of[static_cast<std::size_t>(row)] = static_cast<int>(position % k);
      ++position;
    }
  }
  return fold_of;
}

absl::StatusOr<FoldSplit> KFold(std::span<const DatasetShard> shards, int k,
                                int fold, std::uint64_t seed) {
  if (fold < 0 || fold >= k) {
    return absl::InvalidArgumentError(
        absl::StrCat("fold ", fold, " outside [0, ", k, ")"));
  }
  FoldSplit split;
  for (const DatasetShard& shard : shards) {
    ASSIGN_OR_RETURN(std::vector<int> fold_of, FoldAssignment(shard, k, seed));
    std::vector<Eigen::Index> train_rows;
    std::vector<Eigen::Index> test_rows;
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
      (fold_of[i] == fold ? test_rows : train_rows)
          .push_back(static_cast<Eigen::Index>(i));
    }
    split.train.push_back(shard.Subset(train_rows));
    split.test.push_back(shard.Subset(test_rows));
  }
  return split;
}

}  // namespace decaph
