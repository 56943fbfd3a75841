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

#include "decaph/data/normalize.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "decaph/util/logging.h"
#include "decaph/util/status_macros.h"

namespace decaph {

absl::StatusOr<NormalizationStats> ComputeGlobalStats(
    std::span<const DatasetShard> shards, SecureAggregator& aggregator) {
  if (shards.empty()) {
    return absl::InvalidArgumentError("no shards to normalize");
  }
  const Eigen::Index d = shards.front().features.cols();
  std::vector<ParticipantId> ids;
  for (const DatasetShard& shard : shards) {
    if (shard.features.cols() != d) {
      return absl::InvalidArgumentError(
          absl::StrCat("participant ", shard.participant_id, " has ",
                       shard.features.cols(), " features, expected ", d));
    }
    ids.push_back(shard.participant_id);
  }

  std::vector<std::vector<double>> sums;
  for (const DatasetShard& shard : shards) {
    std::vector<double> v(static_cast<std::size_t>(d) + 1);
    Eigen::Map<Eigen::RowVectorXd>(v.data(), d) =
        shard.features.colwise().sum();
    v.back() = static_cast<double>(shard.features.rows());
    sums.push_back(std::move(v));
  }
  ASSIGN_OR_RETURN(std::vector<double> total,
                   aggregator.SumVectors(ids, sums));
  const double count = std::round(total.back());
  if (count <= 0) {
    return absl::InvalidArgumentError("no examples across participants");
  }

  NormalizationStats stats;
  stats.count = static_cast<std::size_t>(count);
  stats.mean = Eigen::Map<Eigen::RowVectorXd>(total.data(), d) / count;

  std::vector<std::vector<double>> squares;
  for (const DatasetShard& shard : shards) {
    std::vector<double> v(static_cast<std::size_t>(d));
    Eigen::Map<Eigen::RowVectorXd>(v.data(), d) =
        (shard.features.rowwise() - stats.mean).array().square().colwise().sum();
    squares.push_back(std::move(v));
  }
  ASSIGN_OR_RETURN(std::vector<double> sq_total,
                   aggregator.SumVectors(ids, squares));

  stats.std.resize(d);
  // Anything at or below the fixed-point resolution is indistinguishable
  // from zero once it has passed through the aggregator.
  const double tiny = aggregator.codec().resolution() * shards.size();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double ss = std::max(sq_total[static_cast<std::size_t>(j)], 0.0);
    if (ss <= tiny) {
      LogWarning(absl::StrCat("feature ", j,
                              " has zero variance; centering only"));
      stats.std(j) = 1.0;
    } else {
      stats.std(j) = std::sqrt(ss / count);
    }
  }
  return stats;
}

absl::StatusOr<DatasetShard> ApplyNormalization(
    const DatasetShard& shard, const NormalizationStats& stats) {
  if (shard.features.cols() != stats.mean.size()) {
    return absl::InvalidArgumentError("feature width mismatch");
  }
  DatasetShard out = shard;
  out.features =
      ((shard.features.rowwise() - stats.mean).array().rowwise() /
       stats.std.array())
          .matrix();
  out.normalized = true;
  return out;
}

absl::StatusOr<std::vector<DatasetShard>> GlobalNormalize(
    std::span<const DatasetShard> shards, SecureAggregator& aggregator) {
  for (const DatasetShard& shard : shards) {
    if (shard.normalized) {
      return absl::FailedPreconditionError(absl::StrCat(
          "participant ", shard.participant_id, " is already normalized"));
    }
  }
  ASSIGN_OR_RETURN(NormalizationStats stats,
                   ComputeGlobalStats(shards, aggregator));
  std::vector<DatasetShard> out;
  out.reserve(shards.size());
  for (const DatasetShard& shard : shards) {
    ASSIGN_OR_RETURN(DatasetShard normalized,
                     ApplyNormalization(shard, stats));
    out.push_back(std::move(normalized));
  }
  return out;
}

}  // namespace decaph
