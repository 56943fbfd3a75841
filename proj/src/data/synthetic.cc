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

#include "decaph/data/synthetic.h"

#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "decaph/numerics/prng.h"
#include "decaph/util/status_macros.h"

namespace decaph {
namespace {

int DrawClass(Prng& prng, const std::vector<double>& proportions) {
  const double u = prng.NextDouble();
  double cumulative = 0.0;
  for (std::size_t c = 0; c < proportions.size(); ++c) {
    cumulative += proportions[c];
    if (u < cumulative) return static_cast<int>(c);
  }
  return static_cast<int>(proportions.size()) - 1;
}

}  // namespace

absl::Status SyntheticSpec::Validate() const {
  if (n_participants == 0) {
    return absl::InvalidArgumentError("n_participants must be positive");
  }
  if (sizes.size() != n_participants) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", n_participants, " sizes, got ",
                     sizes.size()));
  }
  for (std::size_t s : sizes) {
    if (s == 0) return absl::InvalidArgumentError("every size must be >= 1");
  }
  if (n_features == 0) {
    return absl::InvalidArgumentError("n_features must be positive");
  }
  if (class_balance.size() != n_participants) {
    return absl::InvalidArgumentError(
        "class_balance needs one proportion vector per participant");
  }
  for (const auto& props : class_balance) {
    if (props.size() != static_cast<std::size_t>(task.num_classes)) {
      return absl::InvalidArgumentError(
          absl::StrCat("class proportions must have ", task.num_classes,
                       " entries"));
    }
    double total = 0.0;
    for (double p : props) {
      if (p < 0.0) {
        return absl::InvalidArgumentError("negative class proportion");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      return absl::InvalidArgumentError(
          absl::StrCat("class proportions sum to ", total, ", not 1"));
    }
  }
  if (heterogeneity < 0.0 || heterogeneity > 1.0) {
    return absl::InvalidArgumentError("heterogeneity must lie in [0, 1]");
  }
  if (label_noise < 0.0 || label_noise > 1.0) {
    return absl::InvalidArgumentError("label_noise must lie in [0, 1]");
  }
  if (task.num_classes < 2) {
    return absl::InvalidArgumentError("task needs at least two classes");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<DatasetShard>> Generate(const SyntheticSpec& spec) {
  RETURN_IF_ERROR(spec.Validate());
  const auto d = static_cast<Eigen::Index>(spec.n_features);
  const int k = spec.task.num_classes;

  Prng mean_prng(spec.seed, MakeStreamId(StreamDomain::kData, {0}));
  const double mean_scale =
      spec.class_separation / std::sqrt(static_cast<double>(d));
  Eigen::MatrixXd class_means(k, d);
  for (int c = 0; c < k; ++c) {
    for (Eigen::Index j = 0; j < d; ++j) {
      class_means(c, j) = mean_scale * mean_prng.NextGaussian();
    }
  }

  std::vector<DatasetShard> shards;
  shards.reserve(spec.n_participants);
  for (std::size_t h = 0; h < spec.n_participants; ++h) {
    Prng shift_prng(spec.seed, MakeStreamId(StreamDomain::kData, {1, h}));
    Eigen::RowVectorXd shift(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      shift(j) = spec.heterogeneity * shift_prng.NextGaussian();
    }

    Prng row_prng(spec.seed, MakeStreamId(StreamDomain::kData, {2, h}));
    const auto n = static_cast<Eigen::Index>(spec.sizes[h]);
    DatasetShard shard;
    shard.participant_id = static_cast<ParticipantId>(h);
    shard.task = spec.task;
    shard.features.resize(n, d);
    shard.labels = Eigen::MatrixXi::Zero(n, spec.task.label_columns());
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = DrawClass(row_prng, spec.class_balance[h]);
      Eigen::RowVectorXd x = class_means.row(c) + shift;
      if (spec.task.kind == TaskKind::kMultilabel) {
        shard.labels(i, c) = 1;
        for (int other = 0; other < k; ++other) {
          if (other != c && row_prng.NextBernoulli(0.1)) {
            shard.labels(i, other) = 1;
            x += 0.5 * class_means.row(other);
          }
        }
      } else {
        int label = c;
        if (spec.label_noise > 0.0 && row_prng.NextBernoulli(spec.label_noise)) {
          label = static_cast<int>(row_prng.NextBelow(k));
        }
        shard.labels(i, 0) = label;
      }
      for (Eigen::Index j = 0; j < d; ++j) x(j) += row_prng.NextGaussian();
      shard.features.row(i) = x;
    }
    shards.push_back(std::move(shard));
  }
  return shards;
}

}  // namespace decaph
