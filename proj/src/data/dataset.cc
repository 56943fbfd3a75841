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

#include "decaph/data/dataset.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace decaph {

std::string TaskName(const Task& task) {
  switch (task.kind) {
    case TaskKind::kBinary:
      return "binary";
    case TaskKind::kMulticlass:
      return "multiclass";
    case TaskKind::kMultilabel:
      return "multilabel";
  }
  return "unknown";
}

absl::StatusOr<Task> ParseTask(const std::string& name, int num_classes) {
  if (name == "binary") return Task::Binary();
  if (num_classes < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("task '", name, "' needs num_classes >= 2"));
  }
  if (name == "multiclass") return Task::Multiclass(num_classes);
  if (name == "multilabel") return Task::Multilabel(num_classes);
  return absl::InvalidArgumentError(absl::StrCat("unknown task '", name, "'"));
}

int DatasetShard::ClassOf(Eigen::Index row) const {
  if (task.kind != TaskKind::kMultilabel) return labels(row, 0);
  for (Eigen::Index c = 0; c < labels.cols(); ++c) {
    if (labels(row, c) != 0) return static_cast<int>(c);
  }
  return task.num_classes;
}

absl::Status DatasetShard::Validate() const {
  if (features.rows() != labels.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("participant ", participant_id, ": ", features.rows(),
                     " feature rows but ", labels.rows(), " labels"));
  }
  if (labels.cols() != task.label_columns()) {
    return absl::InvalidArgumentError(
        absl::StrCat("participant ", participant_id, ": label width ",
                     labels.cols(), " does not match task ", TaskName(task)));
  }
  if (!features.allFinite()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "participant ", participant_id, ": non-finite feature value"));
  }
  for (Eigen::Index i = 0; i < labels.rows(); ++i) {
    for (Eigen::Index c = 0; c < labels.cols(); ++c) {
      const int v = labels(i, c);
      const int upper =
          task.kind == TaskKind::kMultilabel ? 1 : task.num_classes - 1;
      if (v < 0 || v > upper) {
        return absl::InvalidArgumentError(
            absl::StrCat("participant ", participant_id, ": label ", v,
                         " at row ", i, " out of range"));
      }
    }
  }
  return absl::OkStatus();
}

DatasetShard DatasetShard::Subset(std::span<const Eigen::Index> rows) const {
  DatasetShard out;
  out.participant_id = participant_id;
  out.task = task;
  out.normalized = normalized;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.resize(static_cast<Eigen::Index>(rows.size()), labels.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    out.features.row(r) = features.row(rows[k]);
    out.labels.row(r) = labels.row(rows[k]);
  }
  return out;
}

absl::StatusOr<DatasetShard> Pool(std::span<const DatasetShard> shards) {
  if (shards.empty()) return absl::InvalidArgumentError("nothing to pool");
  Eigen::Index rows = 0;
  for (const DatasetShard& s : shards) {
    if (s.task != shards.front().task ||
        s.features.cols() != shards.front().features.cols()) {
      return absl::InvalidArgumentError("shards disagree on task or width");
    }
    rows += s.features.rows();
  }
  DatasetShard out;
  out.participant_id = shards.front().participant_id;
  out.task = shards.front().task;
  out.normalized = shards.front().normalized;
  out.features.resize(rows, shards.front().features.cols());
  out.labels.resize(rows, shards.front().labels.cols());
  Eigen::Index at = 0;
  for (const DatasetShard& s : shards) {
    out.features.middleRows(at, s.features.rows()) = s.features;
    out.labels.middleRows(at, s.labels.rows()) = s.labels;
    at += s.features.rows();
  }
  return out;
}

}  // namespace decaph
