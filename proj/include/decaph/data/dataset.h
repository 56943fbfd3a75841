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

#ifndef DECAPH_DATA_DATASET_H_
#define DECAPH_DATA_DATASET_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "decaph/secagg/session.h"

namespace decaph {

enum class TaskKind { kBinary, kMulticlass, kMultilabel };

struct Task {
  TaskKind kind = TaskKind::kBinary;
  // 2 for binary; number of classes for multiclass; number of label bits for
  // multilabel.
  int num_classes = 2;

  static Task Binary() { return {TaskKind::kBinary, 2}; }
  static Task Multiclass(int k) { return {TaskKind::kMulticlass, k}; }
  static Task Multilabel(int k) { return {TaskKind::kMultilabel, k}; }

  // Width of the label matrix: 1 column of class ids, or k multi-hot bits.
  int label_columns() const {
    return kind == TaskKind::kMultilabel ? num_classes : 1;
  }

  friend bool operator==(const Task&, const Task&) = default;
};

std::string TaskName(const Task& task);
absl::StatusOr<Task> ParseTask(const std::string& name, int num_classes);

// One participant's private examples.
struct DatasetShard {
  ParticipantId participant_id = 0;
  Task task;
  Eigen::MatrixXd features;  // rows = examples
  Eigen::MatrixXi labels;    // rows = examples, task.label_columns() columns
  // True once features were standardized with statistics computed over all
  // participants' data.
  bool normalized = false;

  std::size_t num_examples() const {
    return static_cast<std::size_t>(features.rows());
  }
  std::size_t num_features() const {
    return static_cast<std::size_t>(features.cols());
  }

  // Class id of row i; for multilabel rows, the lowest set bit (or k when no
  // bit is set). Used for stratification and class replication.
  int ClassOf(Eigen::Index row) const;

  // Rows must match labels; no NaN/inf; labels within the task's range.
  absl::Status Validate() const;

  DatasetShard Subset(std::span<const Eigen::Index> rows) const;
};

// Concatenates shards (same task and width) into one.
absl::StatusOr<DatasetShard> Pool(std::span<const DatasetShard> shards);

}  // namespace decaph

#endif  // DECAPH_DATA_DATASET_H_
