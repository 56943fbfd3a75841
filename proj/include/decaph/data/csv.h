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

#ifndef DECAPH_DATA_CSV_H_
#define DECAPH_DATA_CSV_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "decaph/data/dataset.h"

namespace decaph {

// Shard CSV layout: optional leading "#" comment lines, a header row, then
// one row per example. The label lives in a column named "label" (binary /
// multiclass) or in columns "label_0" .. "label_{k-1}" (multilabel); every
// other column is a numeric feature, in file order. Empty cells and
// non-numeric values are rejected.
absl::StatusOr<DatasetShard> LoadShardCsv(const std::string& path,
                                          ParticipantId participant_id,
                                          const Task& task);

// `comment`, if non-empty, is written first as a "# ..." line.
absl::Status WriteShardCsv(const std::string& path, const DatasetShard& shard,
                           const std::string& comment = "");

}  // namespace decaph

#endif  // DECAPH_DATA_CSV_H_
