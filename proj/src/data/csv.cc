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

#include "decaph/data/csv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace decaph {
namespace {

std::vector<std::string> SplitRow(const std::string& line) {
  std::vector<std::string> cells = absl::StrSplit(line, ',');
  for (std::string& cell : cells) {
    cell = std::string(absl::StripAsciiWhitespace(cell));
  }
  return cells;
}

}  // namespace

absl::StatusOr<DatasetShard> LoadShardCsv(const std::string& path,
                                          ParticipantId participant_id,
                                          const Task& task) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));

  // Leading '#' lines (provenance comments) precede the header.
  std::string line;
  int line_no = 0;
  do {
    if (!std::getline(in, line)) {
      return absl::InvalidArgumentError(absl::StrCat(path, ": empty file"));
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  } while (!line.empty() && line.front() == '#');
  const std::vector<std::string> header = SplitRow(line);

  std::map<std::string, std::size_t> column_of;
  for (std::size_t c = 0; c < header.size(); ++c) column_of[header[c]] = c;

  std::vector<std::size_t> label_cols;
  if (task.kind == TaskKind::kMultilabel) {
    for (int c = 0; c < task.num_classes; ++c) {
      auto it = column_of.find(absl::StrCat("label_", c));
      if (it == column_of.end()) {
        return absl::InvalidArgumentError(
            absl::StrCat(path, ": missing label column label_", c));
      }
      label_cols.push_back(it->second);
    }
  } else {
    auto it = column_of.find("label");
    if (it == column_of.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ": missing label column 'label'"));
    }
    label_cols.push_back(it->second);
  }
  std::vector<bool> is_label(header.size(), false);
  for (std::size_t c : label_cols) is_label[c] = true;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!is_label[c]) feature_cols.push_back(c);
  }

  std::vector<std::vector<double>> feature_rows;
  std::vector<std::vector<int>> label_rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitRow(line);
    if (cells.size() != header.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ":", line_no, ": expected ", header.size(),
                       " cells, got ", cells.size()));
    }
    std::vector<double> features;
    features.reserve(feature_cols.size());
    for (std::size_t c : feature_cols) {
      double v;
      if (cells[c].empty() || !absl::SimpleAtod(cells[c], &v) ||
          !std::isfinite(v)) {
        return absl::InvalidArgumentError(
            absl::StrCat(path, ":", line_no, ": bad value '", cells[c],
                         "' in column ", header[c]));
      }
      features.push_back(v);
    }
    std::vector<int> labels;
    for (std::size_t c : label_cols) {
      int v;
      if (!absl::SimpleAtoi(cells[c], &v)) {
        return absl::InvalidArgumentError(
            absl::StrCat(path, ":", line_no, ": bad label '", cells[c], "'"));
      }
      labels.push_back(v);
    }
    feature_rows.push_back(std::move(features));
    label_rows.push_back(std::move(labels));
  }

  DatasetShard shard;
  shard.participant_id = participant_id;
  shard.task = task;
  const auto n = static_cast<Eigen::Index>(feature_rows.size());
  shard.features.resize(n, static_cast<Eigen::Index>(feature_cols.size()));
  shard.labels.resize(n, static_cast<Eigen::Index>(label_cols.size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < shard.features.cols(); ++j) {
      shard.features(i, j) = feature_rows[i][j];
    }
    for (Eigen::Index j = 0; j < shard.labels.cols(); ++j) {
      shard.labels(i, j) = label_rows[i][j];
    }
  }
  if (absl::Status s = shard.Validate(); !s.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": ", s.message()));
  }
  return shard;
}

absl::Status WriteShardCsv(const std::string& path, const DatasetShard& shard,
                           const std::string& comment) {
  std::ofstream out(path);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  if (!comment.empty()) out << "# " << comment << '\n';
  for (Eigen::Index j = 0; j < shard.features.cols(); ++j) {
    out << 'x' << j << ',';
  }
  if (shard.task.kind == TaskKind::kMultilabel) {
    for (Eigen::Index c = 0; c < shard.labels.cols(); ++c) {
      out << "label_" << c << (c + 1 < shard.labels.cols() ? "," : "");
    }
  } else {
    out << "label";
  }
  out << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < shard.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < shard.features.cols(); ++j) {
      // Shortest round-trippable representation.
      auto res = std::to_chars(buf, buf + sizeof(buf), shard.features(i, j));
      out.write(buf, res.ptr - buf);
      out << ',';
    }
    for (Eigen::Index c = 0; c < shard.labels.cols(); ++c) {
      out << shard.labels(i, c) << (c + 1 < shard.labels.cols() ? "," : "");
    }
    out << '\n';
  }
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace decaph
