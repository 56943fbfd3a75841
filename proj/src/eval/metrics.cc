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

#include "decaph/eval/metrics.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "decaph/util/logging.h"

namespace decaph {

MaybeMetric Ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

MaybeMetric F1(const ConfusionCounts& c) {
  return Ratio(2 * c.tp, 2 * c.tp + c.fn + c.fp);
}

absl::StatusOr<BinaryReport> BinaryMetrics(std::span<const double> scores,
                                           std::span<const int> labels,
                                           double threshold) {
  if (!std::isfinite(threshold)) {
    return absl::InvalidArgumentError("threshold must be finite");
  }
  if (scores.size() != labels.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat(scores.size(), " scores but ", labels.size(), " labels"));
  }
  BinaryReport r;
  ConfusionCounts& c = r.positive;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      return absl::InvalidArgumentError("binary labels must be 0 or 1");
    }
    const bool predicted = scores[i] >= threshold;
    if (labels[i] == 1) {
      (predicted ? c.tp : c.fn) += 1;
    } else {
      (predicted ? c.fp : c.tn) += 1;
    }
  }
  const ConfusionCounts negative{c.tn, c.fn, c.tp, c.fp};
  r.ppv = Ratio(c.tp, c.tp + c.fp);
  r.npv = Ratio(c.tn, c.tn + c.fn);
  r.f1_positive = F1(c);
  r.f1_negative = F1(negative);
  if (r.f1_positive && r.f1_negative) {
    r.macro_f1 = (*r.f1_positive + *r.f1_negative) / 2.0;
  }
  const std::int64_t n = c.support() + negative.support();
  if (n > 0) {
    double weighted = 0.0;
    if (c.support() > 0) weighted += c.support() * *r.f1_positive;
    if (negative.support() > 0) weighted += negative.support() * *r.f1_negative;
    r.weighted_f1 = weighted / static_cast<double>(n);
  }
  return r;
}

MaybeMetric Median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

absl::StatusOr<MulticlassReport> MulticlassMetrics(
    std::span<const int> predictions, std::span<const int> labels,
    int num_classes) {
  if (num_classes < 2) {
    return absl::InvalidArgumentError("need at least 2 classes");
  }
  if (predictions.size() != labels.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat(predictions.size(), " predictions but ", labels.size(),
                     " labels"));
  }
  MulticlassReport r;
  r.per_class.resize(num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int y = labels[i];
    const int yhat = predictions[i];
    if (y < 0 || y >= num_classes || yhat < 0 || yhat >= num_classes) {
      return absl::InvalidArgumentError(
          absl::StrCat("class id out of range at example ", i));
    }
    for (int c = 0; c < num_classes; ++c) {
      ConfusionCounts& cc = r.per_class[c];
      if (y == c) {
        (yhat == c ? cc.tp : cc.fn) += 1;
      } else {
        (yhat == c ? cc.fp : cc.tn) += 1;
      }
    }
  }
  std::vector<double> defined_f1;
  std::int64_t total = 0;
  double wp = 0.0;
  double wr = 0.0;
  for (int c = 0; c < num_classes; ++c) {
    const ConfusionCounts& cc = r.per_class[c];
    r.f1.push_back(F1(cc));
    r.precision.push_back(Ratio(cc.tp, cc.tp + cc.fp));
    r.recall.push_back(Ratio(cc.tp, cc.tp + cc.fn));
    if (cc.support() == 0) {
      LogWarning(absl::StrCat("class ", c,
                              " absent from labels; F1 excluded from median"));
      continue;
    }
    if (r.f1.back()) defined_f1.push_back(*r.f1.back());
    if (!r.precision.back()) {
      LogWarning(absl::StrCat("class ", c,
                              " never predicted; precision counted as 0"));
    }
    total += cc.support();
    wp += cc.support() * r.precision.back().value_or(0.0);
    wr += cc.support() * *r.recall.back();
  }
  r.median_f1 = Median(std::move(defined_f1));
  if (total > 0) {
    r.weighted_precision = wp / static_cast<double>(total);
    r.weighted_recall = wr / static_cast<double>(total);
  }
  return r;
}

}  // namespace decaph
