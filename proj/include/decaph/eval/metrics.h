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

#ifndef DECAPH_EVAL_METRICS_H_
#define DECAPH_EVAL_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace decaph {

// A metric whose denominator is zero has no value (distinct from 0.0).
using MaybeMetric = std::optional<double>;

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
  std::int64_t support() const { return tp + fn; }  // N_c
};

// Safe ratio: nullopt when den == 0.
MaybeMetric Ratio(std::int64_t num, std::int64_t den);

// 2TP / (2TP + FN + FP).
MaybeMetric F1(const ConfusionCounts& c);

struct BinaryReport {
  ConfusionCounts positive;  // counts with class 1 as the positive class
  MaybeMetric ppv;
  MaybeMetric npv;
  MaybeMetric f1_negative;
  MaybeMetric f1_positive;
  MaybeMetric macro_f1;     // undefined if either class F1 is
  MaybeMetric weighted_f1;  // classes weighted by support
};

// Predicts class 1 when score >= threshold.
absl::StatusOr<BinaryReport> BinaryMetrics(std::span<const double> scores,
                                           std::span<const int> labels,
                                           double threshold);

struct MulticlassReport {
  std::vector<ConfusionCounts> per_class;  // one-vs-rest
  std::vector<MaybeMetric> f1;
  std::vector<MaybeMetric> precision;
  std::vector<MaybeMetric> recall;
  MaybeMetric median_f1;  // over classes present in the labels
  MaybeMetric weighted_precision;
  MaybeMetric weighted_recall;
};

// Classes absent from `labels` are excluded from the median with a warning.
// In the support-weighted averages an undefined per-class precision of a
// present class counts as 0 (it was never predicted) and is warned about.
absl::StatusOr<MulticlassReport> MulticlassMetrics(
    std::span<const int> predictions, std::span<const int> labels,
    int num_classes);

// Mean of the middle one or two elements; nullopt for an empty list.
MaybeMetric Median(std::vector<double> values);

}  // namespace decaph

#endif  // DECAPH_EVAL_METRICS_H_
