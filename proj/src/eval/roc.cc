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

#include "decaph/eval/roc.h"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace decaph {
namespace {

absl::Status CheckInputs(std::span<const double> scores,
                         std::span<const int> is_positive) {
  if (scores.size() != is_positive.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat(scores.size(), " scores but ", is_positive.size(),
                     " labels"));
  }
  bool pos = false;
  bool neg = false;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("score ", i, " is not finite"));
    }
    if (is_positive[i] != 0 && is_positive[i] != 1) {
      return absl::InvalidArgumentError("labels must be 0 or 1");
    }
    (is_positive[i] ? pos : neg) = true;
  }
  if (!pos || !neg) {
    return absl::InvalidArgumentError(
        "ROC needs both positive and negative examples");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<RocCurve> Roc(std::span<const double> scores,
                             std::span<const int> is_positive,
                             std::span<const double> fpr_targets) {
  if (absl::Status s = CheckInputs(scores, is_positive); !s.ok()) return s;
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  const double n_pos = static_cast<double>(
      std::count(is_positive.begin(), is_positive.end(), 1));
  const double n_neg = static_cast<double>(scores.size()) - n_pos;

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double threshold = scores[order[k]];
    while (k < order.size() && scores[order[k]] == threshold) {
      (is_positive[order[k]] ? tp : fp) += 1;
      ++k;
    }
    curve.points.push_back({threshold, fp / n_neg, tp / n_pos});
  }
  // Integer trapezoid sum keeps the area exact: 2 * area * n_pos * n_neg.
  double twice_area_counts = 0.0;
  std::size_t prev_tp = 0;
  std::size_t prev_fp = 0;
  tp = fp = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double threshold = scores[order[k]];
    while (k < order.size() && scores[order[k]] == threshold) {
      (is_positive[order[k]] ? tp : fp) += 1;
      ++k;
    }
    twice_area_counts +=
        static_cast<double>(fp - prev_fp) * static_cast<double>(tp + prev_tp);
    prev_tp = tp;
    prev_fp = fp;
  }
  curve.auroc = twice_area_counts / (2.0 * n_pos * n_neg);
  for (double limit : fpr_targets) {
    double best = 0.0;
    for (const RocPoint& p : curve.points) {
      if (p.fpr <= limit) best = std::max(best, p.tpr);
    }
    curve.tpr_at_fpr.push_back({limit, best});
  }
  return curve;
}

absl::StatusOr<double> Auroc(std::span<const double> scores,
                             std::span<const int> is_positive) {
  absl::StatusOr<RocCurve> curve = Roc(scores, is_positive, {});
  if (!curve.ok()) return curve.status();
  return curve->auroc;
}

absl::StatusOr<double> YoudenThreshold(std::span<const double> scores,
                                       std::span<const int> is_positive) {
  if (absl::Status s = CheckInputs(scores, is_positive); !s.ok()) return s;
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  const std::int64_t n_pos = std::count(is_positive.begin(), is_positive.end(), 1);
  const std::int64_t n_neg = static_cast<std::int64_t>(scores.size()) - n_pos;
  // J * n_pos * n_neg = tp * n_neg - fp * n_pos, compared exactly in integers.
  // Thresholds are visited from +inf downwards, so taking the last maximizer
  // yields the smallest threshold among ties.
  std::int64_t best = 0;
  double best_threshold = std::numeric_limits<double>::infinity();
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double threshold = scores[order[k]];
    while (k < order.size() && scores[order[k]] == threshold) {
      (is_positive[order[k]] ? tp : fp) += 1;
      ++k;
    }
    const std::int64_t j = tp * n_neg - fp * n_pos;
    if (j >= best) {
      best = j;
      best_threshold = threshold;
    }
  }
  return best_threshold;
}

}  // namespace decaph
