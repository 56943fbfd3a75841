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

#ifndef DECAPH_EVAL_ROC_H_
#define DECAPH_EVAL_ROC_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace decaph {

struct RocPoint {
  double threshold;  // predict positive when score >= threshold
  double fpr;
  double tpr;
};

struct TprAtFpr {
  double fpr_limit;
  double tpr;  // best TPR among curve points with FPR <= fpr_limit
};

struct RocCurve {
  std::vector<RocPoint> points;  // from (0,0) at +inf to (1,1)
  double auroc = 0.0;
  std::vector<TprAtFpr> tpr_at_fpr;
};

inline constexpr double kLowFprTargets[] = {1e-3, 1e-2, 1e-1};

// Exact threshold sweep over the distinct scores; tied scores move together,
// so the trapezoid area equals the pairwise AUROC with ties counted 1/2.
// Requires both classes and finite scores.
absl::StatusOr<RocCurve> Roc(std::span<const double> scores,
                             std::span<const int> is_positive,
                             std::span<const double> fpr_targets =
                                 kLowFprTargets);

absl::StatusOr<double> Auroc(std::span<const double> scores,
                             std::span<const int> is_positive);

// Threshold maximizing TPR - FPR among {distinct scores} U {+inf}; ties go to
// the smallest threshold.
absl::StatusOr<double> YoudenThreshold(std::span<const double> scores,
                                       std::span<const int> is_positive);

}  // namespace decaph

#endif  // DECAPH_EVAL_ROC_H_
