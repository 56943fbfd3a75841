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

#ifndef DECAPH_DATA_SYNTHETIC_H_
#define DECAPH_DATA_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "decaph/data/dataset.h"

namespace decaph {

// Cross-silo synthetic data: Gaussian class-conditional features with a
// participant-specific mean shift.
//
// For participant h and class c, x = mu_c + heterogeneity * s_h + N(0, I),
// where each coordinate of mu_c is N(0, class_separation^2 / n_features)
// (so ||mu_c|| is about class_separation) and each coordinate of s_h is
// N(0, 1). Labels are drawn per row from class_balance[h]; a label_noise
// fraction of rows then gets a uniformly random label.
//
// Multilabel rows draw a primary class from class_balance[h] and switch on
// every other bit with probability 0.1; features use the primary class mean
// plus half of each secondary mean.
struct SyntheticSpec {
  std::size_t n_participants = 0;
  std::vector<std::size_t> sizes;
  std::size_t n_features = 0;
  std::vector<std::vector<double>> class_balance;
  double heterogeneity = 0.0;
  Task task;
  std::uint64_t seed = 0;
  double class_separation = 2.0;
  double label_noise = 0.0;

  absl::Status Validate() const;
};

absl::StatusOr<std::vector<DatasetShard>> Generate(const SyntheticSpec& spec);

}  // namespace decaph

#endif  // DECAPH_DATA_SYNTHETIC_H_
