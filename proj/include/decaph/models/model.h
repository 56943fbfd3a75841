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

#ifndef DECAPH_MODELS_MODEL_H_
#define DECAPH_MODELS_MODEL_H_

#include <cstdint>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "decaph/models/architecture.h"

namespace decaph {

// One row per example; row-major so each example's gradient is contiguous.
using GradientMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct ModelState {
  Architecture arch;
  Eigen::VectorXd params;
  double l2_weight_decay = 0.0;
  double learning_rate = 0.1;

  // Checks the parameter count, finiteness and hyperparameter ranges.
  static absl::StatusOr<ModelState> Create(Architecture arch,
                                           Eigen::VectorXd params,
                                           double l2_weight_decay,
                                           double learning_rate);

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for every weight and bias,
  // drawn from the initialization stream of `seed`.
  static absl::StatusOr<ModelState> Initialize(Architecture arch,
                                               double l2_weight_decay,
                                               double learning_rate,
                                               std::uint64_t seed);
};

struct PerExampleGradients {
  GradientMatrix grads;   // n x num_params
  Eigen::VectorXd losses; // n
};

// Row i is the gradient of L(W, x_i) + (l2/2)||W||^2, i.e. the weight-decay
// term l2 * W is part of every row and therefore subject to clipping.
absl::StatusOr<PerExampleGradients> PerExampleGrads(
    const ModelState& model, const Eigen::MatrixXd& features,
    const Eigen::MatrixXi& labels);

// Per-example loss including the l2 term (matches PerExampleGrads).
absl::StatusOr<Eigen::VectorXd> PerExampleLoss(const ModelState& model,
                                               const Eigen::MatrixXd& features,
                                               const Eigen::MatrixXi& labels);

// Raw network outputs (n x output_dim).
absl::StatusOr<Eigen::MatrixXd> Logits(const ModelState& model,
                                       const Eigen::MatrixXd& features);

// Sigmoid / softmax / per-output sigmoid probabilities, or raw margins for
// the multi-margin head.
absl::StatusOr<Eigen::MatrixXd> Predict(const ModelState& model,
                                        const Eigen::MatrixXd& features);

// W - learning_rate * grad. Non-finite gradient entries are an error.
absl::StatusOr<ModelState> ApplyUpdate(const ModelState& model,
                                       const Eigen::VectorXd& grad);

}  // namespace decaph

#endif  // DECAPH_MODELS_MODEL_H_
