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

#ifndef DECAPH_TESTS_SUPPORT_ORACLES_H_
#define DECAPH_TESTS_SUPPORT_ORACLES_H_

// Independent reference implementations used by the unit tests and the
// acceptance binary. None of these share code with the library routine they
// check.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "decaph/models/model.h"

namespace decaph::testing {

// RDP of one Poisson-subsampled Gaussian step by numerical integration of
// E_{z ~ N(0, s^2)}[((1 - p) + p exp((2z - 1) / (2 s^2)))^alpha]
// with adaptive Gauss-Kronrod quadrature.
double QuadratureRdp(double p, double sigma, double alpha);

// Fraction of (positive, negative) pairs ordered correctly, ties counting
// one half. O(n^2).
double PairwiseAuroc(std::span<const double> scores,
                     std::span<const int> labels);

// Youden's J over every candidate threshold {scores} U {+inf}, evaluated by
// direct counting; returns the smallest maximizing threshold.
double BruteForceYouden(std::span<const double> scores,
                        std::span<const int> labels);

// TPR - FPR at `threshold` by direct counting.
double YoudenJ(std::span<const double> scores, std::span<const int> labels,
               double threshold);

// Binary metrics straight from their textbook formulas.
struct BinaryOracle {
  std::optional<double> ppv, npv, f1_pos, f1_neg, macro_f1, weighted_f1;
};
BinaryOracle BinaryFormulas(std::span<const int> predicted,
                            std::span<const int> labels);

struct MulticlassOracle {
  std::optional<double> median_f1, weighted_precision, weighted_recall;
};
MulticlassOracle MulticlassFormulas(std::span<const int> predicted,
                                    std::span<const int> labels, int k);

// Textbook per-example loss (including (l2/2)||W||^2) from an independent
// forward pass over the documented parameter layout, plus the distance of
// the nearest ReLU pre-activation or hinge margin to its kink.
struct ReferenceEval {
  double loss = 0.0;
  double min_kink_distance = 0.0;
};
ReferenceEval ReferenceLoss(const ModelState& model,
                            const Eigen::RowVectorXd& x,
                            const Eigen::RowVectorXi& y);

// Central finite differences of the per-example loss of row `row`.
Eigen::VectorXd FiniteDifferenceGradient(const ModelState& model,
                                         const Eigen::MatrixXd& features,
                                         const Eigen::MatrixXi& labels,
                                         Eigen::Index row, double h);

// Full-batch gradient descent for logistic regression with weights laid out
// as [w (d), b], hand-coded: g = X^T (sigmoid(Xw + b) - y) / N + l2 * theta.
Eigen::VectorXd CentralizedLogisticSgd(const Eigen::MatrixXd& x,
                                       const Eigen::VectorXd& y,
                                       Eigen::VectorXd theta, double l2,
                                       double learning_rate, int steps);

}  // namespace decaph::testing

#endif  // DECAPH_TESTS_SUPPORT_ORACLES_H_
