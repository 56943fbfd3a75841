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

#include "decaph/models/model.h"

#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "decaph/numerics/prng.h"
#include "decaph/util/status_macros.h"

namespace decaph {
namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstWeightMap = Eigen::Map<const RowMajorMatrix>;

double Softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct Forward {
  // inputs[l] feeds layer l; pre[l] is its affine output.
  std::vector<Eigen::MatrixXd> inputs;
  std::vector<Eigen::MatrixXd> pre;
};

std::vector<std::size_t> LayerOffsets(const Architecture& arch) {
  std::vector<std::size_t> offsets;
  std::size_t at = 0;
  for (int l = 0; l < arch.num_layers(); ++l) {
    offsets.push_back(at);
    const auto [in, out] = arch.LayerShape(l);
    at += static_cast<std::size_t>(in) * out + out;
  }
  return offsets;
}

absl::Status CheckInputs(const ModelState& model,
                         const Eigen::MatrixXd& features) {
  if (features.cols() != model.arch.input_dim) {
    return absl::InvalidArgumentError(
        absl::StrCat("feature dimension ", features.cols(),
                     " does not match model input ", model.arch.input_dim));
  }
  if (static_cast<std::size_t>(model.params.size()) !=
      model.arch.ParameterCount()) {
    return absl::FailedPreconditionError("parameter vector has wrong length");
  }
  return absl::OkStatus();
}

absl::Status CheckLabels(const ModelState& model, const Eigen::MatrixXd& features,
                         const Eigen::MatrixXi& labels) {
  if (labels.rows() != features.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat(features.rows(), " examples but ", labels.rows(),
                     " labels"));
  }
  const Architecture& arch = model.arch;
  const int k = arch.output_dim;
  if (arch.head == LossHead::kMultilabelBce) {
    if (labels.cols() != k) {
      return absl::InvalidArgumentError(
          absl::StrCat("multilabel head needs ", k, " label columns"));
    }
    if ((labels.array() < 0).any() || (labels.array() > 1).any()) {
      return absl::InvalidArgumentError("multi-hot labels must be 0/1");
    }
    return absl::OkStatus();
  }
  if (labels.cols() != 1) {
    return absl::InvalidArgumentError("expected one integer label per row");
  }
  const int upper = arch.head == LossHead::kSigmoidBce ? 1 : k - 1;
  if ((labels.array() < 0).any() || (labels.array() > upper).any()) {
    return absl::InvalidArgumentError(
        absl::StrCat("labels must lie in [0, ", upper, "]"));
  }
  return absl::OkStatus();
}

Forward RunForward(const ModelState& model, const Eigen::MatrixXd& features) {
  const Architecture& arch = model.arch;
  const std::vector<std::size_t> offsets = LayerOffsets(arch);
  Forward fwd;
  Eigen::MatrixXd a = features;
  for (int l = 0; l < arch.num_layers(); ++l) {
    const auto [in, out] = arch.LayerShape(l);
    ConstWeightMap w(model.params.data() + offsets[l], out, in);
    Eigen::Map<const Eigen::RowVectorXd> b(
        model.params.data() + offsets[l] + static_cast<std::size_t>(in) * out,
        out);
    Eigen::MatrixXd z = a * w.transpose();
    z.rowwise() += b;
    fwd.inputs.push_back(std::move(a));
    if (l + 1 < arch.num_layers()) a = z.cwiseMax(0.0);
    fwd.pre.push_back(std::move(z));
  }
  return fwd;
}

// Per-example loss (without the l2 term) and d loss / d logits.
void HeadLossAndGrad(LossHead head, const Eigen::MatrixXd& z,
                     const Eigen::MatrixXi& labels, Eigen::VectorXd& loss,
                     Eigen::MatrixXd* dz) {
  const Eigen::Index n = z.rows();
  const Eigen::Index k = z.cols();
  loss.resize(n);
  if (dz != nullptr) dz->resize(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    switch (head) {
      case LossHead::kSigmoidBce: {
        const double y = labels(i, 0);
        loss(i) = Softplus(z(i, 0)) - y * z(i, 0);
        if (dz) (*dz)(i, 0) = Sigmoid(z(i, 0)) - y;
        break;
      }
      case LossHead::kSoftmaxCe: {
        const int y = labels(i, 0);
        const double m = z.row(i).maxCoeff();
        const double lse =
            m + std::log((z.row(i).array() - m).exp().sum());
        loss(i) = lse - z(i, y);
        if (dz) {
          dz->row(i) = (z.row(i).array() - lse).exp().matrix();
          (*dz)(i, y) -= 1.0;
        }
        break;
      }
      case LossHead::kMultiMargin: {
        const int y = labels(i, 0);
        double total = 0.0;
        int active = 0;
        if (dz) dz->row(i).setZero();
        for (Eigen::Index j = 0; j < k; ++j) {
          if (j == y) continue;
          const double hinge = 1.0 - z(i, y) + z(i, j);
          if (hinge > 0) {
            total += hinge;
            ++active;
            if (dz) (*dz)(i, j) = 1.0 / static_cast<double>(k);
          }
        }
        loss(i) = total / static_cast<double>(k);
        if (dz) (*dz)(i, y) = -static_cast<double>(active) / k;
        break;
      }
      case LossHead::kMultilabelBce: {
        double total = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) {
          const double y = labels(i, j);
          total += Softplus(z(i, j)) - y * z(i, j);
          if (dz) (*dz)(i, j) = (Sigmoid(z(i, j)) - y) / static_cast<double>(k);
        }
        loss(i) = total / static_cast<double>(k);
        break;
      }
    }
  }
}

}  // namespace

absl::StatusOr<ModelState> ModelState::Create(Architecture arch,
                                              Eigen::VectorXd params,
                                              double l2_weight_decay,
                                              double learning_rate) {
  RETURN_IF_ERROR(arch.Validate());
  if (static_cast<std::size_t>(params.size()) != arch.ParameterCount()) {
    return absl::InvalidArgumentError(
        absl::StrCat("architecture has ", arch.ParameterCount(),
                     " parameters but got ", params.size()));
  }
  if (!params.allFinite()) {
    return absl::InvalidArgumentError("parameters must be finite");
  }
  if (!(l2_weight_decay >= 0.0)) {
    return absl::InvalidArgumentError("weight decay must be >= 0");
  }
  if (!(learning_rate > 0.0)) {
    return absl::InvalidArgumentError("learning rate must be > 0");
  }
  return ModelState{std::move(arch), std::move(params), l2_weight_decay,
                    learning_rate};
}

absl::StatusOr<ModelState> ModelState::Initialize(Architecture arch,
                                                  double l2_weight_decay,
                                                  double learning_rate,
                                                  std::uint64_t seed) {
  RETURN_IF_ERROR(arch.Validate());
  Eigen::VectorXd params(static_cast<Eigen::Index>(arch.ParameterCount()));
  Prng prng(seed, MakeStreamId(StreamDomain::kInit));
  Eigen::Index at = 0;
  for (int l = 0; l < arch.num_layers(); ++l) {
    const auto [in, out] = arch.LayerShape(l);
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    const Eigen::Index count = static_cast<Eigen::Index>(in) * out + out;
    for (Eigen::Index i = 0; i < count; ++i) {
      params(at++) = bound * (2.0 * prng.NextDouble() - 1.0);
    }
  }
  return Create(std::move(arch), std::move(params), l2_weight_decay,
                learning_rate);
}

absl::StatusOr<PerExampleGradients> PerExampleGrads(
    const ModelState& model, const Eigen::MatrixXd& features,
    const Eigen::MatrixXi& labels) {
  RETURN_IF_ERROR(CheckInputs(model, features));
  RETURN_IF_ERROR(CheckLabels(model, features, labels));
  if (features.rows() == 0) {
    return absl::InvalidArgumentError("empty batch");
  }
  const Architecture& arch = model.arch;
  const std::vector<std::size_t> offsets = LayerOffsets(arch);
  const Eigen::Index n = features.rows();

  Forward fwd = RunForward(model, features);
  PerExampleGradients out;
  Eigen::MatrixXd delta;
  HeadLossAndGrad(arch.head, fwd.pre.back(), labels, out.losses, &delta);

  out.grads.resize(n, model.params.size());
  for (int l = arch.num_layers() - 1; l >= 0; --l) {
    const auto [in, out_dim] = arch.LayerShape(l);
    const Eigen::MatrixXd& a = fwd.inputs[l];
    const std::size_t w_size = static_cast<std::size_t>(in) * out_dim;
    for (Eigen::Index i = 0; i < n; ++i) {
      double* row = out.grads.row(i).data() + offsets[l];
      Eigen::Map<RowMajorMatrix>(row, out_dim, in).noalias() =
          delta.row(i).transpose() * a.row(i);
      Eigen::Map<Eigen::RowVectorXd>(row + w_size, out_dim) = delta.row(i);
    }
    if (l > 0) {
      ConstWeightMap w(model.params.data() + offsets[l], out_dim, in);
      Eigen::MatrixXd back = delta * w;
      delta = back.cwiseProduct(
          (fwd.pre[l - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  if (model.l2_weight_decay > 0.0) {
    out.grads.rowwise() += model.l2_weight_decay * model.params.transpose();
    out.losses.array() += 0.5 * model.l2_weight_decay * model.params.squaredNorm();
  }
  return out;
}

absl::StatusOr<Eigen::VectorXd> PerExampleLoss(const ModelState& model,
                                               const Eigen::MatrixXd& features,
                                               const Eigen::MatrixXi& labels) {
  RETURN_IF_ERROR(CheckInputs(model, features));
  RETURN_IF_ERROR(CheckLabels(model, features, labels));
  Forward fwd = RunForward(model, features);
  Eigen::VectorXd loss;
  HeadLossAndGrad(model.arch.head, fwd.pre.back(), labels, loss, nullptr);
  loss.array() += 0.5 * model.l2_weight_decay * model.params.squaredNorm();
  return loss;
}

absl::StatusOr<Eigen::MatrixXd> Logits(const ModelState& model,
                                       const Eigen::MatrixXd& features) {
  RETURN_IF_ERROR(CheckInputs(model, features));
  return std::move(RunForward(model, features).pre.back());
}

absl::StatusOr<Eigen::MatrixXd> Predict(const ModelState& model,
                                        const Eigen::MatrixXd& features) {
  ASSIGN_OR_RETURN(Eigen::MatrixXd z, Logits(model, features));
  switch (model.arch.head) {
    case LossHead::kSigmoidBce:
    case LossHead::kMultilabelBce:
      return z.unaryExpr([](double v) { return Sigmoid(v); }).eval();
    case LossHead::kSoftmaxCe:
      for (Eigen::Index i = 0; i < z.rows(); ++i) {
        const double m = z.row(i).maxCoeff();
        z.row(i) = (z.row(i).array() - m).exp().matrix();
        z.row(i) /= z.row(i).sum();
      }
      return z;
    case LossHead::kMultiMargin:
      return z;
  }
  return z;
}

absl::StatusOr<ModelState> ApplyUpdate(const ModelState& model,
                                       const Eigen::VectorXd& grad) {
  if (grad.size() != model.params.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("gradient length ", grad.size(), " != parameter count ",
                     model.params.size()));
  }
  if (!grad.allFinite()) {
    return absl::InternalError("non-finite gradient: training diverged");
  }
  ModelState next = model;
  next.params -= model.learning_rate * grad;
  return next;
}

}  // namespace decaph
