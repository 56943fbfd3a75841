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

#include "decaph/models/architecture.h"

#include "absl/strings/str_cat.h"

namespace decaph {

std::string LossHeadName(LossHead head) {
  switch (head) {
    case LossHead::kSigmoidBce:
      return "sigmoid_bce";
    case LossHead::kSoftmaxCe:
      return "softmax_ce";
    case LossHead::kMultiMargin:
      return "multi_margin";
    case LossHead::kMultilabelBce:
      return "multilabel_bce";
  }
  return "unknown";
}

absl::StatusOr<LossHead> ParseLossHead(const std::string& name) {
  for (LossHead head : {LossHead::kSigmoidBce, LossHead::kSoftmaxCe,
                        LossHead::kMultiMargin, LossHead::kMultilabelBce}) {
    if (LossHeadName(head) == name) return head;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown loss head '", name,
                                                 "'"));
}

Architecture Architecture::Logistic(int input_dim) {
  return Architecture{input_dim, {}, 1, LossHead::kSigmoidBce};
}

Architecture Architecture::Mlp(int input_dim, std::vector<int> hidden,
                               int output_dim, LossHead head) {
  return Architecture{input_dim, std::move(hidden), output_dim, head};
}

Architecture Architecture::LinearSvc(int input_dim, int num_classes) {
  return Architecture{input_dim, {}, num_classes, LossHead::kMultiMargin};
}

std::pair<int, int> Architecture::LayerShape(int layer) const {
  const int in = layer == 0 ? input_dim : hidden[layer - 1];
  const int out = layer == num_layers() - 1 ? output_dim : hidden[layer];
  return {in, out};
}

std::size_t Architecture::ParameterCount() const {
  std::size_t total = 0;
  for (int l = 0; l < num_layers(); ++l) {
    const auto [in, out] = LayerShape(l);
    total += static_cast<std::size_t>(in) * out + out;
  }
  return total;
}

absl::Status Architecture::Validate() const {
  if (input_dim <= 0 || output_dim <= 0) {
    return absl::InvalidArgumentError("layer widths must be positive");
  }
  for (int w : hidden) {
    if (w <= 0) return absl::InvalidArgumentError("hidden width must be > 0");
  }
  if (head == LossHead::kSigmoidBce && output_dim != 1) {
    return absl::InvalidArgumentError("sigmoid_bce head needs 1 output");
  }
  if ((head == LossHead::kSoftmaxCe || head == LossHead::kMultiMargin) &&
      output_dim < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat(LossHeadName(head), " head needs >= 2 outputs"));
  }
  return absl::OkStatus();
}

absl::Status Architecture::CheckTask(const Task& task) const {
  switch (head) {
    case LossHead::kSigmoidBce:
      if (task.kind != TaskKind::kBinary) {
        return absl::InvalidArgumentError("sigmoid_bce needs a binary task");
      }
      break;
    case LossHead::kSoftmaxCe:
    case LossHead::kMultiMargin:
      if (task.kind == TaskKind::kMultilabel) {
        return absl::InvalidArgumentError(
            absl::StrCat(LossHeadName(head), " needs integer labels"));
      }
      if (task.num_classes != output_dim) {
        return absl::InvalidArgumentError(
            absl::StrCat("head has ", output_dim, " outputs but task has ",
                         task.num_classes, " classes"));
      }
      break;
    case LossHead::kMultilabelBce:
      if (task.kind != TaskKind::kMultilabel ||
          task.num_classes != output_dim) {
        return absl::InvalidArgumentError(
            "multilabel_bce needs multi-hot labels of matching width");
      }
      break;
  }
  return absl::OkStatus();
}

nlohmann::json Architecture::ToJson() const {
  return {{"input_dim", input_dim},
          {"hidden", hidden},
          {"output_dim", output_dim},
          {"head", LossHeadName(head)},
          {"activation", "relu"}};
}

absl::StatusOr<Architecture> Architecture::FromJson(const nlohmann::json& j) {
  Architecture arch;
  try {
    arch.input_dim = j.at("input_dim").get<int>();
    arch.hidden = j.value("hidden", std::vector<int>{});
    arch.output_dim = j.at("output_dim").get<int>();
    auto head = ParseLossHead(j.at("head").get<std::string>());
    if (!head.ok()) return head.status();
    arch.head = *head;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad architecture descriptor: ", e.what()));
  }
  if (absl::Status s = arch.Validate(); !s.ok()) return s;
  return arch;
}

}  // namespace decaph
