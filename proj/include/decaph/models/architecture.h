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

#ifndef DECAPH_MODELS_ARCHITECTURE_H_
#define DECAPH_MODELS_ARCHITECTURE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "decaph/data/dataset.h"
#include "json.hpp"

namespace decaph {

enum class LossHead {
  kSigmoidBce,     // 1 output, labels in {0, 1}
  kSoftmaxCe,      // k outputs, integer labels
  kMultiMargin,    // k outputs, integer labels, margin 1
  kMultilabelBce,  // k outputs, multi-hot labels, BCE averaged over outputs
};

std::string LossHeadName(LossHead head);
absl::StatusOr<LossHead> ParseLossHead(const std::string& name);

// Fully connected network: input -> hidden... -> output with ReLU between
// layers and no activation after the last one (the head applies its own).
// Parameters are laid out layer by layer, each as a row-major (out x in)
// weight matrix followed by the out-sized bias.
struct Architecture {
  int input_dim = 0;
  std::vector<int> hidden;
  int output_dim = 1;
  LossHead head = LossHead::kSigmoidBce;

  static Architecture Logistic(int input_dim);
  static Architecture Mlp(int input_dim, std::vector<int> hidden,
                          int output_dim, LossHead head);
  // One linear layer trained with the multi-margin loss.
  static Architecture LinearSvc(int input_dim, int num_classes);

  int num_layers() const { return static_cast<int>(hidden.size()) + 1; }
  // (fan_in, fan_out) of layer l.
  std::pair<int, int> LayerShape(int layer) const;
  std::size_t ParameterCount() const;

  absl::Status Validate() const;
  // Heads accept only the matching label format.
  absl::Status CheckTask(const Task& task) const;

  nlohmann::json ToJson() const;
  static absl::StatusOr<Architecture> FromJson(const nlohmann::json& j);

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

}  // namespace decaph

#endif  // DECAPH_MODELS_ARCHITECTURE_H_
