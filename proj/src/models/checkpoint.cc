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

#include "decaph/models/checkpoint.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "absl/strings/str_cat.h"
#include "decaph/util/status_macros.h"

namespace decaph {

absl::Status WriteCheckpoint(const std::string& prefix,
                             const ModelState& model) {
  nlohmann::json meta = {
      {"architecture", model.arch.ToJson()},
      {"l2_weight_decay", model.l2_weight_decay},
      {"learning_rate", model.learning_rate},
      {"num_params", model.params.size()},
      {"encoding", "float64-le"},
  };
  std::ofstream json_out(prefix + ".json");
  json_out << meta.dump(2) << '\n';
  if (!json_out) {
    return absl::UnavailableError(absl::StrCat("cannot write ", prefix, ".json"));
  }

  std::ofstream bin(prefix + ".bin", std::ios::binary);
  for (Eigen::Index i = 0; i < model.params.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(model.params(i));
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>(bits >> (8 * b));
    bin.write(bytes, 8);
  }
  if (!bin) {
    return absl::UnavailableError(absl::StrCat("cannot write ", prefix, ".bin"));
  }
  return absl::OkStatus();
}

absl::StatusOr<ModelState> ReadCheckpoint(const std::string& prefix) {
  std::ifstream json_in(prefix + ".json");
  if (!json_in) {
    return absl::NotFoundError(absl::StrCat("cannot open ", prefix, ".json"));
  }
  nlohmann::json meta;
  try {
    json_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(prefix, ".json: ", e.what()));
  }
  if (!meta.is_object() || !meta.contains("architecture")) {
    return absl::InvalidArgumentError(
        absl::StrCat(prefix, ".json: missing architecture"));
  }
  ASSIGN_OR_RETURN(Architecture arch,
                   Architecture::FromJson(meta["architecture"]));

  std::ifstream bin(prefix + ".bin", std::ios::binary);
  if (!bin) {
    return absl::NotFoundError(absl::StrCat("cannot open ", prefix, ".bin"));
  }
  Eigen::VectorXd params(static_cast<Eigen::Index>(arch.ParameterCount()));
  for (Eigen::Index i = 0; i < params.size(); ++i) {
    unsigned char bytes[8];
    if (!bin.read(reinterpret_cast<char*>(bytes), 8)) {
      return absl::DataLossError(
          absl::StrCat(prefix, ".bin: truncated at parameter ", i));
    }
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= std::uint64_t{bytes[b]} << (8 * b);
    params(i) = std::bit_cast<double>(bits);
  }
  return ModelState::Create(std::move(arch), std::move(params),
                            meta.value("l2_weight_decay", 0.0),
                            meta.value("learning_rate", 0.1));
}

}  // namespace decaph
