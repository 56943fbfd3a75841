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

#ifndef DECAPH_MODELS_CHECKPOINT_H_
#define DECAPH_MODELS_CHECKPOINT_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "decaph/models/model.h"

namespace decaph {

// Writes `<prefix>.bin` (parameters as little-endian float64, in layout
// order) and `<prefix>.json` (architecture, hyperparameters, count).
absl::Status WriteCheckpoint(const std::string& prefix,
                             const ModelState& model);
absl::StatusOr<ModelState> ReadCheckpoint(const std::string& prefix);

}  // namespace decaph

#endif  // DECAPH_MODELS_CHECKPOINT_H_
