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

#ifndef DECAPH_PROTOCOL_CONFIG_H_
#define DECAPH_PROTOCOL_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "decaph/dp/accountant.h"
#include "json.hpp"

namespace decaph {

enum class Mode {
  kDecaph,   // distributed DP: split noise, secure aggregation, one ledger
  kFl,       // same pipeline without clipping or noise
  kLocalDp,  // each participant runs DP-SGD on its own data, FedAvg merge
};

std::string ModeName(Mode mode);
absl::StatusOr<Mode> ParseMode(std::string_view name);

struct ProtocolConfig {
  Mode mode = Mode::kDecaph;
  // Expected aggregate mini-batch size B; the sampling rate is B / N for the
  // pooled size N.
  std::int64_t aggregate_batch_target = 64;
  // local_dp only: expected local batch per participant (0 = B / H).
  std::int64_t local_batch_size = 0;
  // dp.sampling_rate is derived during setup and ignored here.
  DpConfig dp;
  // Replace dp.target_delta with min(1e-5, 1/(1.1 N)), where N is the pooled
  // size (decaph) or the participant's own size (local_dp).
  bool auto_delta = true;
  // Replace dp.noise_multiplier during setup with the smallest value that
  // keeps epsilon within dp.target_epsilon over the whole round limit. The
  // pooled sampling rate and pooled-size delta are used in every DP mode,
  // so local_dp runs with the noise of the matching decaph run.
  bool calibrate_noise = false;
  std::int64_t max_rounds = -1;  // < 0: no round limit
  double max_epochs = -1.0;      // <= 0: no epoch limit
  std::uint64_t seed = 0;         // sampling, noise and mask streams
  std::uint64_t leader_seed = 0;
  bool sync_every_step = true;
  // Compute participant contributions concurrently. Reduction order is
  // fixed, so results match the sequential schedule bit for bit.
  bool parallel = false;
  int scale_bits = 16;

  absl::Status Validate() const;
  nlohmann::json ToJson() const;
};

}  // namespace decaph

#endif  // DECAPH_PROTOCOL_CONFIG_H_
