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

#ifndef DECAPH_AUDIT_SHADOW_H_
#define DECAPH_AUDIT_SHADOW_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "decaph/audit/lira.h"
#include "decaph/data/dataset.h"
#include "decaph/eval/roc.h"
#include "decaph/models/model.h"
#include "decaph/protocol/config.h"

namespace decaph {

struct AuditConfig {
  int n_shadow = 64;
  bool global_variance = false;
  std::uint64_t seed = 0;
  int workers = 1;  // models trained concurrently
};

struct AuditResult {
  Mode mode = Mode::kDecaph;
  RocCurve roc;
  std::vector<AttackScore> scores;
  double target_epsilon = 0.0;  // achieved by the audited target model
  std::int64_t target_rounds = 0;
};

// Online LiRA against one training mode. The shards' union is the audit
// population. The target and every shadow model train under `protocol` on
// a half of it, each example staying with its original participant. The
// target's half is an independent uniform draw of exactly floor(n/2)
// examples; shadow halves follow a ShadowPlan. Each model gets its own
// initialization and protocol seed derived from `audit.seed`.
absl::StatusOr<AuditResult> AuditMode(const ProtocolConfig& protocol,
                                      std::span<const DatasetShard> shards,
                                      const ModelState& initial,
                                      const AuditConfig& audit);

}  // namespace decaph

#endif  // DECAPH_AUDIT_SHADOW_H_
