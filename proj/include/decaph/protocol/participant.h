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

#ifndef DECAPH_PROTOCOL_PARTICIPANT_H_
#define DECAPH_PROTOCOL_PARTICIPANT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "decaph/data/dataset.h"
#include "decaph/models/model.h"
#include "decaph/numerics/prng.h"

namespace decaph {

// One silo: its private shard, its copy of the model and its own random
// streams. Nothing here ever leaves the participant unmasked except through
// the values returned to the caller, which the round logic masks.
class Participant {
 public:
  Participant(DatasetShard shard, ModelState model, std::uint64_t seed);

  ParticipantId id() const { return shard_.participant_id; }
  const DatasetShard& shard() const { return shard_; }
  const ModelState& model() const { return model_; }
  std::size_t dataset_size() const { return shard_.num_examples(); }

  // Poisson-samples this round's mini-batch at rate `p`; returns its size.
  absl::StatusOr<std::int64_t> SampleBatch(std::int64_t round, double p);
  std::int64_t batch_size() const {
    return static_cast<std::int64_t>(batch_.size());
  }

  struct Contribution {
    Eigen::VectorXd noised_sum;  // sum of clipped gradients + local noise
    double loss_sum = 0.0;       // diagnostic only, never transmitted
  };

  // Sum of the batch's clipped per-example gradients plus Gaussian noise of
  // variance (|B_h| / |B|)(C sigma)^2 per coordinate.
  absl::StatusOr<Contribution> SplitNoiseContribution(
      std::int64_t round, std::int64_t aggregate_batch, double clip_norm,
      double noise_multiplier) const;

  // One complete local DP-SGD step: clipped sum plus noise of variance
  // (C sigma)^2, divided by the expected batch size. noised_sum holds the
  // parameter change W' - W; the participant's model is not modified.
  absl::StatusOr<Contribution> LocalDpDelta(std::int64_t round,
                                            double expected_batch,
                                            double clip_norm,
                                            double noise_multiplier) const;

  // Adopts the leader's parameters.
  void Sync(const Eigen::VectorXd& params) { model_.params = params; }

 private:
  // Per-example gradients of the sampled batch, clipped to `clip_norm`.
  absl::Status ClippedBatch(GradientMatrix& clipped, double& loss_sum,
                            double clip_norm) const;
  Prng NoiseStream(std::int64_t round) const;

  DatasetShard shard_;
  ModelState model_;
  std::uint64_t seed_;
  std::vector<Eigen::Index> batch_;
};

}  // namespace decaph

#endif  // DECAPH_PROTOCOL_PARTICIPANT_H_
