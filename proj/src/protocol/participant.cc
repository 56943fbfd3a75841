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

#include "decaph/protocol/participant.h"

#include "decaph/dp/mechanism.h"
#include "decaph/numerics/prng.h"
#include "decaph/util/status_macros.h"

namespace decaph {

Participant::Participant(DatasetShard shard, ModelState model,
                         std::uint64_t seed)
    : shard_(std::move(shard)), model_(std::move(model)), seed_(seed) {}

absl::StatusOr<std::int64_t> Participant::SampleBatch(std::int64_t round,
                                                      double p) {
  Prng prng(seed_, MakeStreamId(StreamDomain::kSampling,
                                {id(), static_cast<std::uint64_t>(round)}));
  ASSIGN_OR_RETURN(std::vector<std::size_t> picked,
                   PoissonSample(dataset_size(), p, prng));
  batch_.assign(picked.begin(), picked.end());
  return batch_size();
}

absl::Status Participant::ClippedBatch(GradientMatrix& clipped,
                                      double& loss_sum,
                                      double clip_norm) const {
  clipped.resize(0, model_.params.size());
  loss_sum = 0.0;
  if (batch_.empty()) return absl::OkStatus();
  const DatasetShard batch = shard_.Subset(batch_);
  ASSIGN_OR_RETURN(PerExampleGradients g,
                   PerExampleGrads(model_, batch.features, batch.labels));
  ASSIGN_OR_RETURN(clipped, Clip(g.grads, clip_norm));
  loss_sum = g.losses.sum();
  return absl::OkStatus();
}

Prng Participant::NoiseStream(std::int64_t round) const {
  return Prng(seed_, MakeStreamId(StreamDomain::kNoise,
                                  {id(), static_cast<std::uint64_t>(round)}));
}

absl::StatusOr<Participant::Contribution> Participant::SplitNoiseContribution(
    std::int64_t round, std::int64_t aggregate_batch, double clip_norm,
    double noise_multiplier) const {
  Contribution out;
  GradientMatrix clipped;
  RETURN_IF_ERROR(ClippedBatch(clipped, out.loss_sum, clip_norm));
  Prng noise = NoiseStream(round);
  ASSIGN_OR_RETURN(out.noised_sum,
                   LocalNoiseAndSum(clipped, batch_size(), aggregate_batch,
                                    clip_norm, noise_multiplier, noise));
  return out;
}

absl::StatusOr<Participant::Contribution> Participant::LocalDpDelta(
    std::int64_t round, double expected_batch, double clip_norm,
    double noise_multiplier) const {
  Contribution out;
  GradientMatrix clipped;
  RETURN_IF_ERROR(ClippedBatch(clipped, out.loss_sum, clip_norm));
  const Eigen::Index dim = model_.params.size();
  // The whole (C sigma)^2 is added here, even for an empty batch.
  Prng noise = NoiseStream(round);
  ASSIGN_OR_RETURN(std::vector<double> z,
                   Gaussian(noise, 0.0, clip_norm * noise_multiplier,
                            static_cast<std::size_t>(dim)));
  Eigen::VectorXd grad = clipped.colwise().sum().transpose();
  grad += Eigen::Map<const Eigen::VectorXd>(z.data(), dim);
  grad /= expected_batch;
  if (!grad.allFinite()) {
    return absl::InternalError("non-finite gradient: training diverged");
  }
  out.noised_sum = -model_.learning_rate * grad;
  return out;
}

}  // namespace decaph
