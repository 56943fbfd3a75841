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

#include "decaph/protocol/messages.h"

#include "absl/strings/str_cat.h"
#include "decaph/secagg/wire.h"

namespace decaph {
namespace {

std::size_t ExpectedPayload(MessageKind kind) {
  switch (kind) {
    case MessageKind::kLeaderAnnounce:
      return 0;
    case MessageKind::kBatchSizeShare:
    case MessageKind::kGradientShare:
      return 1;
    case MessageKind::kBatchTotal:
      return 2;
    case MessageKind::kModelSync:
      return 3;
  }
  return 0;
}

std::size_t PayloadBytes(const MessagePayload& payload) {
  if (const auto* share = std::get_if<MaskedShare>(&payload)) {
    return kShareHeaderBytes + kRingWordBytes * share->masked_vector.size();
  }
  if (const auto* params = std::get_if<Eigen::VectorXd>(&payload)) {
    return 8 * static_cast<std::size_t>(params->size());
  }
  return 8;
}

}  // namespace

std::string MessageKindName(MessageKind kind) {
  switch (kind) {
    case MessageKind::kLeaderAnnounce:
      return "LeaderAnnounce";
    case MessageKind::kBatchSizeShare:
      return "BatchSizeShare";
    case MessageKind::kBatchTotal:
      return "BatchTotal";
    case MessageKind::kGradientShare:
      return "GradientShare";
    case MessageKind::kModelSync:
      return "ModelSync";
  }
  return "Unknown";
}

absl::Status MessageBus::Send(RoundMessage message) {
  if (message.payload.index() != ExpectedPayload(message.kind)) {
    return absl::InternalError(
        absl::StrCat(MessageKindName(message.kind),
                     " message carries the wrong payload type"));
  }
  if (keep_log_) {
    log_.push_back({message.kind, message.sender, message.recipient,
                    message.round, message.payload.index(),
                    PayloadBytes(message.payload)});
  }
  queues_[message.recipient].push_back(std::move(message));
  return absl::OkStatus();
}

std::vector<RoundMessage> MessageBus::Receive(ParticipantId recipient) {
  std::vector<RoundMessage> out;
  auto it = queues_.find(recipient);
  if (it == queues_.end()) return out;
  out.assign(std::make_move_iterator(it->second.begin()),
             std::make_move_iterator(it->second.end()));
  it->second.clear();
  return out;
}

}  // namespace decaph
