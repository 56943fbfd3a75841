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

#ifndef DECAPH_PROTOCOL_MESSAGES_H_
#define DECAPH_PROTOCOL_MESSAGES_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "decaph/secagg/session.h"

namespace decaph {

enum class MessageKind {
  kLeaderAnnounce,  // payload: ParticipantId of this round's leader
  kBatchSizeShare,  // payload: MaskedShare of the local batch size
  kBatchTotal,      // payload: aggregate batch size, leader -> everyone
  kGradientShare,   // payload: MaskedShare of the local contribution
  kModelSync,       // payload: full flat parameter vector
};

std::string MessageKindName(MessageKind kind);

using MessagePayload =
    std::variant<ParticipantId, MaskedShare, std::int64_t, Eigen::VectorXd>;

struct RoundMessage {
  MessageKind kind;
  ParticipantId sender;
  ParticipantId recipient;
  std::int64_t round;
  MessagePayload payload;
};

// What the bus saw, without the payload itself.
struct MessageRecord {
  MessageKind kind;
  ParticipantId sender;
  ParticipantId recipient;
  std::int64_t round;
  std::size_t payload_index;  // MessagePayload alternative
  std::size_t bytes;
};

// Ordered per-recipient queues. Send rejects a payload that does not match
// its kind, so shares can only ever travel in masked form.
class MessageBus {
 public:
  absl::Status Send(RoundMessage message);
  // Removes and returns everything queued for `recipient`, in send order.
  std::vector<RoundMessage> Receive(ParticipantId recipient);

  const std::vector<MessageRecord>& log() const { return log_; }
  void set_keep_log(bool keep) { keep_log_ = keep; }

 private:
  std::map<ParticipantId, std::deque<RoundMessage>> queues_;
  std::vector<MessageRecord> log_;
  bool keep_log_ = true;
};

}  // namespace decaph

#endif  // DECAPH_PROTOCOL_MESSAGES_H_
