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

#include "decaph/util/logging.h"

#include <iostream>

namespace decaph {
namespace {

thread_local ScopedWarningCapture* current_capture = nullptr;

}  // namespace

ScopedWarningCapture::ScopedWarningCapture() : previous_(current_capture) {
  current_capture = this;
}

ScopedWarningCapture::~ScopedWarningCapture() { current_capture = previous_; }

void LogWarning(std::string_view message) {
  if (current_capture != nullptr) {
    current_capture->warnings_.emplace_back(message);
    return;
  }
  std::cerr << "WARNING: " << message << '\n';
}

}  // namespace decaph
