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

#ifndef DECAPH_UTIL_LOGGING_H_
#define DECAPH_UTIL_LOGGING_H_

#include <string>
#include <string_view>
#include <vector>

namespace decaph {

// Emits a non-fatal warning. Warnings go to stderr unless a
// ScopedWarningCapture is active on the calling thread.
void LogWarning(std::string_view message);

// Redirects warnings raised on this thread into a buffer for the lifetime of
// the object. Captures nest; the innermost one receives the messages.
class ScopedWarningCapture {
 public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();

  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend void LogWarning(std::string_view message);

  std::vector<std::string> warnings_;
  ScopedWarningCapture* previous_;
};

}  // namespace decaph

#endif  // DECAPH_UTIL_LOGGING_H_
