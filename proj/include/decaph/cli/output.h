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

#ifndef DECAPH_CLI_OUTPUT_H_
#define DECAPH_CLI_OUTPUT_H_

#include <string>

#include "absl/status/status.h"
#include "decaph/eval/metrics.h"
#include "json.hpp"

namespace decaph {

struct Provenance {
  std::string config_hash;
  std::string seed;  // one seed, or a ';'-joined list
};

// "config_hash=<hash> seed=<seed>"
std::string ProvenanceText(const Provenance& p);

// Writes `content`, creating parent directories.
absl::Status WriteTextFile(const std::string& path, const std::string& content);

// "# <provenance>\n" followed by `body` (which starts with its header row).
absl::Status WriteCsv(const std::string& path, const Provenance& p,
                      const std::string& body);

// The object gains a "provenance" member; two-space indent.
absl::Status WriteJson(const std::string& path, const Provenance& p,
                       nlohmann::json object);

// Shortest round-trip decimal, "inf" / "-inf" / "nan" for non-finite.
std::string FormatReal(double v);
// JSON number, or the strings "inf" / "-inf" / "nan".
nlohmann::json JsonReal(double v);
// JsonReal, or null when undefined.
nlohmann::json JsonMetric(const MaybeMetric& m);
// FormatReal, or "undefined".
std::string FormatMetric(const MaybeMetric& m);

}  // namespace decaph

#endif  // DECAPH_CLI_OUTPUT_H_
