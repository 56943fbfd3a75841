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

#include "decaph/cli/output.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "absl/strings/str_cat.h"

namespace decaph {

std::string ProvenanceText(const Provenance& p) {
  return absl::StrCat("config_hash=", p.config_hash, " seed=", p.seed);
}

absl::Status WriteTextFile(const std::string& path,
                           const std::string& content) {
  const std::filesystem::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec) {
      return absl::UnavailableError(absl::StrCat(
          "cannot create ", target.parent_path().string(), ": ", ec.message()));
    }
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

absl::Status WriteCsv(const std::string& path, const Provenance& p,
                      const std::string& body) {
  return WriteTextFile(path, absl::StrCat("# ", ProvenanceText(p), "\n", body));
}

absl::Status WriteJson(const std::string& path, const Provenance& p,
                       nlohmann::json object) {
  object["provenance"] = {{"config_hash", p.config_hash}, {"seed", p.seed}};
  return WriteTextFile(path, object.dump(2) + "\n");
}

std::string FormatReal(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::json JsonReal(double v) {
  if (std::isfinite(v)) return v;
  return FormatReal(v);
}

nlohmann::json JsonMetric(const MaybeMetric& m) {
  return m.has_value() ? JsonReal(*m) : nlohmann::json(nullptr);
}

std::string FormatMetric(const MaybeMetric& m) {
  return m.has_value() ? FormatReal(*m) : "undefined";
}

}  // namespace decaph
