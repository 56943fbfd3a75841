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

#include "decaph/cli/experiment_config.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "decaph/util/status_macros.h"

namespace decaph {
namespace {

using Json = nlohmann::json;

absl::Status CheckKeys(const Json& j, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, " must be a JSON object"));
  }
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.contains(it.key())) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown key '", it.key(), "' in ", where));
    }
  }
  return absl::OkStatus();
}

// Numbers, or the strings "inf" / "infinity".
double ReadReal(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") {
      return std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument("expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

Json WriteReal(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

absl::StatusOr<SyntheticSpec> ParseSynthetic(const Json& j, const Task& task) {
  RETURN_IF_ERROR(CheckKeys(j, "data.synthetic",
                            {"sizes", "n_features", "class_balance",
                             "heterogeneity", "class_separation",
                             "label_noise", "seed"}));
  SyntheticSpec spec;
  spec.sizes = j.at("sizes").get<std::vector<std::size_t>>();
  spec.n_participants = spec.sizes.size();
  spec.n_features = j.at("n_features").get<std::size_t>();
  const Json& balance = j.at("class_balance");
  if (!balance.empty() && balance.front().is_number()) {
    spec.class_balance.assign(spec.n_participants,
                              balance.get<std::vector<double>>());
  } else {
    spec.class_balance = balance.get<std::vector<std::vector<double>>>();
  }
  spec.heterogeneity = j.value("heterogeneity", 0.0);
  spec.class_separation = j.value("class_separation", 2.0);
  spec.label_noise = j.value("label_noise", 0.0);
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.task = task;
  return spec;
}

Json SyntheticToJson(const SyntheticSpec& s) {
  return {{"sizes", s.sizes},
          {"n_features", s.n_features},
          {"class_balance", s.class_balance},
          {"heterogeneity", s.heterogeneity},
          {"class_separation", s.class_separation},
          {"label_noise", s.label_noise}};
}

absl::StatusOr<ExperimentConfig> ParseConfig(const Json& j) {
  ExperimentConfig c;
  RETURN_IF_ERROR(CheckKeys(j, "config",
                            {"data", "model", "protocol", "dp", "modes",
                             "folds", "seeds", "output_dir", "audit",
                             "commcost", "workers", "deterministic"}));
  // data
  if (j.contains("data")) {
    const Json& d = j.at("data");
    RETURN_IF_ERROR(CheckKeys(d, "data",
                              {"synthetic", "csv", "task", "num_classes",
                               "replicate_minority"}));
    ASSIGN_OR_RETURN(c.data.task,
                     ParseTask(d.value("task", std::string("binary")),
                               d.value("num_classes", 2)));
    if (d.contains("synthetic")) {
      ASSIGN_OR_RETURN(SyntheticSpec spec,
                       ParseSynthetic(d.at("synthetic"), c.data.task));
      c.data.synthetic = std::move(spec);
    }
    if (d.contains("csv")) {
      c.data.csv_paths = d.at("csv").get<std::vector<std::string>>();
    }
    if (d.contains("replicate_minority")) {
      const Json& r = d.at("replicate_minority");
      RETURN_IF_ERROR(
          CheckKeys(r, "data.replicate_minority", {"class", "factor"}));
      c.data.replicate_class = r.at("class").get<int>();
      c.data.replicate_factor = r.value("factor", 3);
    }
  }
  // model
  if (j.contains("model")) {
    const Json& m = j.at("model");
    RETURN_IF_ERROR(CheckKeys(m, "model",
                              {"type", "hidden", "head", "l2_weight_decay",
                               "learning_rate", "learning_rate_non_dp"}));
    c.model.type = m.value("type", c.model.type);
    c.model.hidden = m.value("hidden", std::vector<int>{});
    if (m.contains("head")) {
      ASSIGN_OR_RETURN(LossHead head,
                       ParseLossHead(m.at("head").get<std::string>()));
      c.model.head = head;
    }
    c.model.l2_weight_decay = m.value("l2_weight_decay", 0.0);
    c.model.learning_rate = m.value("learning_rate", c.model.learning_rate);
    c.model.learning_rate_non_dp =
        m.value("learning_rate_non_dp", c.model.learning_rate);
  }
  // protocol
  if (j.contains("protocol")) {
    const Json& p = j.at("protocol");
    RETURN_IF_ERROR(CheckKeys(p, "protocol",
                              {"aggregate_batch_target", "local_batch_size",
                               "max_rounds", "max_epochs", "auto_delta",
                               "scale_bits"}));
    ProtocolConfig& pc = c.protocol;
    pc.aggregate_batch_target =
        p.value("aggregate_batch_target", pc.aggregate_batch_target);
    pc.local_batch_size = p.value("local_batch_size", pc.local_batch_size);
    pc.max_rounds = p.value("max_rounds", pc.max_rounds);
    pc.max_epochs = p.value("max_epochs", pc.max_epochs);
    pc.auto_delta = p.value("auto_delta", pc.auto_delta);
    pc.scale_bits = p.value("scale_bits", pc.scale_bits);
  }
  if (j.contains("dp")) {
    const Json& d = j.at("dp");
    RETURN_IF_ERROR(CheckKeys(d, "dp",
                              {"clip_norm", "noise_multiplier",
                               "target_epsilon", "target_delta",
                               "alpha_grid"}));
    DpConfig& dp = c.protocol.dp;
    if (d.contains("clip_norm")) dp.clip_norm = ReadReal(d.at("clip_norm"));
    if (d.contains("noise_multiplier")) {
      const Json& nm = d.at("noise_multiplier");
      if (nm.is_string() && nm.get<std::string>() == "auto") {
        c.protocol.calibrate_noise = true;
      } else {
        dp.noise_multiplier = nm.get<double>();
      }
    }
    if (d.contains("target_epsilon")) {
      dp.target_epsilon = ReadReal(d.at("target_epsilon"));
    }
    dp.target_delta = d.value("target_delta", dp.target_delta);
    if (d.contains("alpha_grid")) {
      dp.alpha_grid = d.at("alpha_grid").get<std::vector<double>>();
    }
  }
  if (j.contains("modes")) c.modes = j.at("modes").get<std::vector<std::string>>();
  c.folds = j.value("folds", c.folds);
  if (j.contains("seeds")) {
    c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  }
  c.output_dir = j.value("output_dir", c.output_dir);
  c.workers = j.value("workers", c.workers);
  c.deterministic = j.value("deterministic", c.deterministic);
  if (j.contains("audit")) {
    const Json& a = j.at("audit");
    RETURN_IF_ERROR(CheckKeys(a, "audit",
                              {"n_shadow", "global_variance", "modes",
                               "target_epsilon"}));
    c.audit.n_shadow = a.value("n_shadow", c.audit.n_shadow);
    c.audit.global_variance = a.value("global_variance", false);
    if (a.contains("modes")) {
      c.audit.modes = a.at("modes").get<std::vector<std::string>>();
    }
    if (a.contains("target_epsilon")) {
      c.audit.target_epsilon = ReadReal(a.at("target_epsilon"));
    }
  }
  if (j.contains("commcost")) {
    const Json& cc = j.at("commcost");
    RETURN_IF_ERROR(CheckKeys(cc, "commcost", {"rounds", "rows"}));
    c.commcost.rounds = cc.value("rounds", c.commcost.rounds);
    if (cc.contains("rows")) {
      for (const Json& r : cc.at("rows")) {
        RETURN_IF_ERROR(
            CheckKeys(r, "commcost.rows[]", {"task", "participants", "params"}));
        c.commcost.rows.push_back({r.at("task").get<std::string>(),
                                   r.at("participants").get<std::int64_t>(),
                                   r.at("params").get<std::int64_t>()});
      }
    }
  }
  return c;
}

}  // namespace

absl::StatusOr<Architecture> ModelSpec::ToArchitecture(int input_dim,
                                                       const Task& task) const {
  const int k = task.num_classes;
  Architecture arch;
  LossHead head;
  switch (task.kind) {
    case TaskKind::kBinary:
      head = LossHead::kSigmoidBce;
      break;
    case TaskKind::kMulticlass:
      head = LossHead::kSoftmaxCe;
      break;
    case TaskKind::kMultilabel:
      head = LossHead::kMultilabelBce;
      break;
  }
  if (type == "logistic") {
    if (!hidden.empty()) {
      return absl::InvalidArgumentError("logistic model takes no hidden layers");
    }
    arch = task.kind == TaskKind::kBinary
               ? Architecture::Logistic(input_dim)
               : Architecture::Mlp(input_dim, {}, k, head);
  } else if (type == "svc") {
    if (task.kind == TaskKind::kMultilabel) {
      return absl::InvalidArgumentError("svc needs integer class labels");
    }
    arch = Architecture::LinearSvc(input_dim, k);
  } else if (type == "mlp") {
    if (this->head.has_value()) head = *this->head;
    const int out = head == LossHead::kSigmoidBce ? 1 : k;
    arch = Architecture::Mlp(input_dim, hidden, out, head);
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown model type '", type, "' (expected logistic, mlp, svc)"));
  }
  RETURN_IF_ERROR(arch.Validate());
  RETURN_IF_ERROR(arch.CheckTask(task));
  return arch;
}

std::vector<CommCostRow> DefaultCommCostRows() {
  return {{"GEMINI-MLP", 8, 166771},
          {"GEMINI-Linear", 8, 437},
          {"Pancreas-MLP", 5, 15659504},
          {"Pancreas-Linear", 5, 62236},
          {"Xray-DenseNet121", 3, 7035453}};
}

absl::StatusOr<ExperimentConfig> ExperimentConfig::FromJson(const Json& j) {
  absl::StatusOr<ExperimentConfig> c;
  try {
    c = ParseConfig(j);
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("config: ", e.what()));
  }
  if (!c.ok()) return c.status();
  RETURN_IF_ERROR(c->Validate());
  return c;
}

Json ExperimentConfig::ToJson() const {
  Json data_json = {{"task", TaskName(data.task)},
                    {"num_classes", data.task.num_classes}};
  if (data.synthetic) data_json["synthetic"] = SyntheticToJson(*data.synthetic);
  if (!data.csv_paths.empty()) data_json["csv"] = data.csv_paths;
  if (data.replicate_class) {
    data_json["replicate_minority"] = {{"class", *data.replicate_class},
                                  {"factor", data.replicate_factor}};
  }
  Json model_json = {{"type", model.type},
                     {"hidden", model.hidden},
                     {"l2_weight_decay", model.l2_weight_decay},
                     {"learning_rate", model.learning_rate},
                     {"learning_rate_non_dp", model.learning_rate_non_dp}};
  if (model.head) model_json["head"] = LossHeadName(*model.head);
  const DpConfig& dp = protocol.dp;
  Json audit_json = {{"n_shadow", audit.n_shadow},
                     {"global_variance", audit.global_variance},
                     {"modes", audit.modes}};
  if (audit.target_epsilon) {
    audit_json["target_epsilon"] = WriteReal(*audit.target_epsilon);
  }
  Json rows = Json::array();
  for (const CommCostRow& r : commcost.rows) {
    rows.push_back(
        {{"task", r.task}, {"participants", r.participants}, {"params", r.params}});
  }
  return {{"data", data_json},
          {"model", model_json},
          {"protocol",
           {{"aggregate_batch_target", protocol.aggregate_batch_target},
            {"local_batch_size", protocol.local_batch_size},
            {"max_rounds", protocol.max_rounds},
            {"max_epochs", protocol.max_epochs},
            {"auto_delta", protocol.auto_delta},
            {"scale_bits", protocol.scale_bits}}},
          {"dp",
           {{"clip_norm", WriteReal(dp.clip_norm)},
            {"noise_multiplier", protocol.calibrate_noise
                                     ? Json("auto")
                                     : Json(dp.noise_multiplier)},
            {"target_epsilon", WriteReal(dp.target_epsilon)},
            {"target_delta", dp.target_delta},
            {"alpha_grid", dp.alpha_grid}}},
          {"modes", modes},
          {"folds", folds},
          {"seeds", seeds},
          {"output_dir", output_dir},
          {"audit", audit_json},
          {"commcost", {{"rounds", commcost.rounds}, {"rows", rows}}},
          {"workers", workers},
          {"deterministic", deterministic}};
}

absl::Status ExperimentConfig::Validate() const {
  if (data.synthetic.has_value() == !data.csv_paths.empty()) {
    return absl::InvalidArgumentError(
        "data needs exactly one of 'synthetic' or 'csv'");
  }
  if (data.synthetic) RETURN_IF_ERROR(data.synthetic->Validate());
  if (data.replicate_factor < 1) {
    return absl::InvalidArgumentError("replicate_minority.factor must be >= 1");
  }
  if (modes.empty()) return absl::InvalidArgumentError("no modes requested");
  for (const std::string& m : modes) {
    if (m != "solo" && !ParseMode(m).ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "unknown mode '", m, "' (expected decaph, fl, local_dp, solo)"));
    }
  }
  for (const std::string& m : audit.modes) {
    if (!ParseMode(m).ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown audit mode '", m, "'"));
    }
  }
  if (folds < 2) return absl::InvalidArgumentError("folds must be >= 2");
  if (seeds.empty()) return absl::InvalidArgumentError("no seeds given");
  if (workers < 1) return absl::InvalidArgumentError("workers must be >= 1");
  if (audit.n_shadow < 4 || audit.n_shadow % 2 != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "audit.n_shadow must be even and >= 4 (each example needs two in- and "
        "two out-scores), got ",
        audit.n_shadow));
  }
  if (commcost.rounds < 1) {
    return absl::InvalidArgumentError("commcost.rounds must be >= 1");
  }
  if (!(model.learning_rate > 0) || !(model.learning_rate_non_dp > 0)) {
    return absl::InvalidArgumentError("learning rates must be > 0");
  }
  for (Mode mode : {Mode::kDecaph, Mode::kFl, Mode::kLocalDp}) {
    ProtocolConfig p = protocol;
    p.mode = mode;
    RETURN_IF_ERROR(p.Validate());
  }
  return absl::OkStatus();
}

Json ExperimentConfig::ResultJson() const {
  Json j = ToJson();
  j.erase("workers");
  j.erase("deterministic");
  j.erase("output_dir");
  return j;
}

std::string ExperimentConfig::Hash() const {
  const std::string text = ResultJson().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return absl::StrFormat("%016x", h);
}

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open config ", path));
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": ", e.what()));
  }
  absl::StatusOr<ExperimentConfig> c = ExperimentConfig::FromJson(j);
  if (!c.ok()) {
    return absl::Status(c.status().code(),
                        absl::StrCat(path, ": ", c.status().message()));
  }
  return c;
}

absl::StatusOr<std::vector<std::string>> ParseModeList(const std::string& csv) {
  std::vector<std::string> out;
  for (absl::string_view part : absl::StrSplit(csv, ',', absl::SkipEmpty())) {
    if (part != "solo" && !ParseMode(std::string_view(part.data(), part.size())).ok()) {
      return absl::InvalidArgumentError(absl::StrCat("unknown mode '", part, "'"));
    }
    out.emplace_back(part);
  }
  if (out.empty()) return absl::InvalidArgumentError("empty mode list");
  return out;
}

absl::StatusOr<std::vector<std::uint64_t>> ParseSeedList(const std::string& csv) {
  std::vector<std::uint64_t> out;
  for (absl::string_view part : absl::StrSplit(csv, ',', absl::SkipEmpty())) {
    std::uint64_t v;
    if (!absl::SimpleAtoi(part, &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad seed '", part, "'"));
    }
    out.push_back(v);
  }
  if (out.empty()) return absl::InvalidArgumentError("empty seed list");
  return out;
}

}  // namespace decaph
