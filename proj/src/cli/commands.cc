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

#include "decaph/cli/commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <thread>
#include <tuple>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "decaph/audit/shadow.h"
#include "decaph/cli/output.h"
#include "decaph/data/csv.h"
#include "decaph/data/normalize.h"
#include "decaph/data/synthetic.h"
#include "decaph/data/transforms.h"
#include "decaph/eval/roc.h"
#include "decaph/numerics/prng.h"
#include "decaph/secagg/aggregator.h"
#include "decaph/secagg/comm_cost.h"
#include "decaph/util/logging.h"
#include "decaph/util/status_macros.h"

namespace decaph {
namespace {

using Json = nlohmann::json;

// Runs job(0..n-1) on up to `workers` threads; results keep job order.
template <typename T>
std::vector<absl::StatusOr<T>> RunJobs(
    std::size_t n, int workers,
    const std::function<absl::StatusOr<T>(std::size_t)>& job) {
  std::vector<absl::StatusOr<T>> results(n);
  const std::size_t threads =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = job(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) results[i] = job(i);
    });
  }
  for (std::thread& th : pool) th.join();
  return results;
}

std::string SeedList(const std::vector<std::uint64_t>& seeds) {
  return absl::StrJoin(seeds, ";");
}

Provenance ProvenanceFor(const ExperimentConfig& config,
                         const std::string& seed) {
  return {config.Hash(), seed};
}

std::string JoinPath(const std::string& a, const std::string& b) {
  return a.empty() ? b : absl::StrCat(a, "/", b);
}

bool IsDpMode(const std::string& mode) {
  return mode == "decaph" || mode == "local_dp";
}

double LearningRateFor(const ModelSpec& model, const std::string& mode) {
  return IsDpMode(mode) ? model.learning_rate : model.learning_rate_non_dp;
}

// Per-example score for the positive class of a binary task.
Eigen::VectorXd PositiveScore(const ModelState& model,
                              const Eigen::MatrixXd& outputs) {
  if (outputs.cols() == 1) return outputs.col(0);
  if (model.arch.head == LossHead::kMultiMargin) {
    return outputs.col(1) - outputs.col(0);
  }
  return outputs.col(1);
}

absl::StatusOr<std::vector<MetricValue>> BinaryEvaluation(
    const ModelState& model, const Eigen::MatrixXd& outputs,
    const DatasetShard& test) {
  const Eigen::VectorXd score = PositiveScore(model, outputs);
  const std::vector<double> scores(score.data(), score.data() + score.size());
  std::vector<int> labels(test.num_examples());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = test.labels(static_cast<Eigen::Index>(i), 0);
  }
  const bool both = std::count(labels.begin(), labels.end(), 1) > 0 &&
                    std::count(labels.begin(), labels.end(), 0) > 0;
  if (!both) {
    LogWarning("test rows hold a single class; binary metrics are undefined");
    std::vector<MetricValue> out;
    for (const char* name :
         {"auroc", "youden_threshold", "ppv", "npv", "f1_negative",
          "f1_positive", "macro_f1", "weighted_f1"}) {
      out.push_back({name, std::nullopt});
    }
    return out;
  }
  ASSIGN_OR_RETURN(double auroc, Auroc(scores, labels));
  ASSIGN_OR_RETURN(double threshold, YoudenThreshold(scores, labels));
  ASSIGN_OR_RETURN(BinaryReport report,
                   BinaryMetrics(scores, labels, threshold));
  return std::vector<MetricValue>{{"auroc", auroc},
                                  {"youden_threshold", threshold},
                                  {"ppv", report.ppv},
                                  {"npv", report.npv},
                                  {"f1_negative", report.f1_negative},
                                  {"f1_positive", report.f1_positive},
                                  {"macro_f1", report.macro_f1},
                                  {"weighted_f1", report.weighted_f1}};
}

absl::StatusOr<std::vector<MetricValue>> MulticlassEvaluation(
    const Eigen::MatrixXd& outputs, const DatasetShard& test) {
  const int k = test.task.num_classes;
  std::vector<int> preds(test.num_examples());
  std::vector<int> labels(test.num_examples());
  std::int64_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    Eigen::Index best = 0;
    outputs.row(row).maxCoeff(&best);
    preds[i] = static_cast<int>(best);
    labels[i] = test.labels(row, 0);
    if (preds[i] == labels[i]) ++correct;
  }
  ASSIGN_OR_RETURN(MulticlassReport report,
                   MulticlassMetrics(preds, labels, k));
  return std::vector<MetricValue>{
      {"median_f1", report.median_f1},
      {"weighted_precision", report.weighted_precision},
      {"weighted_recall", report.weighted_recall},
      {"accuracy", Ratio(correct, static_cast<std::int64_t>(preds.size()))}};
}

absl::StatusOr<std::vector<MetricValue>> MultilabelEvaluation(
    const Eigen::MatrixXd& outputs, const DatasetShard& test) {
  std::vector<MetricValue> per_label;
  double sum = 0.0;
  int defined = 0;
  for (int j = 0; j < test.task.num_classes; ++j) {
    const std::vector<double> scores(outputs.col(j).data(),
                                     outputs.col(j).data() + outputs.rows());
    std::vector<int> labels(test.num_examples());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      labels[i] = test.labels(static_cast<Eigen::Index>(i), j);
    }
    MaybeMetric value;
    if (std::count(labels.begin(), labels.end(), 1) > 0 &&
        std::count(labels.begin(), labels.end(), 0) > 0) {
      ASSIGN_OR_RETURN(double auroc, Auroc(scores, labels));
      value = auroc;
      sum += auroc;
      ++defined;
    }
    per_label.push_back({absl::StrCat("auroc_", j), value});
  }
  std::vector<MetricValue> out = {
      {"mean_auroc", defined > 0 ? MaybeMetric(sum / defined) : std::nullopt}};
  out.insert(out.end(), per_label.begin(), per_label.end());
  return out;
}

absl::StatusOr<std::vector<DatasetShard>> NormalizeWith(
    const std::vector<DatasetShard>& train, const DatasetShard& test,
    std::uint64_t root_seed, int scale_bits, DatasetShard& test_out) {
  ASSIGN_OR_RETURN(FixedPointCodec codec, FixedPointCodec::Create(scale_bits));
  SecureAggregator aggregator(root_seed, codec);
  ASSIGN_OR_RETURN(NormalizationStats stats,
                   ComputeGlobalStats(train, aggregator));
  std::vector<DatasetShard> out;
  for (const DatasetShard& shard : train) {
    ASSIGN_OR_RETURN(DatasetShard normalized,
                     ApplyNormalization(shard, stats));
    out.push_back(std::move(normalized));
  }
  ASSIGN_OR_RETURN(test_out, ApplyNormalization(test, stats));
  return out;
}

std::string RunTag(std::uint64_t seed, int fold, const ModeRun& run) {
  std::string tag = absl::StrCat("seed", seed, "_fold", fold, "_", run.mode);
  if (run.participant != "all") absl::StrAppend(&tag, "_p", run.participant);
  return tag;
}

}  // namespace

absl::StatusOr<std::vector<MetricValue>> EvaluateModel(
    const ModelState& model, const DatasetShard& test) {
  if (test.num_examples() == 0) {
    return absl::InvalidArgumentError("cannot evaluate on an empty test set");
  }
  ASSIGN_OR_RETURN(Eigen::MatrixXd outputs, Predict(model, test.features));
  switch (test.task.kind) {
    case TaskKind::kBinary:
      return BinaryEvaluation(model, outputs, test);
    case TaskKind::kMulticlass:
      return MulticlassEvaluation(outputs, test);
    case TaskKind::kMultilabel:
      return MultilabelEvaluation(outputs, test);
  }
  return absl::InternalError("unknown task kind");
}

absl::StatusOr<std::vector<DatasetShard>> LoadShards(
    const ExperimentConfig& config, std::uint64_t seed) {
  if (config.data.synthetic) {
    SyntheticSpec spec = *config.data.synthetic;
    spec.seed = seed;
    return Generate(spec);
  }
  std::vector<DatasetShard> shards;
  for (std::size_t h = 0; h < config.data.csv_paths.size(); ++h) {
    ASSIGN_OR_RETURN(DatasetShard shard,
                     LoadShardCsv(config.data.csv_paths[h],
                                  static_cast<ParticipantId>(h),
                                  config.data.task));
    shards.push_back(std::move(shard));
  }
  return shards;
}

absl::StatusOr<std::vector<ModeRun>> RunFold(
    const ExperimentConfig& config, const std::vector<DatasetShard>& shards,
    std::uint64_t seed, int fold) {
  ASSIGN_OR_RETURN(FoldSplit split, KFold(shards, config.folds, fold, seed));
  std::vector<DatasetShard> train = std::move(split.train);
  if (config.data.replicate_class && config.data.replicate_factor > 1) {
    for (DatasetShard& shard : train) {
      ASSIGN_OR_RETURN(
          shard, ReplicateMinority(
                     shard, *config.data.replicate_class,
                     config.data.replicate_factor,
                     MakeStreamId(StreamDomain::kShuffle,
                                  {seed, static_cast<std::uint64_t>(fold),
                                   shard.participant_id})));
    }
  }
  ASSIGN_OR_RETURN(DatasetShard raw_test, Pool(split.test));
  const int scale_bits = config.protocol.scale_bits;

  DatasetShard pooled_test;
  ASSIGN_OR_RETURN(
      std::vector<DatasetShard> pooled_train,
      NormalizeWith(train, raw_test,
                    MakeStreamId({seed, static_cast<std::uint64_t>(fold), 0}),
                    scale_bits, pooled_test));

  const int input_dim = static_cast<int>(raw_test.num_features());
  ASSIGN_OR_RETURN(Architecture arch,
                   config.model.ToArchitecture(input_dim, config.data.task));
  const std::uint64_t init_seed =
      MakeStreamId({seed, static_cast<std::uint64_t>(fold), 1});

  std::vector<ModeRun> runs;
  for (const std::string& mode : config.modes) {
    ProtocolConfig protocol = config.protocol;
    protocol.seed = MakeStreamId({seed, static_cast<std::uint64_t>(fold), 2});
    protocol.leader_seed =
        MakeStreamId({seed, static_cast<std::uint64_t>(fold), 3});
    protocol.parallel = false;
    ASSIGN_OR_RETURN(ModelState initial,
                     ModelState::Initialize(arch, config.model.l2_weight_decay,
                                            LearningRateFor(config.model, mode),
                                            init_seed));
    if (mode == "solo") {
      protocol.mode = Mode::kFl;
      for (std::size_t h = 0; h < train.size(); ++h) {
        DatasetShard local_test;
        ASSIGN_OR_RETURN(
            std::vector<DatasetShard> local,
            NormalizeWith({train[h]}, raw_test,
                          MakeStreamId({seed, static_cast<std::uint64_t>(fold),
                                        4, h}),
                          scale_bits, local_test));
        ModeRun run{mode, absl::StrCat(train[h].participant_id), {}, {}};
        ASSIGN_OR_RETURN(run.train, Train(protocol, std::move(local), initial));
        ASSIGN_OR_RETURN(run.metrics, EvaluateModel(run.train.model, local_test));
        runs.push_back(std::move(run));
      }
      continue;
    }
    ASSIGN_OR_RETURN(protocol.mode, ParseMode(mode));
    ModeRun run{mode, "all", {}, {}};
    ASSIGN_OR_RETURN(run.train, Train(protocol, pooled_train, initial));
    ASSIGN_OR_RETURN(run.metrics, EvaluateModel(run.train.model, pooled_test));
    runs.push_back(std::move(run));
  }
  return runs;
}

int ResolveWorkers(const ExperimentConfig& config) {
  if (config.deterministic) return 1;
  int workers = config.workers;
  if (const char* env = std::getenv("DECAPH_WORKERS")) {
    int parsed = 0;
    if (absl::SimpleAtoi(env, &parsed) && parsed >= 1) {
      workers = parsed;
    } else {
      LogWarning(absl::StrCat("ignoring invalid DECAPH_WORKERS='", env, "'"));
    }
  }
  return std::max(workers, 1);
}

absl::Status CmdTrain(const ExperimentConfig& config) {
  RETURN_IF_ERROR(config.Validate());
  const std::string& out = config.output_dir;
  const std::string seeds = SeedList(config.seeds);

  struct Job {
    std::uint64_t seed;
    int fold;
  };
  std::vector<Job> jobs;
  for (std::uint64_t seed : config.seeds) {
    for (int fold = 0; fold < config.folds; ++fold) jobs.push_back({seed, fold});
  }
  // Shards depend only on the seed; load them once per seed up front.
  std::map<std::uint64_t, std::vector<DatasetShard>> data;
  for (std::uint64_t seed : config.seeds) {
    if (data.count(seed)) continue;
    ASSIGN_OR_RETURN(data[seed], LoadShards(config, seed));
  }
  std::function<absl::StatusOr<std::vector<ModeRun>>(std::size_t)> job =
      [&](std::size_t i) {
        return RunFold(config, data.at(jobs[i].seed), jobs[i].seed,
                       jobs[i].fold);
      };
  auto results = RunJobs(jobs.size(), ResolveWorkers(config), job);

  std::string metrics = "seed,fold,mode,participant,metric,value\n";
  // (mode order, participant, metric order) -> defined values
  using Key = std::tuple<std::size_t, std::string, std::string>;
  std::map<Key, std::pair<std::vector<double>, std::int64_t>> pooled;
  std::map<std::string, std::size_t> metric_order;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!results[i].ok()) {
      return absl::Status(
          results[i].status().code(),
          absl::StrCat("seed ", jobs[i].seed, " fold ", jobs[i].fold, ": ",
                       results[i].status().message()));
    }
    const std::string seed = absl::StrCat(jobs[i].seed);
    for (const ModeRun& run : *results[i]) {
      const std::size_t mode_rank = static_cast<std::size_t>(
          std::find(config.modes.begin(), config.modes.end(), run.mode) -
          config.modes.begin());
      for (const MetricValue& m : run.metrics) {
        absl::StrAppend(&metrics, seed, ",", jobs[i].fold, ",", run.mode, ",",
                        run.participant, ",", m.name, ",",
                        FormatMetric(m.value), "\n");
        metric_order.emplace(m.name, metric_order.size());
        auto& cell = pooled[{mode_rank, run.participant, m.name}];
        ++cell.second;
        if (m.value) cell.first.push_back(*m.value);
      }
      const std::string tag = RunTag(jobs[i].seed, jobs[i].fold, run);
      const Provenance prov = ProvenanceFor(config, seed);
      RETURN_IF_ERROR(WriteCsv(JoinPath(out, "rounds/" + tag + ".csv"), prov,
                               RoundLogCsv(run.train.log)));
      Json ledger = {{"mode", run.mode},
                     {"participant", run.participant},
                     {"stop_reason", run.train.stop_reason},
                     {"rounds", run.train.log.size()},
                     {"sampling_rate", run.train.sampling_rate},
                     {"participant_bytes", run.train.traffic.participant_bytes},
                     {"aggregator_bytes", run.train.traffic.aggregator_bytes},
                     {"ledger", run.train.ledger}};
      RETURN_IF_ERROR(
          WriteJson(JoinPath(out, "ledgers/" + tag + ".json"), prov, ledger));
    }
  }
  const Provenance prov = ProvenanceFor(config, seeds);
  RETURN_IF_ERROR(WriteCsv(JoinPath(out, "metrics.csv"), prov, metrics));

  // Rows ordered by requested mode, participant, then first appearance of the
  // metric.
  std::vector<std::pair<Key, std::pair<std::vector<double>, std::int64_t>>>
      rows(pooled.begin(), pooled.end());
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    const auto& [am, ap, an] = a.first;
    const auto& [bm, bp, bn] = b.first;
    if (am != bm) return am < bm;
    if (ap != bp) {
      // "all" first, then participants numerically.
      if (ap == "all" || bp == "all") return ap == "all";
      return std::stoll(ap) < std::stoll(bp);
    }
    return metric_order.at(an) < metric_order.at(bn);
  });
  std::string summary = "mode,participant,metric,runs,defined,mean,sd\n";
  for (const auto& [key, cell] : rows) {
    const auto& [mode_rank, participant, metric] = key;
    const std::vector<double>& v = cell.first;
    MaybeMetric mean;
    MaybeMetric sd;
    if (!v.empty()) {
      double s = 0.0;
      for (double x : v) s += x;
      mean = s / static_cast<double>(v.size());
    }
    if (v.size() >= 2) {
      double ss = 0.0;
      for (double x : v) ss += (x - *mean) * (x - *mean);
      sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    absl::StrAppend(&summary, config.modes[mode_rank], ",", participant, ",",
                    metric, ",", cell.second, ",", v.size(), ",",
                    FormatMetric(mean), ",", FormatMetric(sd), "\n");
  }
  RETURN_IF_ERROR(WriteCsv(JoinPath(out, "summary.csv"), prov, summary));
  return WriteJson(JoinPath(out, "config.json"), prov, config.ResultJson());
}

absl::Status CmdAudit(const ExperimentConfig& config) {
  RETURN_IF_ERROR(config.Validate());
  const std::string& out = config.output_dir;
  Json runs = Json::array();
  std::map<std::string, std::vector<double>> aurocs;
  for (std::uint64_t seed : config.seeds) {
    ASSIGN_OR_RETURN(std::vector<DatasetShard> raw, LoadShards(config, seed));
    ASSIGN_OR_RETURN(FixedPointCodec codec,
                     FixedPointCodec::Create(config.protocol.scale_bits));
    SecureAggregator aggregator(MakeStreamId({seed, 0xa0d17}), codec);
    ASSIGN_OR_RETURN(std::vector<DatasetShard> shards,
                     GlobalNormalize(raw, aggregator));
    ASSIGN_OR_RETURN(
        Architecture arch,
        config.model.ToArchitecture(static_cast<int>(shards[0].num_features()),
                                    config.data.task));
    const Provenance prov = ProvenanceFor(config, absl::StrCat(seed));
    for (const std::string& mode_name : config.audit.modes) {
      ProtocolConfig protocol = config.protocol;
      ASSIGN_OR_RETURN(protocol.mode, ParseMode(mode_name));
      if (config.audit.target_epsilon) {
        protocol.dp.target_epsilon = *config.audit.target_epsilon;
      }
      ASSIGN_OR_RETURN(
          ModelState initial,
          ModelState::Initialize(arch, config.model.l2_weight_decay,
                                 LearningRateFor(config.model, mode_name),
                                 seed));
      const AuditConfig audit{config.audit.n_shadow,
                              config.audit.global_variance, seed,
                              ResolveWorkers(config)};
      ASSIGN_OR_RETURN(AuditResult result,
                       AuditMode(protocol, shards, initial, audit));

      const std::string tag = absl::StrCat("seed", seed, "_", mode_name);
      std::string roc = "threshold,fpr,tpr\n";
      for (const RocPoint& p : result.roc.points) {
        absl::StrAppend(&roc, FormatReal(p.threshold), ",", FormatReal(p.fpr),
                        ",", FormatReal(p.tpr), "\n");
      }
      RETURN_IF_ERROR(
          WriteCsv(JoinPath(out, "audit/roc_" + tag + ".csv"), prov, roc));
      std::string scores = "example_id,lira_statistic,is_member\n";
      for (const AttackScore& s : result.scores) {
        absl::StrAppend(&scores, s.example_id, ",",
                        FormatReal(s.lira_statistic), ",",
                        s.is_member ? 1 : 0, "\n");
      }
      RETURN_IF_ERROR(WriteCsv(JoinPath(out, "audit/scores_" + tag + ".csv"),
                               prov, scores));
      Json tpr = Json::array();
      for (const TprAtFpr& t : result.roc.tpr_at_fpr) {
        tpr.push_back({{"fpr", t.fpr_limit}, {"tpr", t.tpr}});
      }
      runs.push_back({{"seed", seed},
                      {"mode", mode_name},
                      {"auroc", result.roc.auroc},
                      {"tpr_at_fpr", tpr},
                      {"target_epsilon", JsonReal(result.target_epsilon)},
                      {"target_rounds", result.target_rounds},
                      {"n_shadow", config.audit.n_shadow},
                      {"global_variance", config.audit.global_variance}});
      aurocs[mode_name].push_back(result.roc.auroc);
    }
  }
  Json summary = Json::object();
  for (const std::string& mode_name : config.audit.modes) {
    const std::vector<double>& v = aurocs[mode_name];
    double s = 0.0;
    for (double x : v) s += x;
    summary[mode_name] = {{"mean_auroc", s / static_cast<double>(v.size())},
                          {"seeds", v.size()}};
  }
  return WriteJson(JoinPath(out, "audit/audit_report.json"),
                   ProvenanceFor(config, SeedList(config.seeds)),
                   {{"runs", runs}, {"summary", summary}});
}

std::string CommCostCsv(const CommCostOptions& options) {
  const std::vector<CommCostRow> rows =
      options.rows.empty() ? DefaultCommCostRows() : options.rows;
  const std::uint64_t rounds = static_cast<std::uint64_t>(options.rounds);
  std::string csv =
      "task,participants,params,rounds,with_secagg_participant_bytes,"
      "with_secagg_aggregator_bytes,without_secagg_participant_bytes,"
      "without_secagg_aggregator_bytes\n";
  for (const CommCostRow& row : rows) {
    const auto h = static_cast<std::size_t>(row.participants);
    const auto len = static_cast<std::size_t>(row.params);
    const CommCost with = ComputeCommCost(h, len, true);
    const CommCost without = ComputeCommCost(h, len, false);
    absl::StrAppend(&csv, row.task, ",", row.participants, ",", row.params,
                    ",", rounds, ",", with.participant_bytes * rounds, ",",
                    with.aggregator_bytes * rounds, ",",
                    without.participant_bytes * rounds, ",",
                    without.aggregator_bytes * rounds, "\n");
  }
  return csv;
}

absl::Status CmdCommCost(const ExperimentConfig& config) {
  if (config.commcost.rounds < 1) {
    return absl::InvalidArgumentError("commcost.rounds must be >= 1");
  }
  for (const CommCostRow& row : config.commcost.rows) {
    if (row.participants < 1 || row.params < 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "commcost row '", row.task, "' needs participants and params >= 1"));
    }
  }
  return WriteCsv(JoinPath(config.output_dir, "commcost.csv"),
                  ProvenanceFor(config, SeedList(config.seeds)),
                  CommCostCsv(config.commcost));
}

absl::Status CmdGenData(const ExperimentConfig& config) {
  if (!config.data.synthetic) {
    return absl::InvalidArgumentError("gen-data needs a data.synthetic block");
  }
  RETURN_IF_ERROR(config.data.synthetic->Validate());
  for (std::uint64_t seed : config.seeds) {
    ASSIGN_OR_RETURN(std::vector<DatasetShard> shards,
                     LoadShards(config, seed));
    const std::string dir =
        JoinPath(config.output_dir, absl::StrCat("data/seed_", seed));
    const std::string comment =
        ProvenanceText(ProvenanceFor(config, absl::StrCat(seed)));
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      return absl::UnavailableError(
          absl::StrCat("cannot create ", dir, ": ", ec.message()));
    }
    for (const DatasetShard& shard : shards) {
      RETURN_IF_ERROR(WriteShardCsv(
          JoinPath(dir, absl::StrCat("participant_", shard.participant_id,
                                     ".csv")),
          shard, comment));
    }
  }
  return absl::OkStatus();
}

}  // namespace decaph
