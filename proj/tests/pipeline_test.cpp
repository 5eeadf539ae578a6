// Copyright 2026 The adapteval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "adapteval/error.hpp"
#include "adapteval/pipeline/commands.hpp"
#include "adapteval/util/csv.hpp"
#include "test_support.hpp"

namespace adapteval::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::TempDir;

class ToyRun {
 public:
  ToyRun() : config_(RunConfig::load(testing::data_dir() / "toy" / "config.json")) {
    config_.out_dir = tmp_ / "out";
    config_.cache_dir = tmp_ / "cache";
  }

  RunConfig& config() { return config_; }
  fs::path out() const { return config_.out_dir; }
  const TempDir& tmp() const { return tmp_; }

  CommandResult adapt(const BackendFactory& f = nullptr) { return cmd_adapt(config_, log_, f); }
  CommandResult evaluate(const BackendFactory& f = nullptr) { return cmd_evaluate(config_, log_, f); }
  CommandResult correlate() { return cmd_correlate(config_, log_); }
  CommandResult report() { return cmd_report(config_, log_); }

  void all() {
    ASSERT_EQ(adapt().exit_code, 0) << log_.str();
    ASSERT_EQ(evaluate().exit_code, 0) << log_.str();
    ASSERT_EQ(correlate().exit_code, 0) << log_.str();
    ASSERT_EQ(report().exit_code, 0) << log_.str();
  }

  json manifest(const std::string& command) const {
    return json::parse(util::read_file(out() / "manifests" / (command + ".json")));
  }

 private:
  TempDir tmp_{"pipeline"};
  RunConfig config_;
  std::ostringstream log_;
};

std::vector<json> read_jsonl(const fs::path& p) {
  std::vector<json> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

std::map<std::string, std::string> tau_by_aspect(const fs::path& csv) {
  std::ifstream in(csv);
  const auto rows = util::read_csv(in);
  std::map<std::string, std::string> out;
  for (std::size_t i = 1; i < rows.size(); ++i) out[rows[i][0]] = rows[i][2];
  return out;
}

TEST(Pipeline, DeterministicAcrossRuns) {
  ToyRun a;
  ToyRun b;
  a.all();
  b.all();
  const auto ha = testing::tree_hashes(a.out());
  EXPECT_EQ(ha, testing::tree_hashes(b.out()));
  EXPECT_TRUE(ha.count("report/report.md"));
  EXPECT_TRUE(ha.count("evaluation/echo-subst/strategies.jsonl"));

  ASSERT_EQ(a.evaluate().exit_code, 0);
  EXPECT_EQ(ha, testing::tree_hashes(a.out()));
  EXPECT_EQ(a.manifest("evaluate")["counters"]["backend_calls"], 0);
  EXPECT_GT(a.manifest("evaluate")["counters"]["cache_hits"].get<int>(), 0);
}

TEST(Pipeline, ResumesAfterDeletedOutput) {
  ToyRun run;
  run.all();
  const auto before = testing::tree_hashes(run.out());
  fs::remove(run.out() / "evaluation" / "echo-subst" / "strategies.jsonl");
  ASSERT_EQ(run.evaluate().exit_code, 0);
  ASSERT_EQ(run.report().exit_code, 0);
  EXPECT_EQ(before, testing::tree_hashes(run.out()));
  EXPECT_EQ(run.manifest("evaluate")["counters"]["backend_calls"], 0);
}

TEST(Pipeline, UnparseableJudgeYieldsNulls) {
  ToyRun run;
  ASSERT_EQ(run.adapt().exit_code, 0);
  const auto babble = [](const BackendSpec& spec, const RunConfig& c) -> std::unique_ptr<judge::CompletionBackend> {
    if (spec.kind != BackendKind::Heuristic) return make_backend(spec, c);
    return std::make_unique<judge::FunctionBackend>(
        spec.model, [](const judge::CompletionRequest&) { return std::string("I am not sure what you mean."); });
  };
  const auto r = run.evaluate(babble);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.errors.empty());
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_GT(run.manifest("evaluate")["counters"]["requeries"].get<int>(), 0);

  const auto m = json::parse(util::read_file(run.out() / "evaluation" / "echo-subst" / "metrics.json"));
  EXPECT_EQ(m["edits"]["n_edits"], 0);
  EXPECT_GT(m["extraction"]["null"].get<int>(), 0);
  EXPECT_EQ(m["extraction"]["extracted"], 0);
  EXPECT_GT(m["dialog_scores"]["n_null"].get<int>(), 0);
  EXPECT_EQ(m["dialog_scores"]["n_dialogs"], 0);
  for (const auto& rec : read_jsonl(run.out() / "evaluation" / "echo-subst" / "dialog_scores.jsonl")) {
    EXPECT_TRUE(rec["scores"].is_null());
  }
  EXPECT_EQ(run.report().exit_code, 0);
}

TEST(Pipeline, EmptyCorpusWarns) {
  ToyRun run;
  const auto dialogs = run.tmp() / "empty.jsonl";
  util::write_file_atomic(dialogs, "");
  run.config().dialogs = dialogs;
  run.config().annotations.clear();
  std::ostringstream log;
  for (const auto& r : {cmd_validate_corpus(run.config(), log), run.adapt(), run.evaluate()}) {
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_FALSE(r.warnings.empty());
  }
}

TEST(Pipeline, CorrelateAgainstJudgeScores) {
  ToyRun run;
  run.all();
  const auto scores = read_jsonl(run.out() / "evaluation" / "echo-subst" / "dialog_scores.jsonl");
  for (const bool reversed : {false, true}) {
    std::string csv = "dialog_id,rater_id,naturalness,localisation,content_preservation,offensiveness,stereotypical\n";
    for (const auto& rec : scores) {
      if (rec["scores"].is_null()) continue;
      csv += rec["dialog_id"].get<std::string>() + ",r1";
      for (const char* a : {"naturalness", "localisation", "content_preservation", "offensiveness", "stereotypical"}) {
        const int v = rec["scores"][a]["score"].get<int>();
        csv += "," + std::to_string(reversed ? 6 - v : v);
      }
      csv += "\n";
    }
    const auto ratings = run.tmp() / (reversed ? "reversed.csv" : "same.csv");
    util::write_file_atomic(ratings, csv);
    run.config().human_ratings = ratings;
    ASSERT_EQ(run.correlate().exit_code, 0);
    int defined = 0;
    for (const auto& [aspect, tau] : tau_by_aspect(run.out() / "correlation" / "human_vs_judge.csv")) {
      if (tau == "n/a") continue;
      ++defined;
      EXPECT_EQ(tau, reversed ? "-1.000000" : "1.000000") << aspect;
    }
    EXPECT_GT(defined, 0);
  }
}

TEST(Pipeline, ReportHasEverySection) {
  ToyRun run;
  run.all();
  const auto md = util::read_file(run.out() / "report" / "report.md");
  for (const char* heading : {"## Edit-level scores", "## Dialog-level scores", "## CSI edited (%)",
                              "## Adaptation strategies", "## Aspect correlations", "## Judge vs human ratings"}) {
    EXPECT_NE(md.find(heading), std::string::npos) << heading;
  }
  EXPECT_NE(md.find("83.33"), std::string::npos);
  EXPECT_NE(md.find("100.00 / 1.69 / 0, 31.3, 68.8 / 0.00"), std::string::npos);
  for (const char* csv : {"edit_scores.csv", "dialog_scores.csv", "csi_edited.csv",
                          "strategies.csv", "aspect_correlations.csv"}) {
    EXPECT_TRUE(fs::exists(run.out() / "report" / csv)) << csv;
  }
}

TEST(Pipeline, ZeroCsiMarksSectionEmpty) {
  ToyRun run;
  const auto annotations = run.tmp() / "none.jsonl";
  util::write_file_atomic(annotations, "");
  run.config().annotations = annotations;
  ASSERT_EQ(run.adapt().exit_code, 0);
  ASSERT_EQ(run.evaluate().exit_code, 0);
  ASSERT_EQ(run.report().exit_code, 0);
  const auto md = util::read_file(run.out() / "report" / "report.md");
  EXPECT_NE(md.find("Empty: no analysable CSI annotations."), std::string::npos);
}

TEST(Pipeline, ExitCodeTracksManifestErrors) {
  ToyRun run;
  const auto missing = run.evaluate();
  EXPECT_EQ(missing.exit_code, 1);
  EXPECT_FALSE(missing.errors.empty());
  EXPECT_EQ(run.manifest("evaluate")["exit_code"], 1);
  EXPECT_FALSE(run.manifest("evaluate")["errors"].empty());

  ASSERT_EQ(run.adapt().exit_code, 0);
  const auto ok = run.evaluate();
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_TRUE(ok.errors.empty());
  EXPECT_EQ(run.manifest("evaluate")["exit_code"], 0);
  EXPECT_TRUE(run.manifest("evaluate")["errors"].empty());

  const auto failing = [](const BackendSpec& spec, const RunConfig& c) -> std::unique_ptr<judge::CompletionBackend> {
    if (spec.kind != BackendKind::Heuristic) return make_backend(spec, c);
    return std::make_unique<judge::FunctionBackend>(spec.model, [](const judge::CompletionRequest&) -> std::string {
      throw TransportError("refused", 403, false);
    });
  };
  run.config().cache_dir = run.tmp() / "cold-cache";
  const auto refused = run.evaluate(failing);
  EXPECT_EQ(refused.exit_code, 1);
  EXPECT_EQ(run.manifest("evaluate")["exit_code"], 1);
}

TEST(Pipeline, ConfigErrorsThrowBeforeRunning) {
  ToyRun run;
  run.config().csi_match_threshold = 150;
  EXPECT_THROW(run.evaluate(), ValidationError);
  EXPECT_FALSE(fs::exists(run.out() / "manifests" / "evaluate.json"));
}

}  // namespace
}  // namespace adapteval::pipeline
