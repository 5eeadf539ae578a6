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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "adapteval/corpus.hpp"
#include "adapteval/error.hpp"
#include "adapteval/pipeline/commands.hpp"
#include "adapteval/pipeline/config.hpp"
#include "adapteval/pipeline/manifest.hpp"
#include "adapteval/stats.hpp"
#include "adapteval/util/io.hpp"

namespace fs = std::filesystem;
using namespace adapteval;
using namespace adapteval::pipeline;

namespace {

constexpr int kExitConfig = 2;

struct PipelineArgs {
  std::string config;
  Overrides overrides;
};

void add_pipeline_options(CLI::App* sub, PipelineArgs& a, bool judge, bool human) {
  sub->add_option("-c,--config", a.config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--out-dir", a.overrides.out_dir, "output directory");
  sub->add_option("--cache-dir", a.overrides.cache_dir, "response cache directory");
  sub->add_option("--max-inflight", a.overrides.max_inflight, "concurrent backend requests")
      ->check(CLI::Range(1, 256));
  sub->add_option("--csi-match-threshold", a.overrides.csi_match_threshold,
                  "fuzzy match threshold for CSI surfaces (0-100)")
      ->check(CLI::Range(0, 100));
  if (judge) sub->add_option("--judge-model", a.overrides.judge_model, "judge model id");
  if (human) {
    sub->add_option("--significance", a.overrides.significance, "significance level")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--human-ratings", a.overrides.human_ratings, "human ratings CSV")
        ->check(CLI::ExistingFile);
  }
}

int run_pipeline(Command cmd, const PipelineArgs& a) {
  RunConfig config;
  try {
    config = RunConfig::load(a.config);
    apply_overrides(config, a.overrides);
    config.validate(cmd);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  CommandResult r;
  switch (cmd) {
    case Command::ValidateCorpus: r = cmd_validate_corpus(config, std::cerr); break;
    case Command::Adapt: r = cmd_adapt(config, std::cerr); break;
    case Command::Evaluate: r = cmd_evaluate(config, std::cerr); break;
    case Command::Correlate: r = cmd_correlate(config, std::cerr); break;
    case Command::Report: r = cmd_report(config, std::cerr); break;
  }
  return r.exit_code;
}

int run_convert(const std::string& layout, const fs::path& in_path, const fs::path& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw Error("cannot open " + in_path.string());
  const auto dialogs = layout == "csv" ? convert_csv_layout(in) : convert_text_layout(in);
  std::string out;
  for (const auto& d : dialogs) out += serialize_dialog(d) + "\n";
  util::write_file_atomic(out_path, out);
  std::cerr << "wrote " << dialogs.size() << " dialogs to " << out_path.string() << '\n';
  return 0;
}

int run_sample(const fs::path& dialogs_path, std::size_t k, std::uint64_t seed) {
  std::ifstream in(dialogs_path, std::ios::binary);
  if (!in) throw Error("cannot open " + dialogs_path.string());
  std::vector<std::string> ids;
  for (const auto& d : parse_dialog_corpus(in)) ids.push_back(d.id);
  if (k > ids.size()) throw ValidationError("cannot sample " + std::to_string(k) + " of " +
                                            std::to_string(ids.size()) + " dialogs");
  for (const auto& id : sample_ids(std::move(ids), k, seed)) std::cout << id << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cultural adaptation of dialogues and LLM-as-judge evaluation"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  PipelineArgs validate_args, adapt_args, eval_args, corr_args, report_args;
  auto* validate = app.add_subcommand("validate-corpus", "load and check the corpus, write corpus statistics");
  add_pipeline_options(validate, validate_args, false, false);
  auto* adapt = app.add_subcommand("adapt", "generate adaptations with every configured adapter");
  add_pipeline_options(adapt, adapt_args, false, false);
  auto* evaluate = app.add_subcommand("evaluate", "score adaptations with the judge and aggregate");
  add_pipeline_options(evaluate, eval_args, true, false);
  auto* correlate = app.add_subcommand("correlate", "judge vs human and aspect correlations");
  add_pipeline_options(correlate, corr_args, false, true);
  auto* report = app.add_subcommand("report", "render tables and figure data from evaluation output");
  add_pipeline_options(report, report_args, false, true);

  std::string layout = "csv";
  fs::path convert_in, convert_out;
  auto* convert = app.add_subcommand("convert", "convert a published corpus layout to dialogs JSONL");
  convert->add_option("--from", layout, "input layout")->check(CLI::IsMember({"csv", "text"}));
  convert->add_option("input", convert_in)->required()->check(CLI::ExistingFile);
  convert->add_option("-o,--output", convert_out, "dialogs JSONL to write")->required();

  fs::path sample_dialogs;
  std::size_t sample_k = 0;
  std::uint64_t sample_seed = 0;
  auto* sample = app.add_subcommand("sample", "draw dialog ids without replacement, one per line");
  sample->add_option("dialogs", sample_dialogs)->required()->check(CLI::ExistingFile);
  sample->add_option("-k,--count", sample_k, "ids to draw")->required();
  sample->add_option("--seed", sample_seed, "sampling seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*validate) return run_pipeline(Command::ValidateCorpus, validate_args);
    if (*adapt) return run_pipeline(Command::Adapt, adapt_args);
    if (*evaluate) return run_pipeline(Command::Evaluate, eval_args);
    if (*correlate) return run_pipeline(Command::Correlate, corr_args);
    if (*report) return run_pipeline(Command::Report, report_args);
    if (*convert) return run_convert(layout, convert_in, convert_out);
    if (*sample) return run_sample(sample_dialogs, sample_k, sample_seed);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
