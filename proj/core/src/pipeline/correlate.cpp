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

#include <fstream>

#include "adapteval/pipeline/commands.hpp"
#include "adapteval/util/csv.hpp"
#include "adapteval/util/format.hpp"
#include "internal.hpp"

namespace adapteval::pipeline {

using namespace detail;
namespace fs = std::filesystem;

namespace {

struct TauRow {
  std::string aspect;
  std::size_t n = 0;
  std::optional<TauResult> tau;
  std::string note;
};

// Exact p-values are only tractable for short vectors; longer ones use the
// normal approximation and say so.
std::optional<TauResult> tau_or_null(std::span<const double> x, std::span<const double> y,
                                     PValueMethod method, std::string& note) {
  if (x.size() < 2) {
    note = "fewer than 2 dialogs";
    return std::nullopt;
  }
  if (method == PValueMethod::Exact && x.size() > kMaxExactN) {
    method = PValueMethod::Normal;
    note = "n > " + std::to_string(kMaxExactN) + ", normal approximation used";
  }
  try {
    return kendall_tau_b(x, y, method);
  } catch (const UndefinedStatistic& e) {
    note = e.what();
    return std::nullopt;
  }
}

std::string matrix_csv(const CorrelationMatrix& m) {
  std::string out = util::csv_row({"aspect_a", "aspect_b", "tau", "p_value", "p_method", "significant"});
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    for (std::size_t j = 0; j < m.labels.size(); ++j) {
      const auto& c = m.at(i, j);
      out += util::csv_row({m.labels[i], m.labels[j], c ? util::format_fixed(c->tau, 6) : "n/a",
                            c ? util::format_fixed(c->p_value, 6) : "n/a",
                            c ? std::string(to_string(c->method)) : "n/a",
                            c ? (m.significant(i, j) ? "true" : "false") : "n/a"});
    }
  }
  return out;
}

std::string matrix_md(const CorrelationMatrix& m) {
  std::string out = "| |";
  for (const auto& l : m.labels) out += " " + l + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < m.labels.size(); ++i) out += "---|";
  out += '\n';
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out += "| " + m.labels[i] + " |";
    for (std::size_t j = 0; j < m.labels.size(); ++j) {
      out += " " + format_tau(m.at(i, j)) + (m.significant(i, j) && i != j ? "*" : "") + " |";
    }
    out += '\n';
  }
  return out;
}

}  // namespace

CommandResult cmd_correlate(const RunConfig& config, std::ostream& log) {
  config.validate(Command::Correlate);
  RunManifest manifest(Command::Correlate, config);
  const auto dir = config.out_dir / "correlation";
  try {
    std::map<std::string, HumanRating> human;
    {
      std::ifstream in(config.human_ratings, std::ios::binary);
      if (!in) throw Error("cannot open " + config.human_ratings.string());
      human = read_human_ratings(in);
      manifest.add_input(config.human_ratings);
    }
    const auto models = config.model_ids();
    const std::string target = config.human_eval_model.empty()
                                   ? (models.empty() ? std::string() : models.front())
                                   : config.human_eval_model;
    const std::string method(to_string(config.p_value));

    std::string md = "# Correlations\n\n";
    md += "Kendall tau-b; p-values: " + method + "; significance level " +
          util::format_fixed(config.significance, 2) + ".\n\n";

    // judge vs human, per aspect
    {
      auto stage = manifest.stage("human_vs_judge");
      const auto scores_path = config.evaluation_dir(target) / "dialog_scores.jsonl";
      if (!fs::exists(scores_path)) {
        throw Error("no dialog scores for '" + target + "' at " + scores_path.string() +
                    "; run evaluate first");
      }
      manifest.add_input(scores_path);
      const auto judged = read_dialog_scores(scores_path);
      std::vector<std::string> ids;
      std::size_t human_only = 0;
      for (const auto& [id, rating] : human) {
        auto it = judged.find(id);
        if (it == judged.end() || !it->second) {
          ++human_only;
          continue;
        }
        ids.push_back(id);
      }
      if (ids.empty()) throw Error("no dialog has both human ratings and judge scores for '" + target + "'");
      if (human_only) {
        manifest.warn(std::to_string(human_only) +
                      " human-rated dialogs have no judge score and were left out");
      }

      std::vector<TauRow> rows;
      for (auto a : judge::kAllAspects) {
        const auto i = static_cast<std::size_t>(a);
        std::vector<double> j_col;
        std::vector<double> h_col;
        for (const auto& id : ids) {
          j_col.push_back(judged.at(id)->scores[i]);
          h_col.push_back(human.at(id).mean[i]);
        }
        TauRow row;
        row.aspect = std::string(to_string(a));
        row.n = ids.size();
        row.tau = tau_or_null(j_col, h_col, config.p_value, row.note);
        if (!row.note.empty()) manifest.warn(row.aspect + ": " + row.note);
        rows.push_back(std::move(row));
      }

      std::string csv = util::csv_row({"aspect", "n", "tau", "p_value", "p_method", "band", "significant"});
      md += "## Judge vs human (" + target + ", n = " + std::to_string(ids.size()) + ")\n\n";
      md += "| Aspect | n | tau | p | band | significant |\n|---|---|---|---|---|---|\n";
      for (const auto& r : rows) {
        const auto& t = r.tau;
        const bool sig = t && t->p_value < config.significance;
        csv += util::csv_row({r.aspect, std::to_string(r.n), t ? util::format_fixed(t->tau, 6) : "n/a",
                              t ? util::format_fixed(t->p_value, 6) : "n/a",
                              t ? std::string(to_string(t->method)) : "n/a",
                              t ? std::string(to_string(t->band)) : "n/a",
                              t ? (sig ? "true" : "false") : "n/a"});
        md += "| " + std::string(judge::display_name(*judge::parse_aspect(r.aspect))) + " | " +
              std::to_string(r.n) + " | " + format_tau(t) + " | " + format_p(t) + " | " +
              (t ? std::string(to_string(t->band)) : "n/a") + " | " +
              (t ? (sig ? "yes" : "no") : "n/a") + " |\n";
        log << r.aspect << ": tau " << format_tau(t) << ", p " << format_p(t) << '\n';
      }
      md += '\n';
      write_output(manifest, dir / "human_vs_judge.csv", csv);
    }

    // aspect-by-aspect, per model
    for (const auto& model : models) {
      auto stage = manifest.stage("aspects:" + model);
      const auto path = config.evaluation_dir(model) / "dialog_scores.jsonl";
      if (!fs::exists(path)) {
        manifest.warn(model + ": no dialog scores; aspect correlations skipped");
        continue;
      }
      manifest.add_input(path);
      const auto cols = aspect_columns(read_dialog_scores(path));
      const auto n = cols.front().second.size();
      md += "## Aspect correlations: " + model + " (n = " + std::to_string(n) + ")\n\n";
      if (n < 2) {
        manifest.warn(model + ": fewer than 2 scored dialogs; aspect correlations skipped");
        md += "Not enough scored dialogs.\n\n";
        continue;
      }
      auto method_used = config.p_value;
      if (method_used == PValueMethod::Exact && n > kMaxExactN) method_used = PValueMethod::Normal;
      const auto matrix = correlation_matrix(cols, config.significance, method_used);
      write_output(manifest, dir / ("aspects_" + util::slug(model) + ".csv"), matrix_csv(matrix));
      md += matrix_md(matrix) + "\n* p < " + util::format_fixed(config.significance, 2) + "\n\n";
    }
    write_output(manifest, dir / "correlation.md", md);
  } catch (const Error& e) {
    manifest.error(e.what());
  }
  return finish(manifest, log);
}

}  // namespace adapteval::pipeline
