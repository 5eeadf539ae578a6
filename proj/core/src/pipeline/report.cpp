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
#include "adapteval/util/io.hpp"
#include "internal.hpp"

namespace adapteval::pipeline {

using namespace detail;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::array<judge::Aspect, judge::kAspectCount> kReportAspectOrder = {
    judge::Aspect::Localisation, judge::Aspect::Naturalness, judge::Aspect::ContentPreservation,
    judge::Aspect::Offensiveness, judge::Aspect::Stereotypical,
};

struct ModelMetrics {
  std::string model;
  json metrics;
  std::optional<CorrelationMatrix> aspects;
  std::size_t scored_dialogs = 0;
};

std::string str(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "n/a";
  return j.dump();
}

std::string md_table(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::string out = "|";
  for (const auto& h : header) out += " " + h + " |";
  out += "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) out += "---|";
  out += '\n';
  for (const auto& r : rows) {
    out += "|";
    for (const auto& c : r) out += " " + c + " |";
    out += '\n';
  }
  return out;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out = util::csv_row(header);
  for (const auto& r : rows) out += util::csv_row(r);
  return out;
}

std::string decoding_note(const json& judge) {
  return "temperature " + str(judge.value("temperature", json())) + ", max_tokens " +
         str(judge.value("max_tokens", json())) + ", seed " + str(judge.value("seed", json()));
}

}  // namespace

CommandResult cmd_report(const RunConfig& config, std::ostream& log) {
  config.validate(Command::Report);
  RunManifest manifest(Command::Report, config);
  const auto dir = config.out_dir / "report";
  try {
    std::vector<ModelMetrics> models;
    for (const auto& model : config.model_ids()) {
      const auto path = config.evaluation_dir(model) / "metrics.json";
      if (!fs::exists(path)) {
        manifest.warn(model + ": no metrics at " + path.string() + "; left out of the report");
        continue;
      }
      manifest.add_input(path);
      ModelMetrics m{model, json::parse(util::read_file(path), nullptr, false), {}, 0};
      if (m.metrics.is_discarded() || !m.metrics.is_object()) {
        manifest.error(path.string() + ": malformed metrics file");
        continue;
      }
      const auto scores_path = config.evaluation_dir(model) / "dialog_scores.jsonl";
      if (fs::exists(scores_path)) {
        manifest.add_input(scores_path);
        const auto cols = aspect_columns(read_dialog_scores(scores_path));
        m.scored_dialogs = cols.front().second.size();
        if (m.scored_dialogs >= 2) {
          auto method = config.p_value;
          if (method == PValueMethod::Exact && m.scored_dialogs > kMaxExactN) method = PValueMethod::Normal;
          m.aspects = correlation_matrix(cols, config.significance, method);
        }
      }
      models.push_back(std::move(m));
    }
    if (models.empty()) throw Error("no evaluated model to report; run evaluate first");

    const auto& first = models.front().metrics;
    const json judge_info = first.value("judge", json::object());
    const std::string judge_line = "Judge: " + str(judge_info.value("model", json())) + " (" +
                                   decoding_note(judge_info) + ").";
    const std::string matcher_line =
        "CSI matching: token-set similarity threshold " + str(first.value("csi_match_threshold", json())) +
        ", counted per " + str(first.value("csi_count_mode", json())) +
        "; %CSI edited is sensitive to this threshold.";
    const std::string stats_line = "Kendall tau-b, p-values " + std::string(to_string(config.p_value)) +
                                   ", significance level " +
                                   util::format_fixed(config.significance, 2) + ".";

    std::vector<std::string> header{"Metric"};
    for (const auto& m : models) header.push_back(m.model);

    std::string md = "# Evaluation report\n\n";

    // edit-level scores
    {
      std::vector<std::vector<std::string>> rows(5);
      rows[0] = {"# Edits"};
      rows[1] = {"Correctness (%)"};
      rows[2] = {"Localisation (Average)"};
      rows[3] = {"Localisation (% (0, 1, 2))"};
      rows[4] = {"Offensiveness (%)"};
      std::vector<std::vector<std::string>> csv_rows;
      for (const auto& m : models) {
        const auto e = m.metrics.value("edits", json::object());
        const auto pct = e.value("localisation_pct", json::array());
        std::vector<std::string> dist;
        for (const auto& p : pct) dist.push_back(str(p));
        rows[0].push_back(str(e.value("n_edits", json())));
        rows[1].push_back(str(e.value("pct_correct", json())));
        rows[2].push_back(str(e.value("avg_localisation", json())));
        rows[3].push_back(util::join(dist, ", "));
        rows[4].push_back(str(e.value("pct_offensive", json())));
        csv_rows.push_back({m.model, rows[0].back(), str(e.value("n_null", json())), rows[1].back(),
                            rows[2].back(), dist.size() == 3 ? dist[0] : "n/a",
                            dist.size() == 3 ? dist[1] : "n/a", dist.size() == 3 ? dist[2] : "n/a",
                            rows[4].back(), str(e.value("row", json()))});
      }
      md += "## Edit-level scores\n\n" + md_table(header, rows) + "\n";
      for (const auto& r : csv_rows) md += "- " + r[0] + ": " + r.back() + "\n";
      md += "\n" + judge_line + " Null judge results are left out of every denominator.\n\n";
      write_output(manifest, dir / "edit_scores.csv",
                   csv_table({"model", "n_edits", "n_null", "pct_correct", "avg_localisation",
                              "pct_localisation_0", "pct_localisation_1", "pct_localisation_2",
                              "pct_offensive", "row"},
                             csv_rows));
    }

    // dialog-level scores
    {
      std::vector<std::string> head{"Model"};
      for (auto a : kReportAspectOrder) head.emplace_back(judge::display_name(a));
      head.emplace_back("n");
      std::vector<std::vector<std::string>> rows;
      for (const auto& m : models) {
        const auto d = m.metrics.value("dialog_scores", json::object());
        const auto means = d.value("means", json::object());
        std::vector<std::string> row{m.model};
        for (auto a : kReportAspectOrder) row.push_back(str(means.value(std::string(to_string(a)), json())));
        row.push_back(str(d.value("n_dialogs", json())));
        rows.push_back(std::move(row));
      }
      md += "## Dialog-level scores (mean, 1 to 5)\n\n" + md_table(head, rows) + "\n" + judge_line +
            " Dialogs with a null score are left out.\n\n";
      std::vector<std::string> csv_head{"model"};
      for (auto a : kReportAspectOrder) csv_head.emplace_back(to_string(a));
      csv_head.emplace_back("n_dialogs");
      write_output(manifest, dir / "dialog_scores.csv", csv_table(csv_head, rows));
    }

    // %CSI edited
    {
      md += "## CSI edited (%)\n\n";
      std::vector<std::vector<std::string>> rows;
      std::vector<std::vector<std::string>> csv_rows;
      bool any = false;
      auto add = [&](const std::string& label, const std::string& key, auto pick) {
        std::vector<std::string> row{label};
        for (const auto& m : models) {
          const json p = pick(m.metrics.value("csi", json::object()));
          row.push_back(p.is_object() ? str(p.value("pct_edited", json())) + " (n=" +
                                            str(p.value("n", json())) + ")"
                                      : "n/a");
          if (p.is_object()) {
            csv_rows.push_back({m.model, key, str(p.value("n", json())), str(p.value("edited", json())),
                                str(p.value("pct_edited", json()))});
            any |= p.value("n", 0) > 0;
          }
        }
        rows.push_back(std::move(row));
      };
      add("Overall", "overall", [](const json& c) { return c; });
      for (auto cat : kAllCsiCategories) {
        const std::string key(to_string(cat));
        add(std::string(display_name(cat)), "category:" + key, [&](const json& c) {
          return c.value("per_category", json::object()).value(key, json());
        });
      }
      for (const std::string level : {"2", "3"}) {
        add("Foreignness " + level, "foreignness:" + level, [&](const json& c) {
          return c.value("per_foreignness", json::object()).value(level, json());
        });
      }
      if (any) {
        md += md_table(header, rows);
      } else {
        md += "Empty: no analysable CSI annotations.\n";
      }
      md += "\n" + matcher_line + "\n\n";
      write_output(manifest, dir / "csi_edited.csv",
                   csv_table({"model", "group", "n", "edited", "pct_edited"}, csv_rows));
    }

    // strategies
    {
      std::vector<std::vector<std::string>> rows;
      std::vector<std::vector<std::string>> csv_rows;
      for (auto st : judge::kClassifiableStrategies) {
        const std::string key(to_string(st));
        std::vector<std::string> row{key + " (%)"};
        for (const auto& m : models) {
          const auto s = m.metrics.value("strategies", json::object());
          row.push_back(str(s.value("pct", json::object()).value(key, json())));
          csv_rows.push_back({m.model, key, str(s.value("counts", json::object()).value(key, json())),
                              row.back()});
        }
        rows.push_back(std::move(row));
      }
      for (const std::string key : {"classified", "preservation", "creation", "unaligned", "null"}) {
        std::vector<std::string> row{key + " (count)"};
        for (const auto& m : models) {
          row.push_back(str(m.metrics.value("strategies", json::object()).value(key, json())));
          csv_rows.push_back({m.model, key, row.back(), ""});
        }
        rows.push_back(std::move(row));
      }
      md += "## Adaptation strategies\n\n" + md_table(header, rows) +
            "\nPercentages are shares of classified edits; Preservation and Creation are counts "
            "outside that denominator. " +
            judge_line + " " + matcher_line + "\n\n";
      write_output(manifest, dir / "strategies.csv",
                   csv_table({"model", "strategy", "count", "pct"}, csv_rows));
    }

    // aspect correlations
    {
      md += "## Aspect correlations\n\n";
      std::vector<std::vector<std::string>> csv_rows;
      for (const auto& m : models) {
        md += "### " + m.model + " (n = " + std::to_string(m.scored_dialogs) + ")\n\n";
        if (!m.aspects) {
          md += "Not enough scored dialogs.\n\n";
          continue;
        }
        std::vector<std::string> head{""};
        std::vector<std::vector<std::string>> rows;
        const auto& mx = *m.aspects;
        for (const auto& l : mx.labels) head.emplace_back(judge::display_name(*judge::parse_aspect(l)));
        for (std::size_t i = 0; i < mx.labels.size(); ++i) {
          std::vector<std::string> row{head[i + 1]};
          for (std::size_t j = 0; j < mx.labels.size(); ++j) {
            row.push_back(format_tau(mx.at(i, j)) + (i != j && mx.significant(i, j) ? "*" : ""));
            if (j > i) {
              const auto& c = mx.at(i, j);
              csv_rows.push_back({m.model, mx.labels[i], mx.labels[j],
                                  c ? util::format_fixed(c->tau, 6) : "n/a",
                                  c ? util::format_fixed(c->p_value, 6) : "n/a",
                                  c ? (mx.significant(i, j) ? "true" : "false") : "n/a"});
            }
          }
          rows.push_back(std::move(row));
        }
        md += md_table(head, rows) + "\n";
      }
      md += "* p < " + util::format_fixed(config.significance, 2) + ". " + stats_line + "\n\n";
      write_output(manifest, dir / "aspect_correlations.csv",
                   csv_table({"model", "aspect_a", "aspect_b", "tau", "p_value", "significant"}, csv_rows));
    }

    // judge vs human, when correlate has run
    const auto hv = config.out_dir / "correlation" / "human_vs_judge.csv";
    if (fs::exists(hv)) {
      manifest.add_input(hv);
      std::ifstream in(hv, std::ios::binary);
      auto table = util::read_csv(in);
      if (!table.empty()) {
        const auto head = table.front();
        table.erase(table.begin());
        md += "## Judge vs human ratings\n\n" + md_table(head, table) + "\n" + stats_line + "\n\n";
      }
    }

    write_output(manifest, dir / "report.md", md);
    log << "report: " << (dir / "report.md").string() << '\n';
  } catch (const Error& e) {
    manifest.error(e.what());
  }
  return finish(manifest, log);
}

}  // namespace adapteval::pipeline
