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

#include <algorithm>
#include <map>

#include "adapteval/judge/parsers.hpp"
#include "adapteval/judge/prompts.hpp"
#include "adapteval/metrics.hpp"
#include "adapteval/pipeline/commands.hpp"
#include "adapteval/textmatch.hpp"
#include "adapteval/util/csv.hpp"
#include "adapteval/util/format.hpp"
#include "adapteval/util/parallel.hpp"
#include "internal.hpp"

namespace adapteval::pipeline {

using namespace detail;
using judge::Aspect;
using judge::Edit;
using judge::Strategy;
using judge::TemplateId;

namespace {

template <typename T>
struct Judged {
  std::optional<T> value;
  std::string error;
};

// One judge backend plus the re-query policy: a response that fails to parse
// is asked once more under a new attempt number, then recorded as null.
class JudgeCaller {
 public:
  JudgeCaller(judge::CompletionBackend& backend, const judge::ResponseCache& cache,
              const RunConfig& config, RunManifest& manifest)
      : backend_(backend), cache_(cache), retry_(config.retry), manifest_(manifest) {}

  template <typename Parse>
  auto ask(const std::string& prompt, const std::string& context, Parse parse)
      -> Judged<decltype(parse(std::string()))> {
    std::string last;
    for (int attempt = 0; attempt < 2; ++attempt) {
      std::string text;
      try {
        text = judge::complete(backend_, prompt, cache_, retry_, attempt, &manifest_.calls).text;
      } catch (const Error& e) {
        manifest_.error(context + ": " + e.what());
        ++manifest_.nulls;
        return {std::nullopt, e.what()};
      }
      try {
        return {parse(text), {}};
      } catch (const UnparseableResponse& e) {
        last = std::string("unparseable: ") + e.what();
      } catch (const InvalidResponse& e) {
        last = std::string("invalid: ") + e.what();
      }
      if (attempt == 0) ++manifest_.requeries;
    }
    ++manifest_.nulls;
    return {std::nullopt, last};
  }

 private:
  judge::CompletionBackend& backend_;
  const judge::ResponseCache& cache_;
  judge::RetryPolicy retry_;
  RunManifest& manifest_;
};

struct Item {
  const Dialog* dialog;
  const AdaptationRecord* adaptation;
};

struct PairResult {
  std::string status;  // identical | extracted | null | unaligned
  std::string side;    // for unaligned: original | adapted
  std::vector<Edit> edits;
  std::vector<std::string> residue;
  std::string error;
};

struct FlatEdit {
  std::size_t item;
  std::size_t utterance;
  std::size_t ordinal;
  std::size_t dialog_edit;  // index within the dialog's edit list
};

ojson edit_json(const Edit& e, std::size_t ordinal) {
  ojson j;
  j["ordinal"] = ordinal;
  j["kind"] = to_string(e.kind);
  j["source"] = e.source;
  j["target"] = e.target;
  return j;
}

ojson pct_json(const Percentage& p) {
  ojson j;
  j["n"] = p.den;
  j["edited"] = p.num;
  j["pct_edited"] = p.format(2);
  return j;
}

struct ModelOutcome {
  std::vector<std::pair<std::string, std::string>> metrics;  // metric -> value
};

bool noop(const Edit& e) {
  return textmatch::normalize(e.source) == textmatch::normalize(e.target);
}

ModelOutcome evaluate_model(const std::string& model, const Corpus& corpus,
                            const RunConfig& config, judge::CompletionBackend& judge_backend,
                            const judge::ResponseCache& cache, const judge::PromptLibrary& prompts,
                            const Lexicon& lexicon, RunManifest& manifest, std::ostream& log) {
  ModelOutcome outcome;
  const auto dir = config.evaluation_dir(model);
  const auto path = config.adaptations_path(model);
  if (!std::filesystem::exists(path)) {
    manifest.error(model + ": no adaptations file at " + path.string());
    return outcome;
  }
  manifest.add_input(path);
  std::vector<AdaptationRecord> records;
  try {
    records = read_adaptation_file(path);
  } catch (const Error& e) {
    manifest.error(model + ": " + path.string() + ": " + e.what());
    return outcome;
  }

  std::map<std::string, const AdaptationRecord*, std::less<>> by_id;
  for (const auto& r : records) {
    if (!by_id.emplace(r.dialog_id, &r).second) {
      manifest.error(model + ": duplicate adaptation for dialog " + r.dialog_id);
      return outcome;
    }
  }
  std::vector<Item> items;
  std::vector<std::string> missing;
  for (const auto& d : corpus.dialogs) {
    auto it = by_id.find(d.id);
    if (it == by_id.end()) {
      missing.push_back(d.id);
    } else {
      items.push_back({&d, it->second});
    }
  }
  if (!missing.empty()) {
    manifest.error(model + ": missing adaptations for dialogs: " + util::join(missing, ", "));
    return outcome;
  }
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.dialog->id < b.dialog->id; });
  JudgeCaller judge(judge_backend, cache, config, manifest);
  const std::size_t inflight = config.max_inflight;

  // structure
  std::size_t unclean = 0;
  std::size_t empty_adaptations = 0;
  std::size_t count_mismatch = 0;
  std::size_t speaker_mismatch = 0;
  {
    auto stage = manifest.stage(model + ":structure");
    std::vector<std::string> lines;
    for (const auto& it : items) {
      const auto r = validate_adaptation_structure(*it.dialog, *it.adaptation);
      unclean += r.clean() ? 0 : 1;
      empty_adaptations += r.empty_adaptation ? 1 : 0;
      count_mismatch += r.utterance_count_match ? 0 : 1;
      speaker_mismatch += r.speaker_mismatches.empty() ? 0 : 1;
      lines.push_back(serialize_structure_report(r));
    }
    write_output(manifest, dir / "structure.jsonl", jsonl(lines));
  }

  // %CSI edited
  CsiEditReport csi;
  {
    auto stage = manifest.stage(model + ":csi");
    std::vector<AdaptationRecord> adapted;
    for (const auto& it : items) adapted.push_back(*it.adaptation);
    csi = csi_edited_percentage(corpus.annotations, adapted, config.csi_match_threshold,
                                config.csi_count_mode);
    if (!csi.uncovered_dialogs.empty()) {
      manifest.warn(model + ": " + std::to_string(csi.uncovered_annotations) +
                    " CSI annotations in " + std::to_string(csi.uncovered_dialogs.size()) +
                    " dialogs without a usable adaptation were left out: " +
                    util::join(csi.uncovered_dialogs, ", "));
    }
    std::vector<std::string> lines;
    for (const auto& d : csi.per_csi) {
      ojson j;
      j["dialog_id"] = d.annotation.dialog_id;
      j["surface"] = d.annotation.surface;
      j["occurrence_index"] = d.annotation.occurrence_index;
      j["category"] = to_string(d.annotation.category);
      j["foreignness"] = d.annotation.foreignness;
      j["edited"] = d.edited;
      j["match_score"] = d.match.score;
      j["matched_window"] = d.match.matched_window;
      lines.push_back(dump_line(j));
    }
    write_output(manifest, dir / "csi.jsonl", jsonl(lines));
  }

  // edit extraction, one request per index-aligned utterance pair
  std::vector<std::vector<PairResult>> pairs(items.size());
  EditsByDialog edits_by_dialog;
  std::vector<FlatEdit> flat;
  {
    auto stage = manifest.stage(model + ":extract_edits");
    struct Job {
      std::size_t item;
      std::size_t utterance;
    };
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < items.size(); ++k) {
      const auto& o = items[k].dialog->utterances;
      const auto& a = items[k].adaptation->utterances;
      pairs[k].resize(std::max(o.size(), a.size()));
      for (std::size_t i = 0; i < pairs[k].size(); ++i) {
        auto& p = pairs[k][i];
        if (i >= o.size() || i >= a.size()) {
          p.status = "unaligned";
          p.side = i >= a.size() ? "original" : "adapted";
        } else if (o[i].to_line() == a[i].to_line()) {
          p.status = "identical";
        } else {
          jobs.push_back({k, i});
        }
      }
    }
    util::parallel_for(jobs.size(), inflight, [&](std::size_t n) {
      const auto [k, i] = jobs[n];
      const auto prompt = prompts.render(
          TemplateId::ExtractEdits,
          {{"original_utterance", items[k].dialog->utterances[i].to_line()},
           {"adapted_utterance", items[k].adaptation->utterances[i].to_line()}});
      auto got = judge.ask(prompt, model + ": extract_edits " + items[k].dialog->id + "#" +
                                       std::to_string(i),
                           [](const std::string& raw) { return judge::parse_edit_list(raw); });
      auto& p = pairs[k][i];
      if (!got.value) {
        p.status = "null";
        p.error = got.error;
        return;
      }
      p.status = "extracted";
      p.residue = std::move(got.value->residue);
      for (auto& e : got.value->edits) {
        if (noop(e)) continue;
        e.utterance_index = i;
        p.edits.push_back(std::move(e));
      }
    });

    std::vector<std::string> lines;
    for (std::size_t k = 0; k < items.size(); ++k) {
      auto& list = edits_by_dialog[items[k].dialog->id];
      for (std::size_t i = 0; i < pairs[k].size(); ++i) {
        const auto& p = pairs[k][i];
        ojson j;
        j["dialog_id"] = items[k].dialog->id;
        j["utterance_index"] = i;
        j["status"] = p.status;
        if (!p.side.empty()) j["side"] = p.side;
        j["edits"] = ojson::array();
        for (std::size_t e = 0; e < p.edits.size(); ++e) {
          j["edits"].push_back(edit_json(p.edits[e], e));
          flat.push_back({k, i, e, list.size()});
          list.push_back(p.edits[e]);
        }
        if (!p.residue.empty()) j["residue"] = p.residue;
        if (!p.error.empty()) j["error"] = p.error;
        lines.push_back(dump_line(j));
      }
    }
    write_output(manifest, dir / "edits.jsonl", jsonl(lines));
  }

  auto edit_of = [&](const FlatEdit& f) -> const Edit& {
    return pairs[f.item][f.utterance].edits[f.ordinal];
  };
  auto dialog_bindings = [&](std::size_t k, const Edit& e) {
    return judge::Bindings{{"original", items[k].dialog->render()},
                           {"adapted", items[k].adaptation->render()},
                           {"edit", judge::format_edit(e)}};
  };

  // edit scoring
  std::vector<std::optional<judge::EditScores>> edit_scores(flat.size());
  {
    auto stage = manifest.stage(model + ":score_edits");
    std::vector<std::string> errors(flat.size());
    util::parallel_for(flat.size(), inflight, [&](std::size_t n) {
      const auto& f = flat[n];
      const auto prompt = prompts.render(TemplateId::ScoreEdit, dialog_bindings(f.item, edit_of(f)));
      auto got = judge.ask(prompt,
                           model + ": score_edit " + items[f.item].dialog->id + "#" +
                               std::to_string(f.utterance) + "." + std::to_string(f.ordinal),
                           [](const std::string& raw) { return judge::parse_edit_scores(raw); });
      edit_scores[n] = got.value;
      errors[n] = std::move(got.error);
    });
    std::vector<std::string> lines;
    for (std::size_t n = 0; n < flat.size(); ++n) {
      const auto& f = flat[n];
      ojson j;
      j["dialog_id"] = items[f.item].dialog->id;
      j["utterance_index"] = f.utterance;
      j["ordinal"] = f.ordinal;
      j["edit"] = judge::format_edit(edit_of(f));
      if (edit_scores[n]) {
        j["scores"] = {{"correctness", edit_scores[n]->correctness},
                       {"localisation", edit_scores[n]->localisation},
                       {"offensiveness", edit_scores[n]->offensiveness}};
      } else {
        j["scores"] = nullptr;
        j["error"] = errors[n];
      }
      lines.push_back(dump_line(j));
    }
    write_output(manifest, dir / "edit_scores.jsonl", jsonl(lines));
  }

  // alignment of edits to CSI
  Alignment alignment;
  std::map<std::string, std::size_t, std::less<>> item_of;
  for (std::size_t k = 0; k < items.size(); ++k) item_of[items[k].dialog->id] = k;
  {
    auto stage = manifest.stage(model + ":align");
    alignment = align_edits_to_csi(edits_by_dialog, csi, lexicon, config.csi_match_threshold);
    for (const auto& line : alignment.log) manifest.warn(model + ": alignment tie: " + line);
    std::vector<std::string> lines;
    for (const auto& link : alignment.csi) {
      const auto& a = csi.per_csi[link.csi].annotation;
      ojson j;
      j["dialog_id"] = a.dialog_id;
      j["surface"] = a.surface;
      j["occurrence_index"] = a.occurrence_index;
      j["status"] = to_string(link.status);
      if (link.edit) {
        const auto& e = edits_by_dialog.at(a.dialog_id)[*link.edit];
        j["utterance_index"] = e.utterance_index;
        j["edit"] = judge::format_edit(e);
        j["score"] = link.score;
      }
      lines.push_back(dump_line(j));
    }
    write_output(manifest, dir / "alignment.jsonl", jsonl(lines));
  }

  // strategy classification for aligned CSI edits
  std::vector<Strategy> strategies;
  std::size_t unaligned = 0;
  std::size_t strategy_nulls = 0;
  {
    auto stage = manifest.stage(model + ":classify");
    std::vector<std::size_t> jobs;
    for (std::size_t c = 0; c < alignment.csi.size(); ++c) {
      if (alignment.csi[c].status == CsiStatus::Aligned) jobs.push_back(c);
    }
    std::vector<Judged<Strategy>> classified(alignment.csi.size());
    util::parallel_for(jobs.size(), inflight, [&](std::size_t n) {
      const auto& link = alignment.csi[jobs[n]];
      const auto& id = csi.per_csi[link.csi].annotation.dialog_id;
      const auto& e = edits_by_dialog.at(id)[*link.edit];
      const auto prompt = prompts.render(TemplateId::ClassifyStrategy, dialog_bindings(item_of.at(id), e));
      classified[jobs[n]] = judge.ask(prompt, model + ": classify_strategy " + id + " '" +
                                                  csi.per_csi[link.csi].annotation.surface + "'",
                                      [](const std::string& raw) { return judge::parse_strategy(raw); });
    });

    std::vector<std::string> lines;
    for (std::size_t c = 0; c < alignment.csi.size(); ++c) {
      const auto& link = alignment.csi[c];
      const auto& a = csi.per_csi[link.csi].annotation;
      ojson j;
      j["dialog_id"] = a.dialog_id;
      j["surface"] = a.surface;
      j["occurrence_index"] = a.occurrence_index;
      switch (link.status) {
        case CsiStatus::Aligned: {
          const auto& e = edits_by_dialog.at(a.dialog_id)[*link.edit];
          j["utterance_index"] = e.utterance_index;
          j["edit"] = judge::format_edit(e);
          if (classified[c].value) {
            j["strategy"] = to_string(*classified[c].value);
            strategies.push_back(*classified[c].value);
          } else {
            j["strategy"] = nullptr;
            j["error"] = classified[c].error;
            ++strategy_nulls;
          }
          break;
        }
        case CsiStatus::Preserved:
          j["strategy"] = to_string(Strategy::Preservation);
          strategies.push_back(Strategy::Preservation);
          break;
        case CsiStatus::Unaligned:
          j["strategy"] = "unaligned";
          ++unaligned;
          break;
      }
      lines.push_back(dump_line(j));
    }
    for (const auto& link : alignment.edits) {
      if (!link.creation_candidate) continue;
      const auto& e = edits_by_dialog.at(link.dialog_id)[link.edit];
      ojson j;
      j["dialog_id"] = link.dialog_id;
      j["utterance_index"] = e.utterance_index;
      j["edit"] = judge::format_edit(e);
      j["strategy"] = to_string(Strategy::Creation);
      j["term"] = link.creation_term;
      strategies.push_back(Strategy::Creation);
      lines.push_back(dump_line(j));
    }
    write_output(manifest, dir / "strategies.jsonl", jsonl(lines));
  }

  // dialog scoring
  std::vector<std::optional<judge::DialogScores>> dialog_scores(items.size());
  {
    auto stage = manifest.stage(model + ":score_dialogs");
    std::vector<std::string> errors(items.size());
    util::parallel_for(items.size(), inflight, [&](std::size_t k) {
      if (items[k].adaptation->empty()) {
        errors[k] = "empty adaptation";
        ++manifest.nulls;
        return;
      }
      const auto prompt = prompts.render(TemplateId::ScoreDialog,
                                         {{"original", items[k].dialog->render()},
                                          {"adapted", items[k].adaptation->render()}});
      auto got = judge.ask(prompt, model + ": score_dialog " + items[k].dialog->id,
                           [](const std::string& raw) { return judge::parse_dialog_scores(raw); });
      dialog_scores[k] = std::move(got.value);
      errors[k] = std::move(got.error);
    });
    std::vector<std::string> lines;
    for (std::size_t k = 0; k < items.size(); ++k) {
      ojson j;
      j["dialog_id"] = items[k].dialog->id;
      if (dialog_scores[k]) {
        j["scores"] = dialog_scores_json(*dialog_scores[k]);
      } else {
        j["scores"] = nullptr;
        j["error"] = errors[k];
      }
      lines.push_back(dump_line(j));
    }
    write_output(manifest, dir / "dialog_scores.jsonl", jsonl(lines));
  }

  // aggregation
  {
    auto stage = manifest.stage(model + ":aggregate");
    const auto edits_agg = aggregate_edit_scores(edit_scores);
    const auto dialog_agg = aggregate_dialog_scores(dialog_scores);
    const auto dist = strategy_distribution(strategies);

    std::size_t pairs_compared = 0, pairs_identical = 0, pairs_null = 0, pairs_unaligned = 0;
    for (const auto& dialog_pairs : pairs) {
      for (const auto& p : dialog_pairs) {
        if (p.status == "identical") ++pairs_identical;
        else if (p.status == "null") ++pairs_null;
        else if (p.status == "unaligned") ++pairs_unaligned;
        else ++pairs_compared;
      }
    }

    ojson m;
    m["model"] = model;
    m["judge"]["model"] = config.judge.model;
    m["judge"]["temperature"] = config.judge.decoding.temperature;
    m["judge"]["max_tokens"] = config.judge.decoding.max_tokens;
    m["judge"]["seed"] = config.judge.decoding.seed ? ojson(*config.judge.decoding.seed) : ojson(nullptr);
    m["csi_match_threshold"] = config.csi_match_threshold;
    m["csi_count_mode"] = config.csi_count_mode == CsiCountMode::Type ? "type" : "occurrence";
    m["dialogs"] = items.size();
    m["structure"] = {{"clean", items.size() - unclean},
                      {"count_mismatch", count_mismatch},
                      {"speaker_mismatch", speaker_mismatch},
                      {"empty", empty_adaptations}};

    ojson c = pct_json(csi.overall);
    for (auto cat : kAllCsiCategories) {
      c["per_category"][std::string(to_string(cat))] =
          pct_json(csi.per_category[static_cast<std::size_t>(cat)]);
    }
    c["per_foreignness"]["2"] = pct_json(csi.per_foreignness[0]);
    c["per_foreignness"]["3"] = pct_json(csi.per_foreignness[1]);
    c["excluded_level1"] = csi.excluded_level1;
    c["uncovered_annotations"] = csi.uncovered_annotations;
    c["uncovered_dialogs"] = csi.uncovered_dialogs;
    c["unmatchable"] = csi.unmatchable;
    m["csi"] = std::move(c);

    ojson x;
    x["extracted"] = pairs_compared;
    x["identical"] = pairs_identical;
    x["unaligned"] = pairs_unaligned;
    x["null"] = pairs_null;
    m["extraction"] = std::move(x);

    ojson e;
    e["n_edits"] = edits_agg.n_edits;
    e["n_null"] = edits_agg.n_null;
    e["correct"] = edits_agg.correct;
    e["pct_correct"] = edits_agg.pct_correct().format(2);
    e["avg_localisation"] = edits_agg.format_avg_localisation(2);
    e["localisation_counts"] = edits_agg.localisation_counts;
    e["localisation_pct"] = {edits_agg.localisation_pct(0).format(2),
                             edits_agg.localisation_pct(1).format(2),
                             edits_agg.localisation_pct(2).format(2)};
    e["offensive"] = edits_agg.offensive;
    e["pct_offensive"] = edits_agg.pct_offensive().format(2);
    e["row"] = format_edit_row(edits_agg);
    m["edits"] = std::move(e);

    ojson s;
    for (auto st : judge::kClassifiableStrategies) {
      s["counts"][std::string(to_string(st))] = dist.count(st);
      s["pct"][std::string(to_string(st))] = dist.percentage(st).format(2);
    }
    s["classified"] = dist.classified;
    s["preservation"] = dist.preservation_count();
    s["creation"] = dist.creation_count();
    s["unaligned"] = unaligned;
    s["null"] = strategy_nulls;
    m["strategies"] = std::move(s);

    ojson d;
    d["n_dialogs"] = dialog_agg.n_dialogs;
    d["n_null"] = dialog_agg.n_null;
    for (auto a : judge::kAllAspects) {
      d["means"][std::string(to_string(a))] = dialog_agg.format_mean(a, 2);
    }
    m["dialog_scores"] = std::move(d);
    write_output(manifest, dir / "metrics.json", m.dump(2) + "\n");

    if (edits_agg.empty() && edits_agg.n_null > 0) {
      manifest.warn(model + ": every edit score is null; edit aggregates are undefined");
    }
    if (dialog_agg.empty()) {
      manifest.warn(model + ": no dialog scores; dialog aggregates are undefined");
    }
    if (pairs_null) {
      manifest.warn(model + ": " + std::to_string(pairs_null) +
                    " utterance pairs have no extracted edits after a null judge result");
    }
    const std::size_t nulls = static_cast<std::size_t>(edits_agg.n_null + dialog_agg.n_null) +
                              strategy_nulls + pairs_null;
    if (nulls) manifest.warn(model + ": " + std::to_string(nulls) + " null judge results");

    auto& out = outcome.metrics;
    out.emplace_back("dialogs", std::to_string(items.size()));
    out.emplace_back("structure_clean", std::to_string(items.size() - unclean));
    out.emplace_back("csi_analysed", std::to_string(csi.overall.den));
    out.emplace_back("pct_csi_edited", csi.overall.format(2));
    out.emplace_back("n_edits", std::to_string(edits_agg.n_edits));
    out.emplace_back("n_extract_null", std::to_string(pairs_null));
    out.emplace_back("n_edit_null", std::to_string(edits_agg.n_null));
    out.emplace_back("pct_correct", edits_agg.pct_correct().format(2));
    out.emplace_back("avg_localisation", edits_agg.format_avg_localisation(2));
    for (int l = 0; l < 3; ++l) {
      out.emplace_back("pct_localisation_" + std::to_string(l), edits_agg.localisation_pct(l).format(2));
    }
    out.emplace_back("pct_offensive", edits_agg.pct_offensive().format(2));
    for (auto st : judge::kClassifiableStrategies) {
      out.emplace_back("pct_strategy_" + util::to_lower(to_string(st)), dist.percentage(st).format(2));
    }
    out.emplace_back("preservation_count", std::to_string(dist.preservation_count()));
    out.emplace_back("creation_count", std::to_string(dist.creation_count()));
    out.emplace_back("unaligned_count", std::to_string(unaligned));
    for (auto a : judge::kAllAspects) {
      out.emplace_back("mean_" + std::string(to_string(a)), dialog_agg.format_mean(a, 2));
    }
    out.emplace_back("n_dialog_null", std::to_string(dialog_agg.n_null));

    log << model << ": %CSI edited " << csi.overall.format(2) << ", edits " << edits_agg.n_edits
        << " (" << format_edit_row(edits_agg) << "), dialogs scored " << dialog_agg.n_dialogs
        << "/" << items.size() << '\n';
  }
  return outcome;
}

}  // namespace

CommandResult cmd_evaluate(const RunConfig& config, std::ostream& log,
                           const BackendFactory& factory) {
  config.validate(Command::Evaluate);
  RunManifest manifest(Command::Evaluate, config);
  try {
    Corpus corpus;
    {
      auto stage = manifest.stage("load");
      corpus = load_corpus(config, manifest);
    }
    if (corpus.dialogs.empty()) manifest.warn("corpus is empty; nothing to evaluate");
    const judge::ResponseCache cache(config.cache_dir);
    const auto prompts = config.prompts_dir.empty()
                             ? judge::PromptLibrary()
                             : judge::PromptLibrary::from_directory(config.prompts_dir);
    const auto lexicon = load_lexicon(config);
    if (!config.lexicon.empty()) manifest.add_input(config.lexicon);
    auto judge_backend = build_backend(factory, config.judge, config);

    std::string csv = util::csv_row({"model", "metric", "value"});
    for (const auto& model : config.model_ids()) {
      const auto outcome = evaluate_model(model, corpus, config, *judge_backend, cache, prompts,
                                          lexicon, manifest, log);
      for (const auto& [metric, value] : outcome.metrics) csv += util::csv_row({model, metric, value});
    }
    write_output(manifest, config.out_dir / "evaluation" / "metrics.csv", csv);
  } catch (const Error& e) {
    manifest.error(e.what());
  }
  return finish(manifest, log);
}

}  // namespace adapteval::pipeline
