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

#include "adapteval/pipeline/commands.hpp"

#include "adapteval/judge/adaptation.hpp"
#include "adapteval/util/format.hpp"
#include "adapteval/util/parallel.hpp"
#include "internal.hpp"

namespace adapteval::pipeline {

using namespace detail;

CommandResult cmd_validate_corpus(const RunConfig& config, std::ostream& log) {
  config.validate(Command::ValidateCorpus);
  RunManifest manifest(Command::ValidateCorpus, config);
  try {
    Corpus corpus;
    {
      auto stage = manifest.stage("load");
      corpus = load_corpus(config, manifest);
    }
    if (corpus.dialogs.empty()) manifest.warn("corpus is empty");
    LoadOptions opts;
    opts.count_transcript_notes = config.count_transcript_notes;
    const auto stats = corpus_stats(corpus.dialogs, corpus.annotations, opts);

    ojson j;
    j["dialogs"] = stats.dialogs;
    j["utterances"] = stats.utterances;
    j["speakers"] = stats.speakers;
    j["csi_occurrences"] = stats.csi_occurrences;
    for (auto c : kAllCsiCategories) {
      j["per_category"][std::string(to_string(c))] = stats.per_category[static_cast<std::size_t>(c)];
    }
    for (int level = 1; level <= 3; ++level) {
      j["per_foreignness"][std::to_string(level)] =
          stats.per_foreignness[static_cast<std::size_t>(level - 1)];
    }
    j["count_transcript_notes"] = config.count_transcript_notes;
    write_output(manifest, config.out_dir / "corpus" / "stats.json", j.dump(2) + "\n");

    log << "dialogs " << stats.dialogs << ", utterances " << stats.utterances << ", speakers "
        << stats.speakers << ", CSI occurrences " << stats.csi_occurrences << '\n';
    for (auto c : kAllCsiCategories) {
      log << "  " << display_name(c) << ": " << stats.per_category[static_cast<std::size_t>(c)]
          << '\n';
    }
    for (int level = 1; level <= 3; ++level) {
      log << "  foreignness " << level << ": "
          << stats.per_foreignness[static_cast<std::size_t>(level - 1)] << '\n';
    }
  } catch (const Error& e) {
    manifest.error(e.what());
  }
  return finish(manifest, log);
}

CommandResult cmd_adapt(const RunConfig& config, std::ostream& log, const BackendFactory& factory) {
  config.validate(Command::Adapt);
  RunManifest manifest(Command::Adapt, config);
  try {
    Corpus corpus;
    {
      auto stage = manifest.stage("load");
      corpus = load_corpus(config, manifest);
    }
    if (corpus.dialogs.empty()) manifest.warn("corpus is empty; nothing to adapt");
    const judge::ResponseCache cache(config.cache_dir);
    const auto prompts = config.prompts_dir.empty()
                             ? judge::PromptLibrary()
                             : judge::PromptLibrary::from_directory(config.prompts_dir);
    const judge::CultureProfile culture{config.target_culture};

    for (const auto& spec : config.adapters) {
      auto stage = manifest.stage("adapt:" + spec.model);
      auto backend = build_backend(factory, spec, config);
      judge::CallContext ctx{&prompts, &cache, config.retry, &manifest.calls};

      std::vector<std::optional<AdaptationRecord>> results(corpus.dialogs.size());
      util::parallel_for(corpus.dialogs.size(), config.max_inflight, [&](std::size_t i) {
        try {
          results[i] = judge::generate_adaptation(*backend, corpus.dialogs[i], culture, ctx);
        } catch (const Error& e) {
          manifest.error(spec.model + ": dialog " + corpus.dialogs[i].id + ": " + e.what());
        }
      });

      std::vector<std::string> records;
      std::vector<std::string> structure;
      std::size_t empty = 0;
      std::size_t unclean = 0;
      for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i]) continue;
        records.push_back(serialize_adaptation(*results[i]));
        const auto report = validate_adaptation_structure(corpus.dialogs[i], *results[i]);
        structure.push_back(serialize_structure_report(report));
        empty += report.empty_adaptation ? 1 : 0;
        unclean += report.clean() ? 0 : 1;
      }
      const auto path = config.adaptations_path(spec.model);
      write_output(manifest, path, jsonl(records));
      auto structure_path = path;
      structure_path.replace_extension(".structure.jsonl");
      write_output(manifest, structure_path, jsonl(structure));
      if (empty) manifest.warn(spec.model + ": " + std::to_string(empty) + " empty adaptations");
      log << spec.model << ": " << records.size() << "/" << corpus.dialogs.size()
          << " dialogs adapted, " << unclean << " with structure issues\n";
    }
  } catch (const Error& e) {
    manifest.error(e.what());
  }
  return finish(manifest, log);
}

}  // namespace adapteval::pipeline
