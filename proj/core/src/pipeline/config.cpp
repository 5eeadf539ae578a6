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

#include "adapteval/pipeline/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "adapteval/error.hpp"
#include "adapteval/judge/mock.hpp"
#include "adapteval/util/format.hpp"
#include "adapteval/util/io.hpp"

namespace adapteval::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError(where + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where, T fallback) {
  if (!obj.contains(key) || obj[key].is_null()) return fallback;
  try {
    return obj[key].get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + "." + key + ": wrong type (" + obj[key].dump() + ")");
  }
}

fs::path get_path(const json& obj, const char* key, const std::string& where,
                  const fs::path& base) {
  const auto s = get<std::string>(obj, key, where, "");
  if (s.empty()) return {};
  return (base / s).lexically_normal();
}

judge::Decoding read_decoding(const json& j, const std::string& where, judge::Decoding d) {
  check_keys(j, {"temperature", "max_tokens", "seed"}, where);
  d.temperature = get<double>(j, "temperature", where, d.temperature);
  d.max_tokens = get<int>(j, "max_tokens", where, d.max_tokens);
  if (j.contains("seed")) {
    d.seed = j["seed"].is_null() ? std::nullopt
                                 : std::optional<std::int64_t>(get<std::int64_t>(j, "seed", where, 0));
  }
  return d;
}

ojson decoding_json(const judge::Decoding& d) {
  ojson j;
  j["temperature"] = d.temperature;
  j["max_tokens"] = d.max_tokens;
  j["seed"] = d.seed ? ojson(*d.seed) : ojson(nullptr);
  return j;
}

BackendKind read_kind(const json& j, const char* key, const std::string& where) {
  const auto name = get<std::string>(j, key, where, "http");
  auto kind = parse_backend_kind(name);
  if (!kind) throw ValidationError(where + "." + key + ": unknown backend kind '" + name + "'");
  return *kind;
}

BackendSpec read_backend(const json& j, const std::string& where, const fs::path& base,
                         const judge::Decoding& default_decoding) {
  check_keys(j,
             {"model", "kind", "endpoint", "wire_format", "api_key_env", "timeout_seconds",
              "replay_file", "fallback", "substitutions", "decoding"},
             where);
  BackendSpec b;
  b.model = get<std::string>(j, "model", where, "");
  b.kind = read_kind(j, "kind", where);
  b.endpoint = get<std::string>(j, "endpoint", where, "");
  const auto wire = get<std::string>(j, "wire_format", where, "chat");
  if (auto w = judge::parse_wire_format(wire)) {
    b.wire_format = *w;
  } else {
    throw ValidationError(where + ".wire_format: unknown '" + wire + "'");
  }
  b.api_key_env = get<std::string>(j, "api_key_env", where, "");
  b.timeout_seconds = get<int>(j, "timeout_seconds", where, b.timeout_seconds);
  b.replay_file = get_path(j, "replay_file", where, base);
  if (j.contains("fallback") && !j["fallback"].is_null()) b.fallback = read_kind(j, "fallback", where);
  if (j.contains("substitutions")) {
    const auto& subs = j["substitutions"];
    if (!subs.is_array()) throw ValidationError(where + ".substitutions: expected an array");
    for (const auto& pair : subs) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        throw ValidationError(where + ".substitutions: expected [from, to] string pairs");
      }
      b.substitutions.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  b.decoding = j.contains("decoding") ? read_decoding(j["decoding"], where + ".decoding",
                                                      default_decoding)
                                      : default_decoding;
  return b;
}

ojson backend_json(const BackendSpec& b) {
  ojson j;
  j["model"] = b.model;
  j["kind"] = to_string(b.kind);
  if (b.kind == BackendKind::Http) {
    j["endpoint"] = b.endpoint;
    j["wire_format"] = b.wire_format == judge::WireFormat::Native ? "native" : "chat";
    j["api_key_env"] = b.api_key_env;
    j["timeout_seconds"] = b.timeout_seconds;
  }
  if (b.kind == BackendKind::Replay) {
    j["replay_file"] = b.replay_file.generic_string();
    j["fallback"] = b.fallback ? ojson(to_string(*b.fallback)) : ojson(nullptr);
  }
  if (!b.substitutions.empty()) {
    j["substitutions"] = ojson::array();
    for (const auto& [from, to] : b.substitutions) j["substitutions"].push_back({from, to});
  }
  j["decoding"] = decoding_json(b.decoding);
  return j;
}

}  // namespace

std::string_view to_string(BackendKind k) {
  switch (k) {
    case BackendKind::Http: return "http";
    case BackendKind::Echo: return "echo";
    case BackendKind::Heuristic: return "heuristic";
    case BackendKind::Replay: return "replay";
  }
  return "http";
}

std::optional<BackendKind> parse_backend_kind(std::string_view name) {
  for (auto k : {BackendKind::Http, BackendKind::Echo, BackendKind::Heuristic, BackendKind::Replay}) {
    if (util::iequals(name, to_string(k))) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Adapt: return "adapt";
    case Command::Evaluate: return "evaluate";
    case Command::Correlate: return "correlate";
    case Command::Report: return "report";
    case Command::ValidateCorpus: return "validate-corpus";
  }
  return "adapt";
}

RunConfig RunConfig::from_json(const json& j, const fs::path& base_dir) {
  const std::string root = "config";
  check_keys(j,
             {"corpus", "target_culture", "prompts_dir", "lexicon", "adapters", "judge",
              "adaptation_files", "csi_match_threshold", "csi_count_mode", "cache_dir",
              "out_dir", "max_inflight", "retry", "decoding", "significance", "p_value",
              "human_eval"},
             root);
  const fs::path base = fs::absolute(base_dir);
  RunConfig c;
  if (j.contains("corpus")) {
    const auto& corpus = j["corpus"];
    const std::string where = root + ".corpus";
    check_keys(corpus, {"dialogs", "annotations", "permissive", "count_transcript_notes", "limit"},
               where);
    c.dialogs = get_path(corpus, "dialogs", where, base);
    c.annotations = get_path(corpus, "annotations", where, base);
    c.permissive = get<bool>(corpus, "permissive", where, c.permissive);
    c.count_transcript_notes =
        get<bool>(corpus, "count_transcript_notes", where, c.count_transcript_notes);
    if (corpus.contains("limit") && !corpus["limit"].is_null()) {
      c.limit = get<std::size_t>(corpus, "limit", where, 0);
    }
  }
  c.target_culture = get<std::string>(j, "target_culture", root, c.target_culture);
  c.prompts_dir = get_path(j, "prompts_dir", root, base);
  c.lexicon = get_path(j, "lexicon", root, base);

  judge::Decoding decoding;
  if (j.contains("decoding")) decoding = read_decoding(j["decoding"], root + ".decoding", decoding);
  if (j.contains("adapters")) {
    if (!j["adapters"].is_array()) throw ValidationError(root + ".adapters: expected an array");
    for (std::size_t i = 0; i < j["adapters"].size(); ++i) {
      c.adapters.push_back(read_backend(j["adapters"][i],
                                        root + ".adapters[" + std::to_string(i) + "]", base,
                                        decoding));
    }
  }
  if (j.contains("judge")) {
    if (j["judge"].is_array()) throw ValidationError(root + ".judge: exactly one judge backend");
    c.judge = read_backend(j["judge"], root + ".judge", base, decoding);
  } else {
    c.judge.decoding = decoding;
  }
  if (j.contains("adaptation_files")) {
    const auto& files = j["adaptation_files"];
    if (!files.is_object()) throw ValidationError(root + ".adaptation_files: expected an object");
    for (const auto& [model, path] : files.items()) {
      if (!path.is_string()) throw ValidationError(root + ".adaptation_files." + model + ": expected a path");
      c.adaptation_files[model] = (base / path.get<std::string>()).lexically_normal();
    }
  }
  c.csi_match_threshold = get<int>(j, "csi_match_threshold", root, c.csi_match_threshold);
  const auto mode = get<std::string>(j, "csi_count_mode", root, "occurrence");
  if (mode == "occurrence") {
    c.csi_count_mode = CsiCountMode::Occurrence;
  } else if (mode == "type") {
    c.csi_count_mode = CsiCountMode::Type;
  } else {
    throw ValidationError(root + ".csi_count_mode: expected \"occurrence\" or \"type\"");
  }
  c.cache_dir = get_path(j, "cache_dir", root, base);
  c.out_dir = get_path(j, "out_dir", root, base);
  if (c.out_dir.empty()) c.out_dir = (base / "out").lexically_normal();
  c.max_inflight = get<std::size_t>(j, "max_inflight", root, c.max_inflight);
  if (j.contains("retry")) {
    const auto& r = j["retry"];
    check_keys(r, {"max_retries", "backoff_ms"}, root + ".retry");
    c.retry.max_retries = get<int>(r, "max_retries", root + ".retry", c.retry.max_retries);
    c.retry.base_backoff = std::chrono::milliseconds(
        get<std::int64_t>(r, "backoff_ms", root + ".retry", c.retry.base_backoff.count()));
  }
  c.significance = get<double>(j, "significance", root, c.significance);
  const auto p = get<std::string>(j, "p_value", root, "normal");
  if (p == "normal") {
    c.p_value = PValueMethod::Normal;
  } else if (p == "exact") {
    c.p_value = PValueMethod::Exact;
  } else {
    throw ValidationError(root + ".p_value: expected \"normal\" or \"exact\"");
  }
  if (j.contains("human_eval")) {
    const auto& h = j["human_eval"];
    check_keys(h, {"ratings", "model"}, root + ".human_eval");
    c.human_ratings = get_path(h, "ratings", root + ".human_eval", base);
    c.human_eval_model = get<std::string>(h, "model", root + ".human_eval", "");
  }
  return c;
}

RunConfig RunConfig::load(const fs::path& file) {
  const auto text = util::read_file(file);
  const auto j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("config " + file.string() + ": not valid JSON");
  return from_json(j, fs::absolute(file).parent_path());
}

ojson RunConfig::to_json() const {
  ojson j;
  j["corpus"]["dialogs"] = dialogs.generic_string();
  j["corpus"]["annotations"] = annotations.generic_string();
  j["corpus"]["permissive"] = permissive;
  j["corpus"]["count_transcript_notes"] = count_transcript_notes;
  j["corpus"]["limit"] = limit ? ojson(*limit) : ojson(nullptr);
  j["target_culture"] = target_culture;
  j["prompts_dir"] = prompts_dir.generic_string();
  j["lexicon"] = lexicon.generic_string();
  j["adapters"] = ojson::array();
  for (const auto& a : adapters) j["adapters"].push_back(backend_json(a));
  j["judge"] = backend_json(judge);
  j["adaptation_files"] = ojson::object();
  for (const auto& [model, path] : adaptation_files) j["adaptation_files"][model] = path.generic_string();
  j["csi_match_threshold"] = csi_match_threshold;
  j["csi_count_mode"] = csi_count_mode == CsiCountMode::Type ? "type" : "occurrence";
  j["cache_dir"] = cache_dir.generic_string();
  j["out_dir"] = out_dir.generic_string();
  j["max_inflight"] = max_inflight;
  j["retry"]["max_retries"] = retry.max_retries;
  j["retry"]["backoff_ms"] = retry.base_backoff.count();
  j["significance"] = significance;
  j["p_value"] = p_value == PValueMethod::Exact ? "exact" : "normal";
  j["human_eval"]["ratings"] = human_ratings.generic_string();
  j["human_eval"]["model"] = human_eval_model;
  return j;
}

void RunConfig::validate(Command cmd) const {
  std::vector<std::string> problems;
  auto need_file = [&](const fs::path& p, const std::string& what) {
    if (p.empty()) {
      problems.push_back(what + " is not set");
    } else if (!fs::exists(p)) {
      problems.push_back(what + " does not exist: " + p.string());
    }
  };
  auto check_backend = [&](const BackendSpec& b, const std::string& what) {
    if (b.model.empty()) problems.push_back(what + ": model is not set");
    if (b.decoding.temperature < 0) problems.push_back(what + ": temperature must be >= 0");
    if (b.decoding.max_tokens <= 0) problems.push_back(what + ": max_tokens must be > 0");
    if (b.kind == BackendKind::Http && b.endpoint.empty()) {
      problems.push_back(what + ": http backend needs an endpoint");
    }
    if (b.kind == BackendKind::Replay) need_file(b.replay_file, what + ".replay_file");
    if (b.fallback == BackendKind::Replay || b.fallback == BackendKind::Http) {
      problems.push_back(what + ": fallback must be echo or heuristic");
    }
  };

  need_file(dialogs, "corpus.dialogs");
  if (!annotations.empty() && !fs::exists(annotations)) {
    problems.push_back("corpus.annotations does not exist: " + annotations.string());
  }
  if (!prompts_dir.empty() && !fs::is_directory(prompts_dir)) {
    problems.push_back("prompts_dir is not a directory: " + prompts_dir.string());
  }
  if (!lexicon.empty() && !fs::exists(lexicon)) {
    problems.push_back("lexicon does not exist: " + lexicon.string());
  }
  if (csi_match_threshold < 0 || csi_match_threshold > 100) {
    problems.push_back("csi_match_threshold must be in 0..100");
  }
  if (!(significance > 0 && significance < 1)) problems.push_back("significance must be in (0, 1)");
  if (max_inflight == 0) problems.push_back("max_inflight must be >= 1");
  if (retry.max_retries < 0) problems.push_back("retry.max_retries must be >= 0");

  if (cmd != Command::ValidateCorpus) {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < adapters.size(); ++i) {
      const auto what = "adapters[" + std::to_string(i) + "]";
      check_backend(adapters[i], what);
      if (!ids.insert(adapters[i].model).second) {
        problems.push_back(what + ": duplicate model id '" + adapters[i].model + "'");
      }
    }
    for (const auto& [model, path] : adaptation_files) ids.insert(model);
    if (ids.empty()) problems.push_back("no adapter models configured");
  }
  if (cmd == Command::Evaluate) check_backend(judge, "judge");
  if (cmd == Command::Evaluate) {
    for (const auto& [model, path] : adaptation_files) need_file(path, "adaptation_files." + model);
  }
  if (cmd == Command::Correlate) need_file(human_ratings, "human_eval.ratings");

  if (!problems.empty()) {
    throw ValidationError("invalid config:\n  " + util::join(problems, "\n  "));
  }
}

std::vector<std::string> RunConfig::model_ids() const {
  std::vector<std::string> ids;
  for (const auto& a : adapters) ids.push_back(a.model);
  for (const auto& [model, path] : adaptation_files) {
    if (std::find(ids.begin(), ids.end(), model) == ids.end()) ids.push_back(model);
  }
  return ids;
}

fs::path RunConfig::adaptations_path(const std::string& model) const {
  if (auto it = adaptation_files.find(model); it != adaptation_files.end()) return it->second;
  return out_dir / "adaptations" / (util::slug(model) + ".jsonl");
}

fs::path RunConfig::evaluation_dir(const std::string& model) const {
  return out_dir / "evaluation" / util::slug(model);
}

void apply_overrides(RunConfig& c, const Overrides& o) {
  auto abs = [](const fs::path& p) { return fs::absolute(p).lexically_normal(); };
  if (o.csi_match_threshold) c.csi_match_threshold = *o.csi_match_threshold;
  if (o.judge_model) c.judge.model = *o.judge_model;
  if (o.cache_dir) c.cache_dir = abs(*o.cache_dir);
  if (o.out_dir) c.out_dir = abs(*o.out_dir);
  if (o.max_inflight) c.max_inflight = *o.max_inflight;
  if (o.significance) c.significance = *o.significance;
  if (o.human_ratings) c.human_ratings = abs(*o.human_ratings);
}

std::unique_ptr<judge::CompletionBackend> make_backend(const BackendSpec& spec,
                                                       const RunConfig& config) {
  auto lexicon = [&] {
    if (config.lexicon.empty()) return Lexicon::builtin(config.target_culture);
    std::ifstream in(config.lexicon);
    return Lexicon::parse(in);
  };
  auto prompts = [&] {
    return config.prompts_dir.empty() ? judge::PromptLibrary()
                                      : judge::PromptLibrary::from_directory(config.prompts_dir);
  };
  auto offline = [&](BackendKind kind) -> judge::FunctionBackend::Fn {
    if (kind == BackendKind::Heuristic) {
      return judge::HeuristicJudge(lexicon(), prompts(), config.csi_match_threshold);
    }
    if (spec.substitutions.empty()) return judge::echo_adaptation;
    return judge::substitution_adapter(spec.substitutions);
  };
  switch (spec.kind) {
    case BackendKind::Http: {
      judge::HttpBackendOptions opts;
      opts.endpoint = spec.endpoint;
      opts.wire_format = spec.wire_format;
      opts.api_key_env = spec.api_key_env;
      opts.timeout = std::chrono::seconds(spec.timeout_seconds);
      return std::make_unique<judge::HttpBackend>(spec.model, opts, spec.decoding);
    }
    case BackendKind::Echo:
    case BackendKind::Heuristic:
      return std::make_unique<judge::FunctionBackend>(spec.model, offline(spec.kind), spec.decoding);
    case BackendKind::Replay:
      return std::make_unique<judge::ReplayBackend>(
          spec.model, spec.replay_file, spec.fallback ? offline(*spec.fallback) : nullptr,
          spec.decoding);
  }
  throw ValidationError("unknown backend kind");
}

}  // namespace adapteval::pipeline
