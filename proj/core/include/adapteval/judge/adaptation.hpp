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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adapteval/corpus.hpp"
#include "adapteval/judge/backend.hpp"
#include "adapteval/judge/prompts.hpp"

namespace adapteval::judge {

/// Target culture for one run. The built-in prompts target India; other
/// cultures supply a prompt directory (see PromptLibrary::from_directory).
struct CultureProfile {
  std::string id = "india";
};

struct CallContext {
  const PromptLibrary* prompts = nullptr;  // built-ins when null
  const ResponseCache* cache = nullptr;    // no persistence when null
  RetryPolicy retry;
  CallCounters* counters = nullptr;
};

/// Splits an adaptation completion into utterances. A speaker line is
/// "name: text" with a plausible name and non-empty text, or a TRANSCRIPT
/// NOTE line. Lines before the first speaker line are dropped, unprefixed
/// lines directly after an utterance are appended to it, and a blank line
/// followed by anything other than a speaker line ends the dialog.
std::vector<Utterance> parse_adaptation_completion(std::string_view raw);

/// Renders the adapt prompt for `dialog`, completes it, and parses the
/// result. A completion without speaker lines yields a record with no
/// utterances rather than an error.
AdaptationRecord generate_adaptation(CompletionBackend& backend, const Dialog& dialog,
                                     const CultureProfile& culture, const CallContext& ctx = {});

}  // namespace adapteval::judge
