// Copyright 2026 The LARB Translator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OVP -> English. A complete sentence is encoded into an English-only
// structured record, which the chat model turns into a natural sentence.
// The model never sees OVP text.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "larb/english/english.hpp"
#include "larb/grammar/lexicon.hpp"
#include "larb/grammar/sentence.hpp"
#include "larb/llm/chat.hpp"

namespace larb::ovp2en {

enum class PartRole { kSubject, kObject, kVerb };
std::string_view to_string(PartRole r);

/// The object-pronoun prefix that agrees with a noun object.
struct PrefixRef {
  std::string gloss;
  std::optional<grammar::Plurality> number;
  int sense = 0;

  bool operator==(const PrefixRef&) const = default;
};

struct Part {
  PartRole role = PartRole::kSubject;
  std::string word;  // English gloss, or "[lemma]" for a placeholder
  std::optional<grammar::Proximity> positional;  // nouns with a suffix only
  std::optional<english::Tense> tense;           // verb only
  bool going_to = false;
  std::optional<grammar::Plurality> number;
  // Which of several lexemes sharing this gloss (uhu/mahu both "he/she/it").
  // Kept for lossless decoding; never sent to the model.
  int sense = 0;
  bool pronoun = false;
  std::optional<PrefixRef> prefix;

  bool operator==(const Part&) const = default;
};

struct StructuredSentence {
  std::vector<Part> parts;  // subject, [object], verb

  const Part& subject() const;
  const Part& verb() const;
  const Part* object() const;

  nlohmann::json to_json() const;
  static StructuredSentence from_json(const nlohmann::json& j);

  bool operator==(const StructuredSentence&) const = default;
};

struct EncodeOptions {
  // -ti covers both present and past continuous; render it as the latter.
  bool ti_as_past_continuous = false;
};

/// Tense label and going-to flag for a tense suffix lexeme.
std::pair<english::Tense, bool> tense_of_suffix(const grammar::Lexeme& suffix,
                                                const EncodeOptions& options = {});

/// Throws ValidationError unless validate(selections) is complete.
StructuredSentence encode(const grammar::SentenceSelections& selections,
                          const grammar::Lexicon& lexicon, const EncodeOptions& options = {});

/// The user message for the render prompt: a compact JSON list with keys
/// part_of_speech, word, positional|tense, number.
std::string to_prompt_json(const StructuredSentence& structured);

std::string render_english(const StructuredSentence& structured, llm::ChatBackend& backend);

struct OvpTranslation {
  std::string surface;
  StructuredSentence structured;
  std::string english;

  nlohmann::json to_json() const;
};

OvpTranslation translate_ovp(const grammar::SentenceSelections& selections,
                             const grammar::Lexicon& lexicon, llm::ChatBackend& backend,
                             const EncodeOptions& options = {});

}  // namespace larb::ovp2en
