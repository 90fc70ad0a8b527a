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

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "larb/grammar/lexicon.hpp"

namespace larb::grammar {

/// The seven builder slots, in builder order.
enum class Slot {
  kSubject,
  kSubjectSuffix,
  kVerb,
  kVerbTense,
  kObject,
  kObjectSuffix,
  kObjectPronoun,
};

inline constexpr std::array<Slot, 7> kAllSlots{
    Slot::kSubject, Slot::kSubjectSuffix, Slot::kVerb,         Slot::kVerbTense,
    Slot::kObject,  Slot::kObjectSuffix,  Slot::kObjectPronoun,
};

std::string_view to_string(Slot s);
std::optional<Slot> parse_slot(std::string_view s);

/// Categories a slot may hold.
std::vector<Category> slot_categories(Slot s);

/// Partial or complete builder state. Lexemes are held by value so
/// placeholders can live alongside lexicon entries.
struct SentenceSelections {
  std::optional<Lexeme> subject;
  std::optional<Lexeme> subject_suffix;
  std::optional<Lexeme> verb;
  std::optional<Lexeme> verb_tense;
  std::optional<Lexeme> object;
  std::optional<Lexeme> object_suffix;
  std::optional<Lexeme> object_pronoun;

  std::optional<Lexeme>& get(Slot s);
  const std::optional<Lexeme>& get(Slot s) const;

  bool operator==(const SentenceSelections&) const = default;
};

enum class Violation {
  kWrongCategory,
  kSuffixOnPronounSubject,
  kMissingSubjectSuffix,
  kObjectWithIntransitiveVerb,
  kMissingObjectPronoun,
  kMissingObjectSuffix,
  kObjectSuffixWithoutObject,
  kSuffixPrefixDisagreement,
  kPrefixCannotMarkNounObject,
};

std::string_view describe(Violation v);

struct Verdict {
  enum class Status { kComplete, kIncomplete, kInvalid };
  Status status = Status::kComplete;
  std::vector<Slot> missing;
  std::vector<Violation> violations;

  bool complete() const { return status == Status::kComplete; }
  std::string summary() const;
};

/// Checks every sentence rule. Missing subject/verb/tense make a sentence
/// incomplete; any rule violation makes it invalid.
Verdict validate(const SentenceSelections& selections);

/// Surface string ending in "."; throws ValidationError unless complete.
std::string render(const SentenceSelections& selections,
                   WordOrder order = WordOrder::kSecondPosition);

/// {"subject": "<id>", ...}; empty slots omitted.
nlohmann::json selections_to_json(const SentenceSelections& selections);

/// Resolves lexeme ids. Throws InputError on a malformed body (unknown slot
/// key, non-string id) and LookupError on an unknown id.
SentenceSelections selections_from_json(const nlohmann::json& body,
                                        const Lexicon& lexicon);

}  // namespace larb::grammar
