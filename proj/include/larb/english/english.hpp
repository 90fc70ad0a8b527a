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

// Minimal English morphology and clause realization for simple SV/SVO
// sentences. Bracketed tokens such as "[VERB]" or "[migrate]" inflect by
// gluing a hyphenated ending: "[VERB]-ing", "[VERB]-ed", "[VERB]-s".

#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace larb::english {

enum class Tense {
  kPast,
  kPresent,
  kFuture,
  kPastContinuous,
  kPresentContinuous,
  kPresentPerfect,
};

inline constexpr std::array<Tense, 6> kAllTenses{
    Tense::kPast,           Tense::kPresent,           Tense::kFuture,
    Tense::kPastContinuous, Tense::kPresentContinuous, Tense::kPresentPerfect,
};

/// "past", "present", "future", "past_continuous", "present_continuous",
/// "present_perfect".
std::string_view to_string(Tense t);
/// Accepts the labels above, case-insensitively, with spaces or hyphens in
/// place of underscores.
std::optional<Tense> parse_tense(std::string_view s);

/// Prompt-facing description: "present continuous (-ing)", "future (will)",
/// "future (going to)", ...
std::string_view describe(Tense t, bool going_to = false);
/// Inverse of describe(); plain labels are accepted as well.
std::optional<std::pair<Tense, bool>> parse_description(std::string_view s);

bool is_token(std::string_view word);  // "[...]"

std::string third_person(std::string_view lemma);
std::string past(std::string_view lemma);
std::string past_participle(std::string_view lemma);
std::string present_participle(std::string_view lemma);

/// Every form of `lemma` (base, -s, past, participles), lowercased.
std::vector<std::string> verb_forms(std::string_view lemma);

/// Whether `word` is an irregular verb form (base, past or participle) from
/// the built-in table.
bool is_irregular_form(std::string_view word);
/// Irregular past forms that differ from the base, or regular "-ed" forms.
bool is_past_form(std::string_view word);

/// Best-effort inverse of the inflections above.
std::string lemmatize_verb(std::string_view form);
std::string singularize(std::string_view noun);

enum class Person { kFirstSingular, kThirdSingular, kPlural };
Person person_of(std::string_view subject_phrase);

bool is_personal_pronoun(std::string_view word);

/// Finite verb phrase: "will migrate", "is [VERB]-ing", "has cooked".
std::string verb_phrase(std::string_view lemma, Tense tense, bool going_to, Person person);

std::string capitalize_first(std::string s);

/// Assigns articles across a passage: a common noun gets "a"/"an" on first
/// mention and "the" afterwards; pronouns, proper nouns, tokens and phrases
/// that already carry a determiner pass through unchanged.
class Mentions {
 public:
  std::string noun_phrase(std::string_view word);

 private:
  std::set<std::string> seen_;
};

struct Clause {
  std::string subject;  // realized noun phrase
  std::string verb;     // lemma or token
  Tense tense = Tense::kPresent;
  bool going_to = false;
  std::optional<std::string> object;  // realized noun phrase
};

/// "A bird will migrate." Capitalized, ending in a period.
std::string realize(const Clause& clause);

}  // namespace larb::english
