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

#include "larb/grammar/sentence.hpp"

#include <algorithm>

#include "larb/error.hpp"
#include "larb/grammar/morphology.hpp"

namespace larb::grammar {
namespace {

constexpr std::array<std::string_view, 7> kSlotNames{
    "subject", "subject_suffix", "verb",          "verb_tense",
    "object",  "object_suffix",  "object_pronoun",
};

bool fits(const Lexeme& lex, Slot slot) {
  auto cats = slot_categories(slot);
  return std::find(cats.begin(), cats.end(), lex.category) != cats.end();
}

}  // namespace

std::string_view to_string(Slot s) {
  return kSlotNames[static_cast<std::size_t>(s)];
}

std::optional<Slot> parse_slot(std::string_view s) {
  for (std::size_t i = 0; i < kSlotNames.size(); ++i) {
    if (kSlotNames[i] == s) return kAllSlots[i];
  }
  return std::nullopt;
}

std::vector<Category> slot_categories(Slot s) {
  switch (s) {
    case Slot::kSubject: return {Category::kNoun, Category::kSubjectPronoun};
    case Slot::kSubjectSuffix: return {Category::kSubjectSuffix};
    case Slot::kVerb:
      return {Category::kTransitiveVerb, Category::kIntransitiveVerb};
    case Slot::kVerbTense: return {Category::kTenseSuffix};
    case Slot::kObject: return {Category::kNoun};
    case Slot::kObjectSuffix: return {Category::kObjectSuffix};
    case Slot::kObjectPronoun: return {Category::kObjectPronounPrefix};
  }
  return {};
}

std::optional<Lexeme>& SentenceSelections::get(Slot s) {
  switch (s) {
    case Slot::kSubject: return subject;
    case Slot::kSubjectSuffix: return subject_suffix;
    case Slot::kVerb: return verb;
    case Slot::kVerbTense: return verb_tense;
    case Slot::kObject: return object;
    case Slot::kObjectSuffix: return object_suffix;
    case Slot::kObjectPronoun: return object_pronoun;
  }
  return subject;
}

const std::optional<Lexeme>& SentenceSelections::get(Slot s) const {
  return const_cast<SentenceSelections*>(this)->get(s);
}

std::string_view describe(Violation v) {
  switch (v) {
    case Violation::kWrongCategory: return "lexeme category does not fit its slot";
    case Violation::kSuffixOnPronounSubject: return "pronoun subjects take no suffix";
    case Violation::kMissingSubjectSuffix: return "missing subject suffix";
    case Violation::kObjectWithIntransitiveVerb:
      return "intransitive verb cannot take an object";
    case Violation::kMissingObjectPronoun:
      return "transitive verb requires an object pronoun prefix";
    case Violation::kMissingObjectSuffix: return "noun object requires an object suffix";
    case Violation::kObjectSuffixWithoutObject: return "object suffix without an object";
    case Violation::kSuffixPrefixDisagreement:
      return "object suffix and object pronoun disagree in proximity";
    case Violation::kPrefixCannotMarkNounObject:
      return "object pronoun cannot refer to a noun object";
  }
  return "unknown violation";
}

std::string Verdict::summary() const {
  switch (status) {
    case Status::kComplete: return "complete";
    case Status::kIncomplete: {
      std::string out = "incomplete(";
      for (std::size_t i = 0; i < missing.size(); ++i) {
        if (i) out += ", ";
        out += to_string(missing[i]);
      }
      return out + ")";
    }
    case Status::kInvalid: {
      std::string out = "invalid(";
      for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) out += "; ";
        out += describe(violations[i]);
      }
      return out + ")";
    }
  }
  return "unknown";
}

Verdict validate(const SentenceSelections& s) {
  Verdict v;
  auto violate = [&](Violation x) {
    if (std::find(v.violations.begin(), v.violations.end(), x) == v.violations.end()) {
      v.violations.push_back(x);
    }
  };
  for (Slot slot : kAllSlots) {
    const auto& lex = s.get(slot);
    if (lex && !fits(*lex, slot)) violate(Violation::kWrongCategory);
  }
  if (!v.violations.empty()) {
    v.status = Verdict::Status::kInvalid;
    return v;
  }

  if (s.subject) {
    if (s.subject->category == Category::kSubjectPronoun && s.subject_suffix) {
      violate(Violation::kSuffixOnPronounSubject);
    }
    if (s.subject->category == Category::kNoun && !s.subject_suffix) {
      violate(Violation::kMissingSubjectSuffix);
    }
  }

  const bool any_object = s.object || s.object_suffix || s.object_pronoun;
  if (s.verb && s.verb->category == Category::kIntransitiveVerb && any_object) {
    violate(Violation::kObjectWithIntransitiveVerb);
  }
  if (s.verb && s.verb->category == Category::kTransitiveVerb && !s.object_pronoun) {
    violate(Violation::kMissingObjectPronoun);
  }
  if (s.object && !s.object_suffix) violate(Violation::kMissingObjectSuffix);
  if (!s.object && s.object_suffix) violate(Violation::kObjectSuffixWithoutObject);
  if (s.object_suffix && s.object_pronoun &&
      !agreement_ok(*s.object_suffix, *s.object_pronoun)) {
    violate(Violation::kSuffixPrefixDisagreement);
  }
  if (s.object && s.object_pronoun && !s.object_pronoun->proximity) {
    violate(Violation::kPrefixCannotMarkNounObject);
  }

  if (!s.subject) v.missing.push_back(Slot::kSubject);
  if (!s.verb) v.missing.push_back(Slot::kVerb);
  if (!s.verb_tense) v.missing.push_back(Slot::kVerbTense);

  if (!v.violations.empty()) {
    v.status = Verdict::Status::kInvalid;
  } else if (!v.missing.empty()) {
    v.status = Verdict::Status::kIncomplete;
  }
  return v;
}

std::string render(const SentenceSelections& s, WordOrder order) {
  const Verdict verdict = validate(s);
  if (!verdict.complete()) {
    throw ValidationError("cannot render selections: " + verdict.summary());
  }
  const bool pronoun_subject = s.subject->category == Category::kSubjectPronoun;
  const std::string subject =
      pronoun_subject ? s.subject->surface
                      : attach_subject_suffix(*s.subject, *s.subject_suffix->proximity);
  std::optional<std::string> object;
  if (s.object) object = attach_object_suffix(*s.object, *s.object_suffix->proximity);
  const std::string verb = compose_verb(
      *s.verb, s.object_pronoun ? &*s.object_pronoun : nullptr, *s.verb_tense);

  std::vector<std::string> parts;
  const bool subject_first = order == WordOrder::kSecondPosition ? !pronoun_subject
                                                                 : pronoun_subject;
  if (subject_first) {
    parts.push_back(subject);
    if (object) parts.push_back(*object);
    parts.push_back(verb);
  } else if (order == WordOrder::kSecondPosition) {
    if (object) {
      parts = {*object, subject, verb};
    } else {
      parts = {verb, subject};
    }
  } else {
    if (object) parts.push_back(*object);
    parts.push_back(verb);
    parts.push_back(subject);
  }

  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out + ".";
}

nlohmann::json selections_to_json(const SentenceSelections& selections) {
  nlohmann::json out = nlohmann::json::object();
  for (Slot slot : kAllSlots) {
    if (const auto& lex = selections.get(slot)) out[std::string(to_string(slot))] = lex->id;
  }
  return out;
}

SentenceSelections selections_from_json(const nlohmann::json& body,
                                        const Lexicon& lexicon) {
  if (!body.is_object()) throw InputError("selections must be an object of slot ids");
  SentenceSelections out;
  for (const auto& [key, value] : body.items()) {
    auto slot = parse_slot(key);
    if (!slot) throw InputError("unknown slot '" + key + "'");
    if (value.is_null()) continue;
    if (!value.is_string()) throw InputError("slot '" + key + "' must be a lexeme id");
    const auto id = value.get<std::string>();
    if (id.empty()) continue;
    out.get(*slot) = lexicon.at(id);
  }
  return out;
}

}  // namespace larb::grammar
