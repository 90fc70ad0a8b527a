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

#include "larb/builder/builder.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "larb/error.hpp"
#include "larb/grammar/morphology.hpp"

namespace larb::builder {

using grammar::Category;
using grammar::Proximity;

namespace {

bool is_pronoun_subject(const SentenceSelections& s) {
  return s.subject && s.subject->category == Category::kSubjectPronoun;
}

bool is_intransitive(const SentenceSelections& s) {
  return s.verb && s.verb->category == Category::kIntransitiveVerb;
}

bool is_object_slot(Slot slot) {
  return slot == Slot::kObject || slot == Slot::kObjectSuffix ||
         slot == Slot::kObjectPronoun;
}

std::vector<Slot> dependents(Slot slot) {
  switch (slot) {
    case Slot::kSubject: return {Slot::kSubjectSuffix};
    case Slot::kVerb: return {Slot::kObject, Slot::kObjectSuffix, Slot::kObjectPronoun};
    default: return {};
  }
}

}  // namespace

void SentenceBuilder::check_known(const SentenceSelections& s) const {
  for (Slot slot : grammar::kAllSlots) {
    const auto& lex = s.get(slot);
    if (!lex) continue;
    const Lexeme* known = lexicon_.find(lex->id);
    if (known == nullptr || *known != *lex) {
      throw LookupError("unknown lexeme '" + lex->id + "' in slot " +
                        std::string(grammar::to_string(slot)));
    }
  }
}

std::optional<std::string> SentenceBuilder::locked(const SentenceSelections& s,
                                                   Slot slot) const {
  if (slot == Slot::kSubjectSuffix && is_pronoun_subject(s)) {
    return "pronoun subjects take no suffix";
  }
  if (is_object_slot(slot) && is_intransitive(s)) return "intransitive verb";
  return std::nullopt;
}

bool SentenceBuilder::completable(const SentenceSelections& s) const {
  for (Slot slot : grammar::kAllSlots) {
    const auto& lex = s.get(slot);
    if (!lex) continue;
    auto cats = grammar::slot_categories(slot);
    if (std::find(cats.begin(), cats.end(), lex->category) == cats.end()) return false;
  }
  if (is_pronoun_subject(s) && s.subject_suffix) return false;
  const bool any_object = s.object || s.object_suffix || s.object_pronoun;
  if (is_intransitive(s) && any_object) return false;

  auto exists = [&](Category c, const std::function<bool(const Lexeme&)>& pred) {
    for (const Lexeme* lex : lexicon_.by_category(c)) {
      if (!lex->variant && pred(*lex)) return true;
    }
    return false;
  };
  auto any = [](const Lexeme&) { return true; };

  if (!s.subject && !exists(Category::kNoun, any) &&
      (s.subject_suffix || !exists(Category::kSubjectPronoun, any))) {
    return false;
  }
  if (s.subject && !is_pronoun_subject(s) && !s.subject_suffix &&
      !exists(Category::kSubjectSuffix, any)) {
    return false;
  }
  if (!s.verb_tense && !exists(Category::kTenseSuffix, any)) return false;

  // Object agreement: a suffix and prefix must share a proximity; a prefix
  // referring to a noun object must be third person.
  const bool noun_object = s.object || s.object_suffix;
  if (s.object_suffix && s.object_pronoun &&
      !grammar::agreement_ok(*s.object_suffix, *s.object_pronoun)) {
    return false;
  }
  if (noun_object && s.object_pronoun && !s.object_pronoun->proximity) return false;
  if (s.object_suffix && !s.object_pronoun &&
      !exists(Category::kObjectPronounPrefix, [&](const Lexeme& p) {
        return grammar::agreement_ok(*s.object_suffix, p);
      })) {
    return false;
  }
  if (s.object && !s.object_suffix) {
    const bool ok = exists(Category::kObjectSuffix, [&](const Lexeme& suffix) {
      if (s.object_pronoun) return grammar::agreement_ok(suffix, *s.object_pronoun);
      return exists(Category::kObjectPronounPrefix, [&](const Lexeme& p) {
        return grammar::agreement_ok(suffix, p);
      });
    });
    if (!ok) return false;
  }
  if (s.object_suffix && !s.object && !exists(Category::kNoun, any)) return false;

  const bool needs_transitive = any_object ||
      (s.verb && s.verb->category == Category::kTransitiveVerb);
  if (!s.verb) {
    if (needs_transitive && !exists(Category::kTransitiveVerb, any)) return false;
    if (!exists(Category::kTransitiveVerb, any) &&
        !exists(Category::kIntransitiveVerb, any)) {
      return false;
    }
  }
  if (needs_transitive && !s.object_pronoun &&
      !exists(Category::kObjectPronounPrefix, [](const Lexeme&) { return true; })) {
    return false;
  }
  return true;
}

std::vector<Slot> SentenceBuilder::required_slots(const SentenceSelections& s) const {
  std::vector<Slot> out;
  if (!s.subject) out.push_back(Slot::kSubject);
  if (s.subject && !is_pronoun_subject(s) && !s.subject_suffix) {
    out.push_back(Slot::kSubjectSuffix);
  }
  if (!s.verb) out.push_back(Slot::kVerb);
  if (!s.verb_tense) out.push_back(Slot::kVerbTense);
  if (s.object_suffix && !s.object) out.push_back(Slot::kObject);
  if (s.object && !s.object_suffix) out.push_back(Slot::kObjectSuffix);
  const bool transitive = s.verb && s.verb->category == Category::kTransitiveVerb;
  if ((transitive || s.object || s.object_suffix) && !s.object_pronoun) {
    out.push_back(Slot::kObjectPronoun);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SentenceSelections SentenceBuilder::with_choice(const SentenceSelections& s,
                                                Slot slot, const Lexeme& lexeme,
                                                std::vector<Slot>* cleared) const {
  SentenceSelections next = s;
  next.get(slot) = lexeme;
  for (Slot dep : dependents(slot)) {
    if (next.get(dep) && locked(next, dep)) {
      next.get(dep).reset();
      if (cleared != nullptr) cleared->push_back(dep);
    }
  }
  return next;
}

SlotChoices SentenceBuilder::choices_for(const SentenceSelections& s, Slot slot) const {
  check_known(s);
  SlotChoices out;
  out.slot = slot;
  const auto required = required_slots(s);
  out.required = std::find(required.begin(), required.end(), slot) != required.end();
  if (auto reason = locked(s, slot)) {
    out.locked_reason = std::move(reason);
    return out;
  }
  for (Category c : grammar::slot_categories(slot)) {
    for (const Lexeme* lex : lexicon_.by_category(c)) {
      if (lex->variant) continue;
      if (completable(with_choice(s, slot, *lex, nullptr))) out.choices.push_back(lex);
    }
  }
  if (out.choices.empty()) out.locked_reason = "no choice is compatible with the current selections";
  return out;
}

std::vector<SlotChoices> SentenceBuilder::valid_choices(const SentenceSelections& s) const {
  std::vector<SlotChoices> out;
  out.reserve(grammar::kAllSlots.size());
  for (Slot slot : grammar::kAllSlots) out.push_back(choices_for(s, slot));
  return out;
}

ChoiceResult SentenceBuilder::apply_choice(const SentenceSelections& s, Slot slot,
                                           const Lexeme& lexeme) const {
  const SlotChoices offered = choices_for(s, slot);
  const bool ok = std::any_of(offered.choices.begin(), offered.choices.end(),
                              [&](const Lexeme* l) { return l->id == lexeme.id; });
  if (!ok) {
    std::string why = offered.locked_reason.value_or("conflicts with the current selections");
    throw ConstraintError("'" + lexeme.id + "' is not a valid " +
                          std::string(grammar::to_string(slot)) + " choice: " + why);
  }
  ChoiceResult result;
  result.selections = with_choice(s, slot, lexicon_.at(lexeme.id), &result.cleared);
  return result;
}

ChoiceResult SentenceBuilder::apply_choice(const SentenceSelections& s, Slot slot,
                                           std::string_view lexeme_id) const {
  return apply_choice(s, slot, lexicon_.at(lexeme_id));
}

SentenceSelections SentenceBuilder::random_sentence(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  SentenceSelections s;
  auto pick = [&](Slot slot) {
    const SlotChoices offered = choices_for(s, slot);
    if (offered.choices.empty()) {
      throw Error("random generation reached a slot with no choices: " +
                  std::string(grammar::to_string(slot)));
    }
    std::uniform_int_distribution<std::size_t> dist(0, offered.choices.size() - 1);
    s = with_choice(s, slot, *offered.choices[dist(rng)], nullptr);
  };
  pick(Slot::kSubject);
  if (!is_pronoun_subject(s)) pick(Slot::kSubjectSuffix);
  pick(Slot::kVerb);
  pick(Slot::kVerbTense);
  if (s.verb->category == Category::kTransitiveVerb) {
    std::bernoulli_distribution coin(0.5);
    if (coin(rng)) {
      pick(Slot::kObject);
      pick(Slot::kObjectSuffix);
    }
    pick(Slot::kObjectPronoun);
  }
  return s;
}

nlohmann::json to_json(const SlotChoices& c) {
  nlohmann::json choices = nlohmann::json::array();
  for (const Lexeme* lex : c.choices) {
    choices.push_back({{"id", lex->id}, {"surface", lex->surface}, {"gloss", lex->gloss},
                       {"category", grammar::to_string(lex->category)}});
  }
  nlohmann::json out{{"slot", grammar::to_string(c.slot)},
                     {"choices", std::move(choices)},
                     {"required", c.required}};
  out["locked_reason"] = c.locked_reason ? nlohmann::json(*c.locked_reason) : nlohmann::json();
  return out;
}

}  // namespace larb::builder
