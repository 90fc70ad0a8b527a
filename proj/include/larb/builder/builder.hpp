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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "larb/grammar/lexicon.hpp"
#include "larb/grammar/sentence.hpp"

namespace larb::builder {

using grammar::Lexeme;
using grammar::Lexicon;
using grammar::SentenceSelections;
using grammar::Slot;

struct SlotChoices {
  Slot slot = Slot::kSubject;
  std::vector<const Lexeme*> choices;
  bool required = false;
  std::optional<std::string> locked_reason;
};

/// Result of apply_choice: the new state plus any downstream slots that
/// were cleared because the choice invalidated them.
struct ChoiceResult {
  SentenceSelections selections;
  std::vector<Slot> cleared;
};

/// Incremental selection engine. Holds a reference to an immutable lexicon;
/// every member is const and safe to call concurrently.
///
/// Upstream choices clear conflicting dependent slots (a pronoun subject
/// clears the subject suffix; an intransitive verb clears the three object
/// slots). Conflicts with any other filled slot are never offered, so e.g.
/// an object suffix is only offered when it agrees with a chosen prefix and
/// vice versa.
class SentenceBuilder {
 public:
  explicit SentenceBuilder(const Lexicon& lexicon) : lexicon_(lexicon) {}

  /// One entry per slot, in builder order. Throws LookupError when the
  /// selections reference lexemes outside the lexicon.
  std::vector<SlotChoices> valid_choices(const SentenceSelections& selections) const;
  SlotChoices choices_for(const SentenceSelections& selections, Slot slot) const;

  /// Throws ConstraintError when `lexeme` is not offered for `slot`.
  ChoiceResult apply_choice(const SentenceSelections& selections, Slot slot,
                            const Lexeme& lexeme) const;
  ChoiceResult apply_choice(const SentenceSelections& selections, Slot slot,
                            std::string_view lexeme_id) const;

  /// Whether some assignment of the empty slots yields a complete sentence.
  bool completable(const SentenceSelections& selections) const;

  /// Empty slots that must be filled before the sentence is complete.
  std::vector<Slot> required_slots(const SentenceSelections& selections) const;

  /// Uniform choice among offered options, slot by slot, until complete.
  /// Transitive verbs get a noun object on a fair coin flip.
  SentenceSelections random_sentence(std::uint64_t seed) const;

  const Lexicon& lexicon() const { return lexicon_; }

 private:
  std::optional<std::string> locked(const SentenceSelections& s, Slot slot) const;
  SentenceSelections with_choice(const SentenceSelections& s, Slot slot,
                                 const Lexeme& lexeme,
                                 std::vector<Slot>* cleared) const;
  void check_known(const SentenceSelections& s) const;

  const Lexicon& lexicon_;
};

nlohmann::json to_json(const SlotChoices& choices);

}  // namespace larb::builder
