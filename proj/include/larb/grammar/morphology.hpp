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

#include <string>

#include "larb/grammar/lexicon.hpp"

namespace larb::grammar {

/// noun + "-ii" (proximal) or "-uu" (distal). Throws CategoryError for
/// non-nouns.
std::string attach_subject_suffix(const Lexeme& noun, Proximity proximity);

/// noun + "-(n)eika" (proximal) or "-(n)oka" (distal). The linking n is
/// dropped after a glottal stop unless the lexeme overrides the rule.
std::string attach_object_suffix(const Lexeme& noun, Proximity proximity);

/// True when the object suffix of `noun` takes the linking n.
bool takes_linking_n(const Lexeme& noun);

/// Verb stem used after an object-pronoun prefix: the stored lenited form,
/// or the plain surface when the verb does not lenite.
std::string lenite(const Lexeme& verb);

/// [prefix "-"] stem "-" tense. The stem is lenited only when a prefix is
/// present; placeholders never lenite. Throws AgreementError for a prefix on
/// an intransitive verb and CategoryError for wrong categories.
std::string compose_verb(const Lexeme& verb, const Lexeme* object_pronoun,
                         const Lexeme& tense);

/// -(n)eika pairs with proximal prefixes (a, ai, ma, mai); -(n)oka with
/// distal ones (u, ui). Prefixes without proximity never agree.
bool agreement_ok(const Lexeme& object_suffix, const Lexeme& object_pronoun);

}  // namespace larb::grammar
