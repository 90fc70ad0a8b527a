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

#include "larb/grammar/morphology.hpp"

#include "larb/error.hpp"

namespace larb::grammar {
namespace {

void require(const Lexeme& lex, Category expected, const char* role) {
  if (lex.category != expected) {
    throw CategoryError(std::string(role) + " must be a " +
                        std::string(to_string(expected)) + ", got '" + lex.id +
                        "' (" + std::string(to_string(lex.category)) + ")");
  }
}

bool ends_with_glottal_stop(const std::string& s) {
  // ASCII apostrophe or U+02BC MODIFIER LETTER APOSTROPHE.
  return s.ends_with('\'') || s.ends_with("\xCA\xBC");
}

}  // namespace

std::string attach_subject_suffix(const Lexeme& noun, Proximity proximity) {
  require(noun, Category::kNoun, "suffixed subject");
  return noun.surface + (proximity == Proximity::kProximal ? "-ii" : "-uu");
}

bool takes_linking_n(const Lexeme& noun) {
  switch (noun.n_insertion) {
    case NInsertion::kAlways: return true;
    case NInsertion::kNever: return false;
    case NInsertion::kRule: break;
  }
  return !ends_with_glottal_stop(noun.surface);
}

std::string attach_object_suffix(const Lexeme& noun, Proximity proximity) {
  require(noun, Category::kNoun, "suffixed object");
  std::string out = noun.surface + "-";
  if (takes_linking_n(noun)) out += 'n';
  out += proximity == Proximity::kProximal ? "eika" : "oka";
  return out;
}

std::string lenite(const Lexeme& verb) {
  return verb.lenited_surface.value_or(verb.surface);
}

std::string compose_verb(const Lexeme& verb, const Lexeme* object_pronoun,
                         const Lexeme& tense) {
  if (!is_verb(verb.category)) {
    throw CategoryError("'" + verb.id + "' is not a verb");
  }
  require(tense, Category::kTenseSuffix, "tense");
  std::string out;
  if (object_pronoun != nullptr) {
    require(*object_pronoun, Category::kObjectPronounPrefix, "object pronoun");
    if (verb.category != Category::kTransitiveVerb) {
      throw AgreementError("object pronoun '" + object_pronoun->id +
                           "' on intransitive verb '" + verb.id + "'");
    }
    out = object_pronoun->surface + "-" +
          (verb.placeholder ? verb.surface : lenite(verb));
  } else {
    out = verb.surface;
  }
  return out + "-" + tense.surface;
}

bool agreement_ok(const Lexeme& object_suffix, const Lexeme& object_pronoun) {
  if (!object_suffix.proximity || !object_pronoun.proximity) return false;
  return *object_suffix.proximity == *object_pronoun.proximity;
}

}  // namespace larb::grammar
