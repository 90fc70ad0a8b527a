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

#include "larb/pipeline/ovp2en.hpp"

#include "larb/error.hpp"
#include "larb/text/unicode.hpp"

namespace larb::ovp2en {
namespace {

using english::Tense;
using grammar::Category;
using grammar::Lexeme;

std::optional<PartRole> parse_role(std::string_view s) {
  if (s == "subject") return PartRole::kSubject;
  if (s == "object") return PartRole::kObject;
  if (s == "verb") return PartRole::kVerb;
  return std::nullopt;
}

template <typename T, typename Parse>
std::optional<T> optional_field(const nlohmann::json& j, const char* key, Parse parse) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const auto v = parse(j.at(key).get<std::string>());
  if (!v) throw InputError(std::string("bad structured field '") + key + "'");
  return v;
}

int sense_of(const Lexeme& lex, const grammar::Lexicon& lexicon) {
  return lex.placeholder ? 0 : lexicon.sense_of(lex);
}

}  // namespace

std::string_view to_string(PartRole r) {
  switch (r) {
    case PartRole::kSubject: return "subject";
    case PartRole::kObject: return "object";
    case PartRole::kVerb: return "verb";
  }
  return "subject";
}

const Part& StructuredSentence::subject() const {
  for (const auto& p : parts) {
    if (p.role == PartRole::kSubject) return p;
  }
  throw InputError("structured sentence has no subject part");
}

const Part& StructuredSentence::verb() const {
  for (const auto& p : parts) {
    if (p.role == PartRole::kVerb) return p;
  }
  throw InputError("structured sentence has no verb part");
}

const Part* StructuredSentence::object() const {
  for (const auto& p : parts) {
    if (p.role == PartRole::kObject) return &p;
  }
  return nullptr;
}

nlohmann::json StructuredSentence::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : parts) {
    nlohmann::json j{{"part_of_speech", to_string(p.role)}, {"word", p.word}};
    if (p.positional) j["positional"] = grammar::to_string(*p.positional);
    if (p.tense) {
      j["tense"] = english::to_string(*p.tense);
      j["going_to"] = p.going_to;
    }
    if (p.number) j["number"] = grammar::to_string(*p.number);
    j["sense"] = p.sense;
    j["pronoun"] = p.pronoun;
    if (p.prefix) {
      nlohmann::json pre{{"gloss", p.prefix->gloss}, {"sense", p.prefix->sense}};
      if (p.prefix->number) pre["number"] = grammar::to_string(*p.prefix->number);
      j["prefix"] = pre;
    }
    out.push_back(std::move(j));
  }
  return out;
}

StructuredSentence StructuredSentence::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("structured sentence must be a JSON list");
  StructuredSentence s;
  try {
    for (const auto& item : j) {
      Part p;
      const auto role = parse_role(item.at("part_of_speech").get<std::string>());
      if (!role) throw InputError("bad part_of_speech");
      p.role = *role;
      p.word = item.at("word").get<std::string>();
      p.positional = optional_field<grammar::Proximity>(item, "positional",
                                                        grammar::parse_proximity);
      p.tense = optional_field<Tense>(item, "tense", english::parse_tense);
      p.going_to = item.value("going_to", false);
      p.number = optional_field<grammar::Plurality>(item, "number", grammar::parse_plurality);
      p.sense = item.value("sense", 0);
      p.pronoun = item.value("pronoun", false);
      if (item.contains("prefix")) {
        const auto& pre = item.at("prefix");
        p.prefix = PrefixRef{pre.at("gloss").get<std::string>(),
                             optional_field<grammar::Plurality>(pre, "number",
                                                                grammar::parse_plurality),
                             pre.value("sense", 0)};
      }
      s.parts.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad structured sentence: ") + e.what());
  }
  s.subject();
  s.verb();
  return s;
}

std::pair<Tense, bool> tense_of_suffix(const Lexeme& suffix, const EncodeOptions& options) {
  if (suffix.category != Category::kTenseSuffix) {
    throw CategoryError("'" + suffix.id + "' is not a tense suffix");
  }
  const std::string& s = suffix.surface;
  if (s == "ku") return {Tense::kPast, false};
  if (s == "ti") {
    return {options.ti_as_past_continuous ? Tense::kPastContinuous : Tense::kPresentContinuous,
            false};
  }
  if (s == text::nfc("dü")) return {Tense::kPresent, false};
  if (s == "wei") return {Tense::kFuture, false};
  if (s == "gaa-wei") return {Tense::kFuture, true};
  if (s == text::nfc("pü")) return {Tense::kPresentPerfect, false};
  throw LookupError("no tense mapping for suffix '" + s + "'");
}

StructuredSentence encode(const grammar::SentenceSelections& sel,
                          const grammar::Lexicon& lexicon, const EncodeOptions& options) {
  const auto verdict = grammar::validate(sel);
  if (!verdict.complete()) {
    throw ValidationError("cannot encode selections: " + verdict.summary());
  }
  StructuredSentence out;

  Part subject;
  subject.role = PartRole::kSubject;
  subject.word = sel.subject->gloss;
  subject.sense = sense_of(*sel.subject, lexicon);
  if (sel.subject->category == Category::kSubjectPronoun) {
    subject.pronoun = true;
    subject.number = sel.subject->plurality;
  } else {
    subject.positional = sel.subject_suffix->proximity;
  }
  out.parts.push_back(std::move(subject));

  if (sel.object_pronoun) {
    const Lexeme& prefix = *sel.object_pronoun;
    Part object;
    object.role = PartRole::kObject;
    if (sel.object) {
      object.word = sel.object->gloss;
      object.sense = sense_of(*sel.object, lexicon);
      object.positional = sel.object_suffix->proximity;
      object.number = prefix.plurality;
      object.prefix = PrefixRef{prefix.gloss, prefix.plurality, sense_of(prefix, lexicon)};
    } else {
      object.word = prefix.gloss;
      object.sense = sense_of(prefix, lexicon);
      object.number = prefix.plurality;
      object.pronoun = true;
    }
    out.parts.push_back(std::move(object));
  }

  Part verb;
  verb.role = PartRole::kVerb;
  verb.word = sel.verb->gloss;
  verb.sense = sense_of(*sel.verb, lexicon);
  const auto [tense, going_to] = tense_of_suffix(*sel.verb_tense, options);
  verb.tense = tense;
  verb.going_to = going_to;
  out.parts.push_back(std::move(verb));
  return out;
}

std::string to_prompt_json(const StructuredSentence& s) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& p : s.parts) {
    nlohmann::ordered_json j;
    j["part_of_speech"] = to_string(p.role);
    j["word"] = p.word;
    if (p.positional) j["positional"] = grammar::to_string(*p.positional);
    if (p.tense) j["tense"] = english::describe(*p.tense, p.going_to);
    if (p.number && *p.number != grammar::Plurality::kSingular) {
      j["number"] = grammar::to_string(*p.number);
    }
    out.push_back(std::move(j));
  }
  return out.dump();
}

std::string render_english(const StructuredSentence& s, llm::ChatBackend& backend) {
  const auto& t = llm::render_template();
  llm::ChatRequest request{t.name, t.messages_for(to_prompt_json(s)), std::nullopt};
  std::string reply = text::trim(llm::complete(backend, request));
  if (reply.empty()) throw FormatError("render reply was empty", reply);
  return reply;
}

nlohmann::json OvpTranslation::to_json() const {
  return {{"surface", surface}, {"structured", structured.to_json()}, {"english", english}};
}

OvpTranslation translate_ovp(const grammar::SentenceSelections& selections,
                             const grammar::Lexicon& lexicon, llm::ChatBackend& backend,
                             const EncodeOptions& options) {
  OvpTranslation out;
  out.surface = grammar::render(selections, lexicon.word_order());
  out.structured = encode(selections, lexicon, options);
  out.english = render_english(out.structured, backend);
  return out;
}

}  // namespace larb::ovp2en
