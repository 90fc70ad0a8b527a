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

// Rule-based stand-ins for the two prompts. They are deliberately simple:
// enough structure for the pipelines downstream to be exercised offline,
// with no claim to match a real model's output.

#include <cctype>
#include <unordered_set>

#include "larb/english/english.hpp"
#include "larb/error.hpp"
#include "larb/llm/backends.hpp"
#include "larb/text/unicode.hpp"

namespace larb::llm {
namespace {

using english::Tense;

// "him/her/it (distal)" -> "him"; "us (dual), you and I" -> "us".
std::string head_word(std::string_view word) {
  std::string w(word);
  if (english::is_token(text::trim(w))) return text::trim(w);
  const auto cut = w.find_first_of("(,");
  if (cut != std::string::npos) w = w.substr(0, cut);
  const auto slash = w.find('/');
  if (slash != std::string::npos) w = w.substr(0, slash);
  w = text::trim(w);
  return text::lower(w) == "i" ? "I" : w;
}

std::string demonstrative_phrase(const nlohmann::json& part, bool capital) {
  const std::string word = part.value("word", "");
  const bool plural = part.value("number", "") == "plural";
  const std::string positional = part.value("positional", "");
  if (positional.empty()) return head_word(word);
  const bool near = positional == "proximal";
  std::string det = plural ? (near ? "these" : "those") : (near ? "this" : "that");
  if (capital) det[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(det[0])));
  return det + " " + word;
}

// ---- segmentation -------------------------------------------------------

const std::unordered_set<std::string> kAux{
    "am",   "is",    "are",   "was",    "were",  "be",   "been", "will", "would", "shall",
    "can",  "could", "should", "may",   "might", "must", "have", "has",  "had",   "do",
    "does", "did",
};
const std::unordered_set<std::string> kSplitters{
    ",", "and", "but", "or", "while", "then", "so", "because", "when", "although", "though",
    "whereas", "yet", ";",
};
const std::unordered_set<std::string> kPrepositions{
    "in",   "on",     "at",      "to",     "near",   "with",   "from",  "into",  "under",
    "over", "by",     "for",     "of",     "about",  "through", "across", "behind", "around",
    "after", "before", "during", "without", "up",    "down",   "out",   "onto",  "toward",
    "towards", "inside", "outside", "past", "like", "along", "beside", "between", "among",
    "against", "upon", "within", "beyond", "off", "throughout",
};
const std::unordered_set<std::string> kAdverbs{
    "yesterday", "today", "tomorrow", "now",   "then",  "also",  "often", "always",
    "never",     "sometimes", "usually", "later", "again", "here", "there", "very",
    "too",       "not",   "just",  "still", "already", "soon", "together", "home",
    "fast",      "hard",  "well",  "much",  "tonight", "everyday",
};
const std::unordered_set<std::string> kDeterminers{
    "the", "a", "an", "this", "that", "these", "those", "my", "your", "his", "her", "its",
    "our", "their", "some", "any", "two", "three", "four", "five", "many", "every", "each",
    "several", "few", "one", "no",
};
const std::unordered_set<std::string> kTimeNouns{
    "morning", "night", "evening", "afternoon", "day", "week", "month", "year", "weekend",
    "time", "moment", "other",
};
const std::unordered_set<std::string> kSubjectPronouns{
    "i", "you", "he", "she", "it", "we", "they",
};
const std::unordered_set<std::string> kObjectPronouns{
    "me", "you", "him", "her", "it", "us", "them",
};

struct Token {
  std::string raw;
  std::string low;
  bool sentence_initial = false;
};

bool is_adverb(const std::string& low) {
  return kAdverbs.count(low) > 0 || (low.size() > 4 && low.ends_with("ly") && low != "fly" &&
                                     low != "family" && low != "reply");
}

std::vector<Token> tokenize(std::string_view input) {
  std::vector<Token> out;
  auto push = [&](std::string raw) {
    Token t;
    t.raw = raw;
    t.low = text::lower(raw);
    t.sentence_initial = out.empty();
    out.push_back(std::move(t));
  };
  std::string cur;
  std::vector<std::string> words;
  for (char c : std::string(input)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) words.push_back(cur), cur.clear();
    } else if (c == ',' || c == ';') {
      if (!cur.empty()) words.push_back(cur), cur.clear();
      words.push_back(std::string(1, c));
    } else if (c == '.' || c == '!' || c == '?' || c == '"' || c == ':' || c == '(' ||
               c == ')') {
      if (!cur.empty()) words.push_back(cur), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) words.push_back(cur);

  for (const auto& w : words) {
    const std::string low = text::lower(w);
    const auto apos = low.find('\'');
    if (apos == std::string::npos) {
      push(w);
      continue;
    }
    const std::string stem = w.substr(0, apos);
    const std::string tail = low.substr(apos);
    const std::string stem_low = text::lower(stem);
    if (tail == "'m") {
      push(stem), push("am");
    } else if (tail == "'re") {
      push(stem), push("are");
    } else if (tail == "'ll") {
      push(stem), push("will");
    } else if (tail == "'ve") {
      push(stem), push("have");
    } else if (tail == "'d") {
      push(stem), push("would");
    } else if (tail == "'t") {
      // don't, didn't, won't, can't, isn't ...
      std::string aux = stem_low.ends_with("n") ? stem.substr(0, stem.size() - 1) : stem;
      const std::string aux_low = text::lower(aux);
      if (aux_low == "wo") aux = "will";
      if (aux_low == "ca") aux = "can";
      push(aux), push("not");
    } else if (tail == "'s") {
      if (kSubjectPronouns.count(stem_low) || stem_low == "that" || stem_low == "there") {
        push(stem), push("is");
      } else {
        push(stem + "'s");  // possessive, treated as a determiner
      }
    } else {
      push(w);
    }
  }
  return out;
}

bool is_determiner(const Token& t) {
  return kDeterminers.count(t.low) > 0 || t.low.ends_with("'s");
}

bool capitalized(const Token& t) {
  return !t.raw.empty() && std::isupper(static_cast<unsigned char>(t.raw[0]));
}

// A capitalized word is a name unless it merely starts the sentence; a
// sentence-initial singular word directly followed by the verb is treated
// as a name too ("John read", "Mom made").
bool is_proper(const Token& t, bool followed_by_verb) {
  if (!capitalized(t) || t.low == "i") return false;
  if (!t.sentence_initial) return true;
  return followed_by_verb && !t.low.ends_with("s") && !kDeterminers.count(t.low) &&
         !kSubjectPronouns.count(t.low);
}

std::string noun_lemma(const Token& t, bool proper) {
  if (t.low == "i") return "I";
  if (proper) return t.raw;
  if (kSubjectPronouns.count(t.low) || kObjectPronouns.count(t.low)) return t.low;
  return english::singularize(t.low);
}

struct Segment {
  std::vector<Token> tokens;
  std::string conj;  // word that introduced it ("" for the first)
};

bool verb_like(const std::vector<Token>& toks, std::size_t i, bool may_start) {
  const Token& t = toks[i];
  if (i == 0 && !may_start) return false;
  if (t.low == "," || kPrepositions.count(t.low) || kDeterminers.count(t.low)) return false;
  if (is_adverb(t.low)) return false;
  if (i > 0 && is_determiner(toks[i - 1])) return false;
  if (kAux.count(t.low)) return true;
  if (i == 0) {
    return !capitalized(t) && !kSubjectPronouns.count(t.low) && !kObjectPronouns.count(t.low);
  }
  if (english::is_irregular_form(t.low)) return true;
  if (t.low.size() > 4 && t.low.ends_with("ing")) return true;
  if (t.low.size() > 3 && t.low.ends_with("ed")) return true;
  const Token& prev = toks[i - 1];
  if (kSubjectPronouns.count(prev.low)) return true;
  if (t.low.size() > 3 && t.low.ends_with("s") && !t.low.ends_with("ss")) return true;
  return capitalized(prev) && !capitalized(t);
}

struct Simple {
  std::string subject;
  std::string verb;
  Tense tense = Tense::kPresent;
  std::optional<std::string> object;
};

nlohmann::json to_json(const Simple& s) {
  return {{"subject", s.subject},
          {"verb", s.verb},
          {"verb_tense", english::to_string(s.tense)},
          {"object", s.object ? nlohmann::json(*s.object) : nlohmann::json()}};
}

}  // namespace

std::string mock_render(std::string_view structured_json) {
  nlohmann::json parts;
  try {
    parts = nlohmann::json::parse(structured_json);
  } catch (const nlohmann::json::parse_error&) {
    throw InputError("mock renderer expects a JSON list of sentence parts");
  }
  if (!parts.is_array()) throw InputError("mock renderer expects a JSON list of sentence parts");
  const nlohmann::json* subject = nullptr;
  const nlohmann::json* verb = nullptr;
  const nlohmann::json* object = nullptr;
  for (const auto& p : parts) {
    const std::string pos = p.value("part_of_speech", "");
    if (pos == "subject") subject = &p;
    if (pos == "verb") verb = &p;
    if (pos == "object") object = &p;
  }
  if (subject == nullptr || verb == nullptr) {
    throw InputError("mock renderer needs a subject and a verb part");
  }
  const auto tense = english::parse_description(verb->value("tense", "present"));
  english::Clause clause;
  clause.subject = demonstrative_phrase(*subject, true);
  clause.verb = text::trim(verb->value("word", ""));
  clause.tense = tense ? tense->first : Tense::kPresent;
  clause.going_to = tense && tense->second;
  if (object != nullptr) clause.object = demonstrative_phrase(*object, false);
  return english::realize(clause);
}

nlohmann::json mock_segment(std::string_view english_text, bool topic_verbs) {
  const auto tokens = tokenize(english_text);

  std::vector<Segment> segments(1);
  for (const auto& t : tokens) {
    if (kSplitters.count(t.low)) {
      if (!segments.back().tokens.empty()) segments.push_back({});
      if (t.low != "," || segments.back().conj.empty()) segments.back().conj = t.low;
      continue;
    }
    segments.back().tokens.push_back(t);
  }

  std::vector<Simple> out;
  std::vector<std::string> pending_subjects;
  std::optional<Simple> last;

  for (auto& seg : segments) {
    auto& toks = seg.tokens;
    while (!toks.empty() && is_adverb(toks.front().low)) toks.erase(toks.begin());
    if (toks.empty()) continue;
    if (kPrepositions.count(toks.front().low)) continue;  // "After dinner, ..."

    const bool may_start = last.has_value();
    std::optional<std::size_t> v;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (verb_like(toks, i, may_start)) {
        v = i;
        break;
      }
    }

    if (!v) {
      // No verb: either one of several coordinated subjects, or another
      // object for the previous verb.
      std::size_t h = toks.size();
      while (h > 0 && (is_adverb(toks[h - 1].low) || kPrepositions.count(toks[h - 1].low))) --h;
      if (h == 0) continue;
      const Token& head = toks[h - 1];
      const std::string lemma = noun_lemma(head, is_proper(head, true));
      if (last && last->object && (seg.conj == "and" || seg.conj == "," || seg.conj == "or")) {
        Simple more = *last;
        more.object = lemma;
        out.push_back(more);
      } else {
        pending_subjects.push_back(lemma);
      }
      continue;
    }

    // Subject: head of the tokens before the verb, else inherited.
    std::vector<std::string> subjects = pending_subjects;
    pending_subjects.clear();
    bool inherited = false;
    {
      std::optional<std::size_t> head;
      for (std::size_t i = 0; i < *v; ++i) {
        if (!is_adverb(toks[i].low) && !is_determiner(toks[i]) &&
            !kPrepositions.count(toks[i].low)) {
          head = i;
        }
      }
      if (head) {
        subjects.push_back(noun_lemma(toks[*head], is_proper(toks[*head], *head + 1 == *v)));
      } else if (subjects.empty()) {
        subjects.push_back(last ? last->subject : "it");
        inherited = true;
      }
    }

    // Verb group: auxiliaries, then the main verb.
    std::vector<std::string> aux;
    std::size_t i = *v;
    bool going_to = false;
    for (; i < toks.size(); ++i) {
      const std::string& w = toks[i].low;
      if (w == "not" || is_adverb(w)) continue;
      if (!kAux.count(w)) break;
      aux.push_back(w);
    }
    if (i + 2 < toks.size() && toks[i].low == "going" && toks[i + 1].low == "to" && !aux.empty()) {
      going_to = true;
      i += 2;
    }
    std::string main;
    if (i < toks.size() && !kPrepositions.count(toks[i].low) && !is_determiner(toks[i]) &&
        !kObjectPronouns.count(toks[i].low)) {
      main = toks[i].low;
      ++i;
    } else if (!aux.empty()) {
      main = aux.back();
      aux.pop_back();
    } else {
      continue;
    }

    auto has = [&](std::initializer_list<const char*> words) {
      for (const char* w : words) {
        for (const auto& a : aux) {
          if (a == w) return true;
        }
      }
      return false;
    };
    Tense tense = Tense::kPresent;
    const bool ing = main.size() > 4 && main.ends_with("ing");
    if (has({"will", "shall", "would"}) || going_to) {
      tense = Tense::kFuture;
    } else if (has({"am", "is", "are"}) && ing) {
      tense = Tense::kPresentContinuous;
    } else if (has({"was", "were"}) && ing) {
      tense = Tense::kPastContinuous;
    } else if (has({"have", "has"})) {
      tense = Tense::kPresentPerfect;
    } else if (has({"had", "did", "was", "were"})) {
      tense = Tense::kPast;
    } else if (!aux.empty()) {
      tense = Tense::kPresent;
    } else if (ing && last) {
      const bool past_frame = last->tense == Tense::kPast || last->tense == Tense::kPastContinuous;
      if (seg.conj == "while" || seg.conj == "when") {
        tense = past_frame ? Tense::kPastContinuous : Tense::kPresentContinuous;
      } else {
        tense = last->tense;
      }
    } else if (inherited && last && english::lemmatize_verb(main) == main &&
               !english::is_past_form(main)) {
      tense = last->tense;  // "will migrate and return"
    } else if (english::is_past_form(main)) {
      tense = Tense::kPast;
    } else if (english::lemmatize_verb(main) == main && english::past(main) == main &&
               english::person_of(subjects.back()) == english::Person::kThirdSingular) {
      tense = Tense::kPast;  // "John read", not "John reads"
    } else if (ing) {
      tense = Tense::kPresentContinuous;
    }
    std::string verb = english::lemmatize_verb(main);

    // Object: head of the noun phrase after the verb, up to a preposition.
    std::optional<std::string> object;
    if (i < toks.size() && toks[i].low.size() > 4 && toks[i].low.ends_with("ing") &&
        !kAux.count(toks[i].low) && !kPrepositions.count(toks[i].low)) {
      // "went hiking": a light verb with a gerund complement.
      if (topic_verbs) verb = english::lemmatize_verb(toks[i].low);
      ++i;
    }
    if (i < toks.size() && kObjectPronouns.count(toks[i].low)) {
      object = toks[i].low;
    } else {
      std::optional<std::size_t> head;
      for (; i < toks.size(); ++i) {
        const Token& t = toks[i];
        if (kPrepositions.count(t.low) || is_adverb(t.low)) break;
        if (is_determiner(t)) continue;
        head = i;
      }
      if (head && !kTimeNouns.count(toks[*head].low)) {
        object = noun_lemma(toks[*head], is_proper(toks[*head], false));
      }
    }

    for (const auto& s : subjects) {
      Simple simple{s, verb, tense, object};
      out.push_back(simple);
      last = simple;
    }
  }

  if (out.empty()) out.push_back({"it", "happen", Tense::kPresent, std::nullopt});
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : out) arr.push_back(to_json(s));
  return arr;
}

}  // namespace larb::llm
