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

#include "larb/english/english.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "larb/text/unicode.hpp"

namespace larb::english {
namespace {

struct Irregular {
  const char* base;
  const char* past;
  const char* participle;
};

constexpr Irregular kIrregular[] = {
    {"be", "was", "been"},          {"have", "had", "had"},
    {"do", "did", "done"},          {"go", "went", "gone"},
    {"see", "saw", "seen"},         {"eat", "ate", "eaten"},
    {"drink", "drank", "drunk"},    {"read", "read", "read"},
    {"write", "wrote", "written"},  {"run", "ran", "run"},
    {"sing", "sang", "sung"},       {"swim", "swam", "swum"},
    {"sit", "sat", "sat"},          {"sleep", "slept", "slept"},
    {"fall", "fell", "fallen"},     {"fly", "flew", "flown"},
    {"find", "found", "found"},     {"hear", "heard", "heard"},
    {"lie", "lay", "lain"},         {"stand", "stood", "stood"},
    {"take", "took", "taken"},      {"make", "made", "made"},
    {"get", "got", "gotten"},       {"give", "gave", "given"},
    {"come", "came", "come"},       {"know", "knew", "known"},
    {"think", "thought", "thought"}, {"say", "said", "said"},
    {"tell", "told", "told"},       {"drive", "drove", "driven"},
    {"ride", "rode", "ridden"},     {"buy", "bought", "bought"},
    {"bring", "brought", "brought"}, {"catch", "caught", "caught"},
    {"teach", "taught", "taught"},  {"feel", "felt", "felt"},
    {"leave", "left", "left"},      {"meet", "met", "met"},
    {"pay", "paid", "paid"},        {"sell", "sold", "sold"},
    {"send", "sent", "sent"},       {"spend", "spent", "spent"},
    {"win", "won", "won"},          {"begin", "began", "begun"},
    {"break", "broke", "broken"},   {"choose", "chose", "chosen"},
    {"draw", "drew", "drawn"},      {"forget", "forgot", "forgotten"},
    {"grow", "grew", "grown"},      {"hide", "hid", "hidden"},
    {"hold", "held", "held"},       {"keep", "kept", "kept"},
    {"lose", "lost", "lost"},       {"put", "put", "put"},
    {"shake", "shook", "shaken"},   {"speak", "spoke", "spoken"},
    {"steal", "stole", "stolen"},   {"throw", "threw", "thrown"},
    {"understand", "understood", "understood"},
    {"wake", "woke", "woken"},      {"wear", "wore", "worn"},
    {"build", "built", "built"},    {"hit", "hit", "hit"},
    {"cut", "cut", "cut"},          {"let", "let", "let"},
    {"shut", "shut", "shut"},       {"fight", "fought", "fought"},
    {"lead", "led", "led"},         {"mean", "meant", "meant"},
    {"rise", "rose", "risen"},      {"bite", "bit", "bitten"},
    {"blow", "blew", "blown"},      {"dig", "dug", "dug"},
    {"feed", "fed", "fed"},         {"freeze", "froze", "frozen"},
    {"hang", "hung", "hung"},       {"hurt", "hurt", "hurt"},
    {"ring", "rang", "rung"},       {"shine", "shone", "shone"},
    {"show", "showed", "shown"},    {"become", "became", "become"},
    {"dive", "dove", "dived"},      {"swing", "swung", "swung"},
    {"climb", "climbed", "climbed"}, {"bleed", "bled", "bled"},
    {"light", "lit", "lit"},        {"shoot", "shot", "shot"},
    {"slide", "slid", "slid"},      {"stick", "stuck", "stuck"},
    {"forgive", "forgave", "forgiven"}, {"lend", "lent", "lent"},
    {"smell", "smelled", "smelled"}, {"set", "set", "set"},
};

// Verbs whose final consonant doubles before -ed/-ing.
const std::unordered_set<std::string> kDoubling{
    "stop", "plan", "chat", "hug",  "jog",  "chop", "skip", "drop",  "shop", "rob",
    "grab", "beg",  "hop",  "clap", "nod",  "pat",  "rub",  "sip",   "slam", "trap",
    "trip", "wrap", "ship", "stir", "step", "admit", "prefer", "occur", "commit",
    "refer", "regret", "control", "swim", "run", "sit", "get", "hit", "cut", "put",
    "win", "begin", "dig", "shut", "let", "set", "forget", "nap", "pet", "tap",
    "hum", "drum", "scrub", "bat", "knit", "fan", "hem",
};

const std::unordered_map<std::string, const Irregular*>& by_base() {
  static const auto m = [] {
    std::unordered_map<std::string, const Irregular*> out;
    for (const auto& i : kIrregular) out.emplace(i.base, &i);
    return out;
  }();
  return m;
}

const std::unordered_map<std::string, std::string>& inverse() {
  static const auto m = [] {
    std::unordered_map<std::string, std::string> out;
    for (const auto& i : kIrregular) {
      out.emplace(i.past, i.base);
      out.emplace(i.participle, i.base);
    }
    out["were"] = "be";
    out["is"] = "be";
    out["am"] = "be";
    out["are"] = "be";
    out["has"] = "have";
    out["does"] = "do";
    out["lying"] = "lie";
    out["dying"] = "die";
    out["tying"] = "tie";
    return out;
  }();
  return m;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string lc(std::string_view s) { return text::lower(text::trim(s)); }

std::string regular_past(const std::string& v) {
  if (ends_with(v, "e")) return v + "d";
  if (v.size() > 1 && v.back() == 'y' && !is_vowel(v[v.size() - 2])) {
    return v.substr(0, v.size() - 1) + "ied";
  }
  if (kDoubling.count(v)) return v + v.back() + "ed";
  return v + "ed";
}

const std::unordered_set<std::string> kPronouns{
    "i",  "you", "he",   "she",   "it",    "we",   "they", "me",  "him",
    "her", "us", "them", "this",  "that",  "these", "those", "someone",
    "something", "everyone", "nobody", "you and i", "you all", "y'all",
};

const std::unordered_set<std::string> kDeterminers{
    "the",  "a",   "an",    "this", "that", "these", "those", "my",  "your", "his",
    "her",  "its", "our",   "their", "some", "two",  "three", "many", "every", "each",
};

const std::unordered_set<std::string> kMass{
    "water", "dinner", "lunch", "breakfast", "coffee", "tea", "milk", "food",
    "bread", "rice", "music", "pinenuts", "soup", "money", "homework", "meat",
    "salt", "sugar", "juice", "fire", "snow", "rain", "grass", "wood", "tv",
    "television", "news", "mail", "work", "pizza", "chocolate", "fruit", "fish",
    "paint", "math", "corn", "english", "basketball", "soccer", "football", "tennis",
};

int vowel_groups(std::string_view s) {
  int groups = 0;
  bool in_vowel = false;
  for (char c : s) {
    const bool v = is_vowel(c);
    if (v && !in_vowel) ++groups;
    in_vowel = v;
  }
  return groups;
}

// Undo the spelling changes made before -ing/-ed: a doubled final consonant
// ("swimm") or a dropped silent e ("danc", "smil").
std::string restore_stem(const std::string& s) {
  const std::size_t n = s.size();
  if (n >= 3 && s[n - 1] == s[n - 2] && !is_vowel(s[n - 1])) {
    const std::string single = s.substr(0, n - 1);
    const bool keeps_double = std::string_view("lsfz").find(s[n - 1]) != std::string_view::npos;
    if (!keeps_double || kDoubling.count(single)) return single;
    return s;
  }
  const char last = s.back();
  if (last == 'c' || last == 'v' || last == 'z' || last == 'u' || last == 'i' ||
      ends_with(s, "dg")) {
    return s + "e";
  }
  if (n >= 4 && ends_with(s, "at") && !is_vowel(s[n - 3])) {
    return s + "e";
  }
  if (n >= 3 && !is_vowel(last) && last != 'w' && last != 'x' && last != 'y' &&
      is_vowel(s[n - 2]) && !is_vowel(s[n - 3]) && vowel_groups(s) == 1) {
    return s + "e";  // one-syllable CVC stems would have doubled
  }
  if (n >= 3 && last == 's' && is_vowel(s[n - 2]) && !is_vowel(s[n - 3])) return s + "e";
  return s;
}

}  // namespace

std::string_view to_string(Tense t) {
  switch (t) {
    case Tense::kPast: return "past";
    case Tense::kPresent: return "present";
    case Tense::kFuture: return "future";
    case Tense::kPastContinuous: return "past_continuous";
    case Tense::kPresentContinuous: return "present_continuous";
    case Tense::kPresentPerfect: return "present_perfect";
  }
  return "present";
}

std::optional<Tense> parse_tense(std::string_view s) {
  std::string norm = lc(s);
  std::replace(norm.begin(), norm.end(), ' ', '_');
  std::replace(norm.begin(), norm.end(), '-', '_');
  for (Tense t : kAllTenses) {
    if (norm == to_string(t)) return t;
  }
  return std::nullopt;
}

std::string_view describe(Tense t, bool going_to) {
  switch (t) {
    case Tense::kPast: return "past";
    case Tense::kPresent: return "present";
    case Tense::kFuture: return going_to ? "future (going to)" : "future (will)";
    case Tense::kPastContinuous: return "past continuous (was -ing)";
    case Tense::kPresentContinuous: return "present continuous (-ing)";
    case Tense::kPresentPerfect: return "present perfect (have -ed)";
  }
  return "present";
}

std::optional<std::pair<Tense, bool>> parse_description(std::string_view s) {
  const std::string norm = lc(s);
  for (Tense t : kAllTenses) {
    for (bool going_to : {false, true}) {
      if (going_to && t != Tense::kFuture) continue;
      if (norm == describe(t, going_to)) return std::make_pair(t, going_to);
    }
  }
  if (auto t = parse_tense(norm)) return std::make_pair(*t, false);
  return std::nullopt;
}

bool is_token(std::string_view w) {
  return w.size() >= 2 && w.front() == '[' && w.back() == ']';
}

std::string third_person(std::string_view lemma) {
  if (is_token(lemma)) return std::string(lemma) + "-s";
  const std::string v = lc(lemma);
  if (v == "be") return "is";
  if (v == "have") return "has";
  if (v.empty()) return v;
  if (ends_with(v, "s") || ends_with(v, "sh") || ends_with(v, "ch") || ends_with(v, "x") ||
      ends_with(v, "z") || ends_with(v, "o")) {
    return v + "es";
  }
  if (v.size() > 1 && v.back() == 'y' && !is_vowel(v[v.size() - 2])) {
    return v.substr(0, v.size() - 1) + "ies";
  }
  return v + "s";
}

std::string past(std::string_view lemma) {
  if (is_token(lemma)) return std::string(lemma) + "-ed";
  const std::string v = lc(lemma);
  if (auto it = by_base().find(v); it != by_base().end()) return it->second->past;
  return regular_past(v);
}

std::string past_participle(std::string_view lemma) {
  if (is_token(lemma)) return std::string(lemma) + "-ed";
  const std::string v = lc(lemma);
  if (auto it = by_base().find(v); it != by_base().end()) return it->second->participle;
  return regular_past(v);
}

std::string present_participle(std::string_view lemma) {
  if (is_token(lemma)) return std::string(lemma) + "-ing";
  const std::string v = lc(lemma);
  if (v == "be") return "being";
  if (ends_with(v, "ie")) return v.substr(0, v.size() - 2) + "ying";
  if (ends_with(v, "e") && !ends_with(v, "ee") && !ends_with(v, "ye") &&
      !ends_with(v, "oe") && v.size() > 2) {
    return v.substr(0, v.size() - 1) + "ing";
  }
  if (kDoubling.count(v)) return v + v.back() + "ing";
  return v + "ing";
}

std::vector<std::string> verb_forms(std::string_view lemma) {
  std::vector<std::string> out{lc(lemma), third_person(lemma), past(lemma),
                               past_participle(lemma), present_participle(lemma)};
  if (!is_token(lemma)) {
    for (auto& f : out) f = lc(f);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_irregular_form(std::string_view word) {
  const std::string w = lc(word);
  return by_base().count(w) > 0 || inverse().count(w) > 0;
}

bool is_past_form(std::string_view word) {
  const std::string w = lc(word);
  for (const auto& i : kIrregular) {
    if (w == i.past) return w != i.base;
  }
  return w.size() > 3 && ends_with(w, "ed") && !by_base().count(w);
}

std::string lemmatize_verb(std::string_view form) {
  const std::string w = lc(form);
  if (by_base().count(w)) return w;
  if (auto it = inverse().find(w); it != inverse().end()) return it->second;

  auto strip = [&](std::string_view suffix) -> std::optional<std::string> {
    if (ends_with(w, suffix) && w.size() > suffix.size() + 1) {
      return w.substr(0, w.size() - suffix.size());
    }
    return std::nullopt;
  };
  if (auto s = strip("ing")) return restore_stem(*s);
  if (auto s = strip("ied")) {
    if (regular_past(*s + "y") == w) return *s + "y";
  }
  if (auto s = strip("ed")) return restore_stem(*s);
  if (auto s = strip("ies")) {
    if (third_person(*s + "y") == w) return *s + "y";
  }
  if (auto s = strip("es")) {
    const bool sibilant = ends_with(*s, "ch") || ends_with(*s, "sh") || ends_with(*s, "ss") ||
                          ends_with(*s, "x") || ends_with(*s, "zz") || ends_with(*s, "o");
    if (sibilant && third_person(*s) == w) return *s;
  }
  if (auto s = strip("s")) {
    if (!ends_with(w, "ss") && third_person(*s) == w) return *s;
  }
  return w;
}

std::string singularize(std::string_view noun) {
  const std::string w = lc(noun);
  static const std::unordered_map<std::string, std::string> irregular{
      {"men", "man"},   {"women", "woman"}, {"children", "child"}, {"people", "person"},
      {"mice", "mouse"}, {"geese", "goose"}, {"feet", "foot"},     {"teeth", "tooth"},
  };
  if (auto it = irregular.find(w); it != irregular.end()) return it->second;
  if (w.size() > 3 && ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  if (w.size() > 3 && (ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "xes") ||
                       ends_with(w, "sses"))) {
    return w.substr(0, w.size() - 2);
  }
  if (w.size() > 2 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is")) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

bool is_personal_pronoun(std::string_view word) { return kPronouns.count(lc(word)) > 0; }

Person person_of(std::string_view subject_phrase) {
  const std::string s = lc(subject_phrase);
  if (s == "i") return Person::kFirstSingular;
  if (s == "you" || s == "we" || s == "they" || s == "these" || s == "those" ||
      s == "you all" || s == "y'all" || s == "you and i" ||
      s.find(" and ") != std::string::npos || s.rfind("these ", 0) == 0 ||
      s.rfind("those ", 0) == 0) {
    return Person::kPlural;
  }
  return Person::kThirdSingular;
}

std::string verb_phrase(std::string_view lemma, Tense tense, bool going_to, Person person) {
  const std::string base = is_token(lemma) ? std::string(lemma) : lc(lemma);
  const char* be_now = person == Person::kFirstSingular ? "am"
                       : person == Person::kPlural     ? "are"
                                                       : "is";
  const char* be_then = person == Person::kPlural ? "were" : "was";
  const bool is_be = base == "be";
  switch (tense) {
    case Tense::kPast:
      if (is_be) return be_then;
      return past(base);
    case Tense::kPresent:
      if (is_be) return be_now;
      return person == Person::kThirdSingular ? third_person(base) : base;
    case Tense::kFuture:
      if (going_to) return std::string(be_now) + " going to " + base;
      return "will " + base;
    case Tense::kPastContinuous:
      return std::string(be_then) + " " + present_participle(base);
    case Tense::kPresentContinuous:
      return std::string(be_now) + " " + present_participle(base);
    case Tense::kPresentPerfect:
      return std::string(person == Person::kThirdSingular ? "has" : "have") + " " +
             past_participle(base);
  }
  return base;
}

std::string capitalize_first(std::string s) {
  for (char& c : s) {
    if (c == '[') break;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
    }
  }
  return s;
}

std::string Mentions::noun_phrase(std::string_view word) {
  const std::string raw = text::trim(word);
  if (raw.empty() || is_token(raw)) return raw;
  const std::string low = lc(raw);
  if (low == "i") return "I";
  if (kPronouns.count(low)) return low;
  const auto space = low.find(' ');
  if (space != std::string::npos && kDeterminers.count(low.substr(0, space))) return raw;
  if (std::isupper(static_cast<unsigned char>(raw[0]))) return raw;  // proper noun
  const bool seen = !seen_.insert(low).second;
  if (seen) return "the " + raw;
  if (kMass.count(low)) return raw;
  return (is_vowel(low[0]) ? "an " : "a ") + raw;
}

std::string realize(const Clause& c) {
  std::string out = c.subject + " " +
                    verb_phrase(c.verb, c.tense, c.going_to, person_of(c.subject));
  if (c.object) out += " " + *c.object;
  return capitalize_first(out) + ".";
}

}  // namespace larb::english
