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

#include "larb/pipeline/en2ovp.hpp"

#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <future>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "larb/error.hpp"
#include "larb/pipeline/ovp2en.hpp"
#include "larb/text/unicode.hpp"

namespace larb::en2ovp {
namespace {

using english::Tense;
using grammar::Category;
using grammar::Lexeme;
using grammar::Plurality;
using grammar::Proximity;

const std::unordered_set<std::string> kProximalDeterminers{"this", "these"};
const std::unordered_set<std::string> kDeterminers{
    "this", "these", "that", "those", "the", "a", "an", "my", "your", "his", "her",
    "its",  "our",   "their", "some", "two", "three", "many", "every", "each",
};

// Object-case forms the segmenter sometimes leaves in subject position, and
// the reverse.
const std::unordered_map<std::string, std::string> kToSubjectCase{
    {"me", "i"}, {"him", "he"}, {"us", "we"}, {"them", "they"},
};
const std::unordered_map<std::string, std::string> kToObjectCase{
    {"i", "me"}, {"he", "him"}, {"she", "her"}, {"we", "us"}, {"they", "them"},
};

struct NounPhrase {
  std::string head;  // lowercased, determiner stripped
  std::string raw_head;
  Proximity proximity = Proximity::kDistal;
  bool plural = false;
};

NounPhrase parse_noun_phrase(std::string_view phrase) {
  NounPhrase np;
  std::string rest = text::lower(text::trim(phrase));
  const auto space = rest.find(' ');
  if (space != std::string::npos && kDeterminers.count(rest.substr(0, space))) {
    const std::string det = rest.substr(0, space);
    if (kProximalDeterminers.count(det)) np.proximity = Proximity::kProximal;
    np.plural = det == "these" || det == "those";
    rest = rest.substr(space + 1);
  }
  np.head = rest;
  const std::string raw = text::trim(phrase);
  np.raw_head = raw.size() >= rest.size() ? text::trim(raw.substr(raw.size() - rest.size())) : rest;
  if (!np.plural && english::singularize(rest) != rest) np.plural = true;
  return np;
}

const Lexeme* first(const std::vector<const Lexeme*>& v) { return v.empty() ? nullptr : v[0]; }

// Names keep their spelling ("[Rachel]"); common nouns are singularized.
std::string placeholder_lemma(const NounPhrase& np) {
  const bool proper = !np.raw_head.empty() &&
                      std::isupper(static_cast<unsigned char>(np.raw_head[0])) != 0;
  return proper ? np.raw_head : english::singularize(np.head);
}

const Lexeme* lookup_noun(const std::string& head, const grammar::Lexicon& lexicon,
                          const Synonyms* synonyms) {
  std::vector<std::string> tries{head, english::singularize(head)};
  const auto last_space = head.rfind(' ');
  if (last_space != std::string::npos) {
    const std::string last = head.substr(last_space + 1);
    tries.push_back(last);
    tries.push_back(english::singularize(last));
  }
  for (const auto& t : tries) {
    if (const Lexeme* l = first(lexicon.lookup_english(t, Category::kNoun))) return l;
  }
  if (synonyms != nullptr) {
    for (const auto& t : tries) {
      if (auto g = synonyms->find(t)) {
        if (const Lexeme* l = first(lexicon.lookup_english(*g, Category::kNoun))) return l;
      }
    }
  }
  return nullptr;
}

const Lexeme* by_surface(const grammar::Lexicon& lexicon, Category c, std::string_view surface) {
  const std::string want = text::nfc(surface);
  for (const Lexeme* l : lexicon.by_category(c)) {
    if (l->surface == want) return l;
  }
  throw LookupError("lexicon has no " + std::string(grammar::to_string(c)) + " '" + want + "'");
}

const Lexeme& suffix_for(const grammar::Lexicon& lexicon, Category c, Proximity p) {
  for (const Lexeme* l : lexicon.by_category(c)) {
    if (l->proximity == p) return *l;
  }
  throw LookupError("lexicon has no suffix for that proximity");
}

std::string_view tense_suffix_surface(Tense t) {
  switch (t) {
    case Tense::kPast: return "ku";
    case Tense::kPresent: return "dü";
    case Tense::kFuture: return "wei";
    case Tense::kPastContinuous:
    case Tense::kPresentContinuous: return "ti";
    case Tense::kPresentPerfect: return "pü";
  }
  return "dü";
}

std::vector<std::string> string_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

}  // namespace

nlohmann::json SimpleSentence::to_json() const {
  return {{"subject", subject},
          {"verb", verb},
          {"verb_tense", english::to_string(verb_tense)},
          {"object", object ? nlohmann::json(*object) : nlohmann::json(nullptr)}};
}

SimpleSentence SimpleSentence::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("simple sentence must be an object");
  SimpleSentence s;
  try {
    s.subject = text::trim(j.at("subject").get<std::string>());
    s.verb = text::trim(j.at("verb").get<std::string>());
    const auto tense = english::parse_tense(j.at("verb_tense").get<std::string>());
    if (!tense) throw InputError("unknown verb_tense");
    s.verb_tense = *tense;
    if (j.contains("object") && !j.at("object").is_null()) {
      const std::string o = text::trim(j.at("object").get<std::string>());
      if (!o.empty()) s.object = o;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad simple sentence: ") + e.what());
  }
  if (s.subject.empty() || s.verb.empty()) throw InputError("simple sentence needs subject and verb");
  return s;
}

Synonyms Synonyms::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open synonym table " + path.string());
  Synonyms s;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (text::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw InputError(path.string() + ":" + std::to_string(n) + ": expected word<TAB>gloss");
    }
    s.add(line.substr(0, tab), line.substr(tab + 1));
  }
  return s;
}

void Synonyms::add(std::string_view word, std::string_view gloss) {
  table_[text::lower(text::nfc(text::trim(word)))] = text::trim(gloss);
}

std::optional<std::string> Synonyms::find(std::string_view word) const {
  auto it = table_.find(text::lower(text::nfc(text::trim(word))));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::string_view to_string(Transitivity t) {
  switch (t) {
    case Transitivity::kMatches: return "matches";
    case Transitivity::kOtherCategory: return "other-category";
    case Transitivity::kUnknown: return "unknown";
  }
  return "unknown";
}

MappedSentence map_vocab(const SimpleSentence& simple, const grammar::Lexicon& lexicon,
                         const Synonyms* synonyms) {
  MappedSentence m;
  auto& sel = m.selections;

  // Subject: pronoun table first, then nouns.
  {
    std::string low = text::lower(text::trim(simple.subject));
    if (auto it = kToSubjectCase.find(low); it != kToSubjectCase.end()) low = it->second;
    if (const Lexeme* p = first(lexicon.lookup_english(low, Category::kSubjectPronoun))) {
      sel.subject = *p;
      m.subject_mapped = true;
    } else {
      const NounPhrase np = parse_noun_phrase(simple.subject);
      if (const Lexeme* n = lookup_noun(np.head, lexicon, synonyms)) {
        sel.subject = *n;
        m.subject_mapped = true;
      } else {
        const std::string lemma = placeholder_lemma(np);
        sel.subject = grammar::make_placeholder(lemma, Category::kNoun);
        m.placeholders.push_back(lemma);
      }
      sel.subject_suffix = suffix_for(lexicon, Category::kSubjectSuffix, np.proximity);
    }
  }

  // Verb, with the transitivity the sentence needs.
  const Category want = simple.object ? Category::kTransitiveVerb : Category::kIntransitiveVerb;
  const Category other = simple.object ? Category::kIntransitiveVerb : Category::kTransitiveVerb;
  {
    const std::string low = text::lower(text::trim(simple.verb));
    std::vector<std::string> tries{low, english::lemmatize_verb(low)};
    if (synonyms != nullptr) {
      for (std::size_t i = 0, n = tries.size(); i < n; ++i) {
        if (auto g = synonyms->find(tries[i])) tries.push_back(*g);
      }
    }
    const Lexeme* hit = nullptr;
    bool in_other = false;
    for (const auto& t : tries) {
      if (!hit) hit = first(lexicon.lookup_english(t, want));
      if (!lexicon.lookup_english(t, other).empty()) in_other = true;
    }
    const Lexeme* transitive_only = nullptr;
    if (!hit && !simple.object) {
      for (const auto& t : tries) {
        if (!transitive_only) transitive_only = first(lexicon.lookup_english(t, other));
      }
    }
    if (hit) {
      sel.verb = *hit;
      m.verb_mapped = true;
      m.transitivity = Transitivity::kMatches;
    } else if (transitive_only != nullptr) {
      // "She is cooking." A transitive stem used without an object takes no
      // prefix and behaves as intransitive.
      sel.verb = *transitive_only;
      sel.verb->category = Category::kIntransitiveVerb;
      sel.verb->lenited_surface.reset();
      m.verb_mapped = true;
      m.transitivity = Transitivity::kOtherCategory;
    } else {
      sel.verb = grammar::make_placeholder(low, want);
      m.placeholders.push_back(low);
      m.transitivity = in_other ? Transitivity::kOtherCategory : Transitivity::kUnknown;
    }
  }
  sel.verb_tense =
      *by_surface(lexicon, Category::kTenseSuffix, tense_suffix_surface(simple.verb_tense));

  // Object: a bare pronoun becomes the prefix alone; a noun takes a suffix
  // and an agreeing third-person prefix.
  m.object_mapped = true;
  if (simple.object) {
    std::string low = text::lower(text::trim(*simple.object));
    if (auto it = kToObjectCase.find(low); it != kToObjectCase.end()) low = it->second;
    if (const Lexeme* p = first(lexicon.lookup_english(low, Category::kObjectPronounPrefix))) {
      sel.object_pronoun = *p;
    } else {
      const NounPhrase np = parse_noun_phrase(*simple.object);
      if (const Lexeme* n = lookup_noun(np.head, lexicon, synonyms)) {
        sel.object = *n;
      } else {
        const std::string lemma = placeholder_lemma(np);
        sel.object = grammar::make_placeholder(lemma, Category::kNoun);
        m.placeholders.push_back(lemma);
        m.object_mapped = false;
      }
      sel.object_suffix = suffix_for(lexicon, Category::kObjectSuffix, np.proximity);
      const char* prefix = np.proximity == Proximity::kProximal ? (np.plural ? "ai" : "a")
                                                                : (np.plural ? "ui" : "u");
      sel.object_pronoun = *by_surface(lexicon, Category::kObjectPronounPrefix, prefix);
    }
  }
  return m;
}

BuiltSentence build_ovp(const MappedSentence& mapped) {
  BuiltSentence b;
  b.selections = mapped.selections;
  b.surface = grammar::render(b.selections, grammar::WordOrder::kTranslator);
  b.complete = mapped.fully_mapped();
  return b;
}

std::string render_simple(const SimpleSentence& s, english::Mentions& mentions) {
  english::Clause c;
  c.subject = mentions.noun_phrase(s.subject);
  c.verb = english::lemmatize_verb(s.verb);
  c.tense = s.verb_tense;
  if (s.object) c.object = mentions.noun_phrase(*s.object);
  return english::realize(c);
}

std::string comparator(const SimpleSentence& s, const MappedSentence& m,
                       english::Mentions& mentions) {
  english::Clause c;
  c.subject = m.subject_mapped ? mentions.noun_phrase(s.subject) : "[SUBJECT]";
  c.verb = m.verb_mapped ? english::lemmatize_verb(s.verb) : "[VERB]";
  c.tense = s.verb_tense;
  if (s.object) c.object = m.object_mapped ? mentions.noun_phrase(*s.object) : "[OBJECT]";
  return english::realize(c);
}

std::string backwards(const BuiltSentence& built, const grammar::Lexicon& lexicon,
                      llm::ChatBackend& backend) {
  return ovp2en::render_english(ovp2en::encode(built.selections, lexicon), backend);
}

std::vector<SimpleSentence> segment(std::string_view input, llm::ChatBackend& backend,
                                    bool topic_verbs) {
  const std::string text = text::trim(input);
  if (text.empty()) throw InputError("nothing to translate");
  const auto& t = topic_verbs ? llm::segment_topic_verbs_template() : llm::segment_template();
  nlohmann::json items;
  try {
    items = llm::complete_structured(backend, {t.name, t.messages_for(text), std::nullopt},
                                     llm::simple_sentence_schema());
  } catch (const FormatError& e) {
    throw SegmentationError(std::string("segmentation failed: ") + e.what(), e.raw());
  }
  std::vector<SimpleSentence> out;
  for (const auto& item : items) out.push_back(SimpleSentence::from_json(item));
  return out;
}

bool TranslationRecord::consistent() const {
  const std::size_t n = simples.size();
  return simple_english.size() == n && comparators.size() == n && ovp_surfaces.size() == n &&
         backwards.size() == n && placeholders.size() == n && errors.size() == n;
}

nlohmann::json TranslationRecord::to_json() const {
  nlohmann::json simple_list = nlohmann::json::array();
  for (const auto& s : simples) simple_list.push_back(s.to_json());
  nlohmann::json j{
      {"input", input},
      {"simples", simple_list},
      {"simple_english", simple_english},
      {"comparators", comparators},
      {"ovp", ovp_surfaces},
      {"backwards", backwards},
      {"placeholders", placeholders},
      {"errors", errors},
      {"model", model_name},
      {"timestamp", timestamp},
  };
  if (scores) {
    j["scores"] = {{"simple", scores->simple},
                   {"comparator", scores->comparator},
                   {"backwards", scores->backwards}};
    j["embedding_model"] = embedding_model;
  } else {
    j["scores"] = nullptr;
  }
  if (!type.empty()) j["type"] = type;
  return j;
}

TranslationRecord TranslationRecord::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("translation record must be an object");
  TranslationRecord r;
  try {
    r.input = j.at("input").get<std::string>();
    for (const auto& s : j.at("simples")) r.simples.push_back(SimpleSentence::from_json(s));
    r.simple_english = string_list(j, "simple_english");
    r.comparators = string_list(j, "comparators");
    r.ovp_surfaces = string_list(j, "ovp");
    r.backwards = string_list(j, "backwards");
    if (j.contains("placeholders")) {
      r.placeholders = j.at("placeholders").get<std::vector<std::vector<std::string>>>();
    }
    r.errors = string_list(j, "errors");
    r.model_name = j.value("model", "");
    r.timestamp = j.value("timestamp", "");
    r.type = j.value("type", "");
    r.embedding_model = j.value("embedding_model", "");
    if (j.contains("scores") && !j.at("scores").is_null()) {
      const auto& s = j.at("scores");
      r.scores = Scores{s.at("simple").get<double>(), s.at("comparator").get<double>(),
                        s.at("backwards").get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad translation record: ") + e.what());
  }
  return r;
}

TranslationRecord translate_english(std::string_view input, const grammar::Lexicon& lexicon,
                                    llm::ChatBackend& backend, const TranslateOptions& options) {
  TranslationRecord r;
  r.input = text::trim(input);
  r.model_name = backend.model_name();
  r.timestamp = utc_timestamp();
  r.simples = segment(r.input, backend, options.topic_verbs);

  english::Mentions simple_mentions;
  english::Mentions comparator_mentions;
  std::vector<BuiltSentence> built;
  for (const auto& s : r.simples) {
    const MappedSentence m = map_vocab(s, lexicon, options.synonyms);
    built.push_back(build_ovp(m));
    r.simple_english.push_back(render_simple(s, simple_mentions));
    r.comparators.push_back(comparator(s, m, comparator_mentions));
    r.ovp_surfaces.push_back(built.back().surface);
    r.placeholders.push_back(m.placeholders);
  }

  std::vector<std::future<std::string>> pending;
  for (const auto& b : built) {
    pending.push_back(std::async(std::launch::async,
                                 [&lexicon, &backend, &b] { return backwards(b, lexicon, backend); }));
  }
  for (auto& f : pending) {
    try {
      r.backwards.push_back(f.get());
      r.errors.emplace_back();
    } catch (const TransportError& e) {
      r.backwards.emplace_back();
      r.errors.emplace_back(e.what());
    } catch (const BackendError& e) {
      r.backwards.emplace_back();
      r.errors.emplace_back(e.what());
    } catch (const FormatError& e) {
      r.backwards.emplace_back();
      r.errors.emplace_back(e.what());
    }
  }
  return r;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace larb::en2ovp
