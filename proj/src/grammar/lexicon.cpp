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

#include "larb/grammar/lexicon.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <utility>

#include "larb/error.hpp"
#include "larb/text/unicode.hpp"

#ifndef LARB_DEFAULT_DATA_DIR
#define LARB_DEFAULT_DATA_DIR "data"
#endif

namespace larb::grammar {
namespace {

constexpr std::array<std::pair<Category, std::string_view>, 8> kCategoryNames{{
    {Category::kTransitiveVerb, "transitive-verb"},
    {Category::kIntransitiveVerb, "intransitive-verb"},
    {Category::kNoun, "noun"},
    {Category::kSubjectPronoun, "subject-pronoun"},
    {Category::kObjectPronounPrefix, "object-pronoun-prefix"},
    {Category::kSubjectSuffix, "subject-suffix"},
    {Category::kObjectSuffix, "object-suffix"},
    {Category::kTenseSuffix, "tense-suffix"},
}};

}  // namespace

std::string_view to_string(Category c) {
  for (const auto& [cat, name] : kCategoryNames) {
    if (cat == c) return name;
  }
  return "unknown";
}

std::string_view to_string(Proximity p) {
  return p == Proximity::kProximal ? "proximal" : "distal";
}

std::string_view to_string(Plurality p) {
  switch (p) {
    case Plurality::kSingular: return "singular";
    case Plurality::kPlural: return "plural";
    case Plurality::kDual: return "dual";
  }
  return "singular";
}

std::string_view to_string(WordOrder o) {
  return o == WordOrder::kSecondPosition ? "second-position" : "translator";
}

std::optional<Category> parse_category(std::string_view s) {
  for (const auto& [cat, name] : kCategoryNames) {
    if (name == s) return cat;
  }
  return std::nullopt;
}

std::optional<Proximity> parse_proximity(std::string_view s) {
  if (s == "proximal") return Proximity::kProximal;
  if (s == "distal") return Proximity::kDistal;
  return std::nullopt;
}

std::optional<Plurality> parse_plurality(std::string_view s) {
  if (s == "singular") return Plurality::kSingular;
  if (s == "plural") return Plurality::kPlural;
  if (s == "dual") return Plurality::kDual;
  return std::nullopt;
}

std::optional<WordOrder> parse_word_order(std::string_view s) {
  if (s == "second-position") return WordOrder::kSecondPosition;
  if (s == "translator") return WordOrder::kTranslator;
  return std::nullopt;
}

Lexeme make_placeholder(std::string_view lemma, Category category) {
  Lexeme lex;
  lex.id = "placeholder:" + std::string(lemma);
  lex.surface = text::nfc("[" + std::string(lemma) + "]");
  lex.gloss = lex.surface;
  lex.category = category;
  lex.placeholder = true;
  return lex;
}

Lexicon::Lexicon(std::vector<Lexeme> entries, std::string version,
                 WordOrder word_order)
    : entries_(std::move(entries)),
      version_(std::move(version)),
      word_order_(word_order) {
  std::set<Category> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    Lexeme& lex = entries_[i];
    lex.surface = text::nfc(lex.surface);
    if (lex.lenited_surface) lex.lenited_surface = text::nfc(*lex.lenited_surface);
    if (lex.id.empty()) throw InputError("lexeme with empty id");
    if (lex.surface.empty()) throw InputError("lexeme '" + lex.id + "' has no surface");
    if (!index_.emplace(lex.id, i).second) {
      throw InputError("duplicate lexeme id '" + lex.id + "'");
    }
    if (lex.lenited_surface && !is_verb(lex.category)) {
      throw InputError("lexeme '" + lex.id + "': lenited form on a non-verb");
    }
    const bool needs_proximity = lex.category == Category::kSubjectSuffix ||
                                 lex.category == Category::kObjectSuffix;
    if (needs_proximity && !lex.proximity) {
      throw InputError("lexeme '" + lex.id + "': suffix without proximity");
    }
    if (lex.category == Category::kNoun && lex.proximity) {
      throw InputError("lexeme '" + lex.id + "': nouns carry no proximity");
    }
    seen.insert(lex.category);
  }
  for (const auto& [cat, name] : kCategoryNames) {
    if (!seen.contains(cat)) {
      throw InputError("lexicon has no " + std::string(name) + " entries");
    }
  }
}

Lexicon Lexicon::parse(std::istream& in, const std::string& source) {
  std::vector<Lexeme> entries;
  std::string version = "unversioned";
  WordOrder order = WordOrder::kSecondPosition;
  std::vector<std::string> header;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw InputError(source + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = text::split(line, '\t');
    if (line[0] == '@') {
      if (cells.size() != 2) fail("metadata lines are '@key<TAB>value'");
      if (cells[0] == "@version") {
        version = cells[1];
      } else if (cells[0] == "@word_order") {
        auto o = parse_word_order(cells[1]);
        if (!o) fail("unknown word order '" + cells[1] + "'");
        order = *o;
      } else {
        fail("unknown metadata key '" + cells[0] + "'");
      }
      continue;
    }
    if (header.empty()) {
      header = cells;
      continue;
    }
    if (cells.size() != header.size()) {
      fail("expected " + std::to_string(header.size()) + " columns, got " +
           std::to_string(cells.size()));
    }
    auto cell = [&](std::string_view name) -> const std::string& {
      auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) fail("missing column '" + std::string(name) + "'");
      return cells[static_cast<std::size_t>(it - header.begin())];
    };
    Lexeme lex;
    lex.id = cell("id");
    lex.surface = cell("surface");
    lex.gloss = cell("gloss");
    auto cat = parse_category(cell("category"));
    if (!cat) fail("unknown category '" + cell("category") + "'");
    lex.category = *cat;
    if (!cell("lenited").empty()) lex.lenited_surface = cell("lenited");
    if (!cell("plurality").empty()) {
      lex.plurality = parse_plurality(cell("plurality"));
      if (!lex.plurality) fail("bad plurality '" + cell("plurality") + "'");
    }
    if (!cell("proximity").empty()) {
      lex.proximity = parse_proximity(cell("proximity"));
      if (!lex.proximity) fail("bad proximity '" + cell("proximity") + "'");
    }
    if (!cell("aliases").empty()) lex.aliases = text::split(cell("aliases"), '|');
    for (const auto& flag : text::split(cell("flags"), ',')) {
      if (flag.empty()) continue;
      if (flag == "variant") {
        lex.variant = true;
      } else if (flag == "n=always") {
        lex.n_insertion = NInsertion::kAlways;
      } else if (flag == "n=never") {
        lex.n_insertion = NInsertion::kNever;
      } else {
        fail("unknown flag '" + flag + "'");
      }
    }
    entries.push_back(std::move(lex));
  }
  try {
    return Lexicon(std::move(entries), version, order);
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open lexicon file " + path.string());
  return parse(in, path.string());
}

Lexicon Lexicon::load_default() { return load(data_dir() / "lexicon.tsv"); }

const Lexeme& Lexicon::at(std::string_view id) const {
  const Lexeme* lex = find(id);
  if (lex == nullptr) throw LookupError("unknown lexeme id '" + std::string(id) + "'");
  return *lex;
}

const Lexeme* Lexicon::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::vector<const Lexeme*> Lexicon::by_category(Category c) const {
  std::vector<const Lexeme*> out;
  for (const auto& lex : entries_) {
    if (lex.category == c) out.push_back(&lex);
  }
  return out;
}

std::vector<const Lexeme*> Lexicon::lookup_english(std::string_view english,
                                                   Category category) const {
  const std::string key = text::lower(text::trim(english));
  std::vector<const Lexeme*> out;
  for (const auto& lex : entries_) {
    if (lex.category != category) continue;
    bool hit = text::lower(lex.gloss) == key;
    for (const auto& alias : lex.aliases) {
      hit = hit || text::lower(alias) == key;
    }
    if (hit) out.push_back(&lex);
  }
  std::stable_partition(out.begin(), out.end(),
                        [](const Lexeme* l) { return !l->variant; });
  return out;
}

int Lexicon::sense_of(const Lexeme& lex) const {
  int sense = 0;
  for (const auto& other : entries_) {
    if (other.id == lex.id) return sense;
    if (other.category == lex.category && other.gloss == lex.gloss) ++sense;
  }
  return 0;
}

const Lexeme* Lexicon::by_sense(Category category, std::string_view gloss,
                                int sense) const {
  int seen = 0;
  for (const auto& lex : entries_) {
    if (lex.category != category || lex.gloss != gloss) continue;
    if (seen == sense) return &lex;
    ++seen;
  }
  return nullptr;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("LARB_DATA_DIR"); env != nullptr && *env) {
    return env;
  }
  return LARB_DEFAULT_DATA_DIR;
}

}  // namespace larb::grammar
