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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace larb::grammar {

enum class Category {
  kTransitiveVerb,
  kIntransitiveVerb,
  kNoun,
  kSubjectPronoun,
  kObjectPronounPrefix,
  kSubjectSuffix,
  kObjectSuffix,
  kTenseSuffix,
};

enum class Proximity { kProximal, kDistal };
enum class Plurality { kSingular, kPlural, kDual };

/// Whether the object suffix of a noun takes the linking "n".
enum class NInsertion { kRule, kAlways, kNever };

/// Constituent-order policy for rendering.
///  - kSecondPosition: noun subjects first (S O V); pronoun subjects follow
///    the noun object if any, otherwise the verb complex.
///  - kTranslator: pronoun subjects first (S O V); noun subjects follow the
///    verb complex (O V S).
enum class WordOrder { kSecondPosition, kTranslator };

std::string_view to_string(Category c);
std::string_view to_string(Proximity p);
std::string_view to_string(Plurality p);
std::string_view to_string(WordOrder o);
std::optional<Category> parse_category(std::string_view s);
std::optional<Proximity> parse_proximity(std::string_view s);
std::optional<Plurality> parse_plurality(std::string_view s);
std::optional<WordOrder> parse_word_order(std::string_view s);

inline bool is_verb(Category c) {
  return c == Category::kTransitiveVerb || c == Category::kIntransitiveVerb;
}

struct Lexeme {
  std::string id;
  std::string surface;  // NFC
  std::string gloss;
  Category category = Category::kNoun;
  std::optional<std::string> lenited_surface;
  std::optional<Plurality> plurality;
  std::optional<Proximity> proximity;
  std::vector<std::string> aliases;
  NInsertion n_insertion = NInsertion::kRule;
  bool variant = false;
  // Stands in for an English lemma with no vocabulary entry; surface is
  // "[lemma]".
  bool placeholder = false;

  bool operator==(const Lexeme&) const = default;
};

/// A lexeme standing in for an out-of-vocabulary English lemma.
Lexeme make_placeholder(std::string_view lemma, Category category);

/// Immutable vocabulary. Safe to share across threads after construction.
class Lexicon {
 public:
  Lexicon(std::vector<Lexeme> entries, std::string version,
          WordOrder word_order = WordOrder::kSecondPosition);

  /// Parses the tab-separated lexicon format shipped in data/lexicon.tsv.
  static Lexicon parse(std::istream& in, const std::string& source = "<stream>");
  static Lexicon load(const std::filesystem::path& path);
  /// data/lexicon.tsv from data_dir().
  static Lexicon load_default();

  const Lexeme& at(std::string_view id) const;
  const Lexeme* find(std::string_view id) const;

  std::span<const Lexeme> entries() const { return entries_; }
  std::vector<const Lexeme*> by_category(Category c) const;

  /// Entries of `category` whose gloss or alias equals `english`
  /// (case-insensitive, NFC). Non-variant entries come first.
  std::vector<const Lexeme*> lookup_english(std::string_view english,
                                            Category category) const;

  /// Index of `lex` among entries sharing its category and gloss, in file
  /// order. Zero for lexemes with a unique gloss.
  int sense_of(const Lexeme& lex) const;
  const Lexeme* by_sense(Category category, std::string_view gloss,
                         int sense) const;

  const std::string& version() const { return version_; }
  WordOrder word_order() const { return word_order_; }

 private:
  std::vector<Lexeme> entries_;
  std::string version_;
  WordOrder word_order_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Directory holding the shipped data files: $LARB_DATA_DIR when set,
/// otherwise the source-tree data/ directory baked in at build time.
std::filesystem::path data_dir();

}  // namespace larb::grammar
