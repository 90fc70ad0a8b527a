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

// English -> OVP. Input is segmented into simple SV/SVO sentences, each is
// mapped onto the vocabulary (unknown words become bracketed placeholders),
// built into OVP, and translated back to English for comparison.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "larb/english/english.hpp"
#include "larb/grammar/lexicon.hpp"
#include "larb/grammar/sentence.hpp"
#include "larb/llm/chat.hpp"

namespace larb::en2ovp {

struct SimpleSentence {
  std::string subject;
  std::string verb;
  english::Tense verb_tense = english::Tense::kPresent;
  std::optional<std::string> object;

  nlohmann::json to_json() const;
  /// Throws InputError on missing fields or an unknown tense.
  static SimpleSentence from_json(const nlohmann::json& j);

  bool operator==(const SimpleSentence&) const = default;
};

/// English word -> gloss already in the lexicon ("rabbit" -> "cottontail").
/// Loaded from a two-column tab-separated file; '#' starts a comment.
class Synonyms {
 public:
  Synonyms() = default;
  static Synonyms load(const std::filesystem::path& path);

  void add(std::string_view word, std::string_view gloss);
  std::optional<std::string> find(std::string_view word) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::string> table_;
};

enum class Transitivity {
  kMatches,        // verb found with the transitivity the sentence needs
  kOtherCategory,  // verb known, but only with the other transitivity
  kUnknown,        // verb not in the vocabulary
};
std::string_view to_string(Transitivity t);

struct MappedSentence {
  grammar::SentenceSelections selections;  // placeholders stand in for misses
  bool subject_mapped = false;
  bool verb_mapped = false;
  bool object_mapped = false;  // true when there is no object
  Transitivity transitivity = Transitivity::kUnknown;
  std::vector<std::string> placeholders;  // unmapped lemmas, in role order

  bool fully_mapped() const { return placeholders.empty(); }
};

MappedSentence map_vocab(const SimpleSentence& simple, const grammar::Lexicon& lexicon,
                         const Synonyms* synonyms = nullptr);

struct BuiltSentence {
  grammar::SentenceSelections selections;
  std::string surface;
  bool complete = false;  // no placeholders
};

/// Renders in the translator word order (pronoun subjects first, noun
/// subjects after the verb).
BuiltSentence build_ovp(const MappedSentence& mapped);

/// Plain English for a simple sentence. Articles depend on what `mentions`
/// has already seen, so one Mentions should span a whole record.
std::string render_simple(const SimpleSentence& simple, english::Mentions& mentions);

/// As render_simple, with unmapped roles replaced by [SUBJECT], [VERB] and
/// [OBJECT].
std::string comparator(const SimpleSentence& simple, const MappedSentence& mapped,
                       english::Mentions& mentions);

/// Round-trip English for a built sentence, through the render prompt.
std::string backwards(const BuiltSentence& built, const grammar::Lexicon& lexicon,
                      llm::ChatBackend& backend);

std::vector<SimpleSentence> segment(std::string_view input, llm::ChatBackend& backend,
                                    bool topic_verbs = false);

struct Scores {
  double simple = 0;
  double comparator = 0;
  double backwards = 0;

  bool operator==(const Scores&) const = default;
};

struct TranslationRecord {
  std::string input;
  std::vector<SimpleSentence> simples;
  std::vector<std::string> simple_english;
  std::vector<std::string> comparators;
  std::vector<std::string> ovp_surfaces;
  std::vector<std::string> backwards;
  std::vector<std::vector<std::string>> placeholders;
  std::vector<std::string> errors;  // per item; empty when the item succeeded
  std::optional<Scores> scores;
  std::string model_name;
  std::string embedding_model;  // set when scored
  std::string type;             // optional sentence-type tag for reports
  std::string timestamp;        // UTC, ISO 8601

  /// Every per-sentence list has the same length.
  bool consistent() const;

  nlohmann::json to_json() const;
  static TranslationRecord from_json(const nlohmann::json& j);
};

struct TranslateOptions {
  bool topic_verbs = false;
  const Synonyms* synonyms = nullptr;
};

/// Segments, maps, builds and back-translates. A segmentation failure throws
/// SegmentationError; backend failures on a single item are recorded in
/// `errors` and leave that item's backwards entry empty.
TranslationRecord translate_english(std::string_view input, const grammar::Lexicon& lexicon,
                                    llm::ChatBackend& backend,
                                    const TranslateOptions& options = {});

std::string utc_timestamp();

}  // namespace larb::en2ovp
