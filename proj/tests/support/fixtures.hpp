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

// Shared test fixtures: the shipped lexicon and the decomposed reference
// sentences.

#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "larb/grammar/lexicon.hpp"
#include "larb/grammar/sentence.hpp"
#include "larb/text/unicode.hpp"

namespace larb::testing {

inline std::filesystem::path data_dir() {
#ifdef LARB_TEST_DATA_DIR
  return LARB_TEST_DATA_DIR;
#else
  return grammar::data_dir();
#endif
}

inline const grammar::Lexicon& lexicon() {
  static const grammar::Lexicon lex = grammar::Lexicon::load(data_dir() / "lexicon.tsv");
  return lex;
}

struct BuilderRow {
  std::string sentence;     // as printed, without the final period
  std::string translation;  // reference English rendering
  int label = 1;
  grammar::SentenceSelections selections;
};

inline std::vector<BuilderRow> reference_rows() {
  std::ifstream in(data_dir() / "reference_sentences.tsv");
  if (!in) throw std::runtime_error("missing reference_sentences.tsv");
  std::vector<BuilderRow> rows;
  std::vector<std::string> header;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = text::split(line, '\t');
    if (header.empty()) {
      header = cells;
      continue;
    }
    BuilderRow row;
    row.sentence = cells[0];
    row.translation = cells[1];
    row.label = std::stoi(cells[2]);
    for (std::size_t i = 3; i < cells.size(); ++i) {
      if (cells[i].empty()) continue;
      auto slot = grammar::parse_slot(header[i]);
      if (!slot) throw std::runtime_error("bad slot column " + header[i]);
      row.selections.get(*slot) = lexicon().at(cells[i]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace larb::testing
