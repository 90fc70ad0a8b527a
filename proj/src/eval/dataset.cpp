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

#include "larb/eval/dataset.hpp"

#include <algorithm>
#include <fstream>

#include "larb/error.hpp"
#include "larb/text/unicode.hpp"

namespace larb::eval {

bool is_sentence_type(std::string_view s) {
  return std::find(kSentenceTypes.begin(), kSentenceTypes.end(), s) != kSentenceTypes.end();
}

std::vector<DatasetSentence> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset " + path.string());
  std::vector<DatasetSentence> out;
  std::optional<std::vector<std::string>> header;
  bool first = true;
  int col_sentence = -1, col_type = -1, col_hermetic = -1;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line[0] == '#') continue;
    const auto cells = text::split(line, '\t');
    if (first) {
      first = false;
      const auto it = std::find(cells.begin(), cells.end(), "sentence");
      if (it != cells.end()) {
        header = cells;
        for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
          if (cells[i] == "sentence") col_sentence = i;
          if (cells[i] == "type") col_type = i;
          if (cells[i] == "hermetic") col_hermetic = i;
        }
        continue;
      }
    }
    DatasetSentence d;
    if (!header) {
      d.sentence = text::trim(line);
    } else {
      auto cell = [&](int i) -> std::string {
        return i >= 0 && i < static_cast<int>(cells.size()) ? text::trim(cells[i]) : "";
      };
      d.sentence = cell(col_sentence);
      d.type = cell(col_type);
      d.hermetic = cell(col_hermetic) == "1";
      if (d.sentence.empty()) {
        throw InputError(path.string() + ":" + std::to_string(n) + ": empty sentence");
      }
      if (!d.type.empty() && !is_sentence_type(d.type)) {
        throw InputError(path.string() + ":" + std::to_string(n) + ": unknown sentence type '" +
                         d.type + "'");
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace larb::eval
