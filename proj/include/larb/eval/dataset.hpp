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

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace larb::eval {

/// The five sentence types used to break down translation quality.
inline constexpr std::array<std::string_view, 5> kSentenceTypes{
    "subject-verb", "subject-verb-object", "two-verb", "two-clause", "complex",
};
bool is_sentence_type(std::string_view s);

struct DatasetSentence {
  std::string sentence;
  std::string type;  // empty when the file has no type column
  bool hermetic = false;
};

/// Reads either a tab-separated file with a header naming a `sentence`
/// column (optional `type` and `hermetic` columns), or plain text with one
/// sentence per line. '#' lines are comments. Throws InputError.
std::vector<DatasetSentence> load_dataset(const std::filesystem::path& path);

}  // namespace larb::eval
