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

#include <string>
#include <string_view>
#include <vector>

namespace larb::text {

/// Unicode NFC normalization of a UTF-8 string. Throws InputError on
/// invalid UTF-8.
std::string nfc(std::string_view utf8);

/// Full Unicode lowercase (ü stays ü, W̃ becomes w̃), NFC-normalized.
std::string lower(std::string_view utf8);

/// Case-insensitive, normalization-insensitive equality.
bool equivalent(std::string_view a, std::string_view b);

/// Number of Unicode code points.
std::size_t code_points(std::string_view utf8);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Splits on anything that is not a letter, combining mark, digit or
/// apostrophe; used for whole-word scanning.
std::vector<std::string> word_tokens(std::string_view utf8);

}  // namespace larb::text
