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

#include "larb/text/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "larb/error.hpp"

namespace larb::text {
namespace {

icu::UnicodeString from_utf8(std::string_view utf8) {
  auto s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  if (s.isBogus()) throw InputError("invalid UTF-8 input");
  return s;
}

std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw Error("ICU NFC normalizer unavailable");
  }
  return *n;
}

icu::UnicodeString normalize(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc_instance().normalize(s, status);
  if (U_FAILURE(status)) throw InputError("NFC normalization failed");
  return out;
}

}  // namespace

std::string nfc(std::string_view utf8) {
  return to_utf8(normalize(from_utf8(utf8)));
}

std::string lower(std::string_view utf8) {
  icu::UnicodeString s = from_utf8(utf8);
  s.toLower();
  return to_utf8(normalize(s));
}

bool equivalent(std::string_view a, std::string_view b) {
  return lower(a) == lower(b);
}

std::size_t code_points(std::string_view utf8) {
  return static_cast<std::size_t>(from_utf8(utf8).countChar32());
}

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> word_tokens(std::string_view utf8) {
  icu::UnicodeString s = normalize(from_utf8(utf8));
  std::vector<std::string> out;
  icu::UnicodeString current;
  auto flush = [&] {
    if (!current.isEmpty()) {
      out.push_back(to_utf8(current));
      current.remove();
    }
  };
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    const int8_t type = u_charType(c);
    const bool word_char = u_isalnum(c) || c == U'\'' ||
                           type == U_NON_SPACING_MARK ||
                           type == U_COMBINING_SPACING_MARK;
    if (word_char) {
      current.append(c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

}  // namespace larb::text
