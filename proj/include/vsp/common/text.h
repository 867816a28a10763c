// Copyright 2026 The VSP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Unicode-aware text helpers shared by linking, extraction and scoring.
// Strings are UTF-8 on the outside and code points (char32_t) when compared.
namespace vsp::text {

// Invalid byte sequences decode to U+FFFD.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

std::size_t code_point_count(std::string_view text);
// Number of code points that start before `byte_offset`.
std::size_t code_point_offset(std::string_view text, std::size_t byte_offset);

// Han, Hiragana, Katakana and CJK punctuation-free ideograph blocks.
bool is_cjk(char32_t c);
bool is_space(char32_t c);
bool is_punctuation(char32_t c);

std::string trim(std::string_view text);
std::string to_lower_ascii(std::string_view text);
bool contains_cjk(std::string_view text);

// Case-folds ASCII, trims, and collapses internal whitespace runs to one
// space.
std::u32string normalize(std::string_view text);
std::string normalize_utf8(std::string_view text);

std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
// 1 - distance / max(len(a), len(b)); two empty strings are identical.
double normalized_similarity(std::u32string_view a, std::u32string_view b);

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;
  bool cjk = false;
};

// Whitespace/punctuation-delimited words for space-separated scripts, one
// token per character for CJK. Inner '.', '/', '\'' and '-' stay inside a
// word when surrounded by word characters ("38.5", "120/80", "don't").
std::vector<Token> tokenize(std::string_view text);

std::vector<std::string> split(std::string_view text, char delimiter);
bool starts_with_icase(std::string_view text, std::string_view prefix);
// Byte offset of the first case-insensitive (ASCII) occurrence, or npos.
std::size_t find_icase(std::string_view haystack, std::string_view needle,
                       std::size_t from = 0);
std::string replace_all(std::string text, std::string_view from,
                        std::string_view to);

}  // namespace vsp::text
