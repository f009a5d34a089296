/*
 * Copyright 2026 The tailcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers shared by all detectors. Offsets are byte offsets into the
// owning string throughout the library.
namespace tailcheck::text {

// A non-owning token: [start, end) in the owning string.
struct TokenView {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string_view view;
};

// ASCII whitespace only (space, \t, \v, \f, \r, \n). This is the shared
// index space between detectors, alignment files and the aligner sidecar.
constexpr bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

constexpr bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

constexpr bool is_ascii_alpha(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::vector<TokenView> whitespace_tokens(std::string_view s);

std::size_t count_tokens(std::string_view s);

// Lowercases code points whose lowercase form has the same UTF-8 length, so
// byte offsets into the folded string remain valid for the original.
std::string fold_case(std::string_view s);

bool contains_digit(std::string_view s) noexcept;

// True iff s is nonempty and every code point has a Unicode punctuation
// general category (Pc, Pd, Ps, Pe, Pi, Pf, Po).
bool is_punctuation_token(std::string_view s);

// Strips leading and trailing Unicode punctuation code points.
std::string_view trim_punctuation(std::string_view s);

// Trim plus collapse of internal whitespace runs to a single space.
std::string normalize_whitespace(std::string_view s);

// Characters removed from the end of a source token before trigger lookup.
constexpr std::string_view kTrailingPunctuation = ".,;:!?)\"'";

constexpr bool is_trailing_punctuation(char c) noexcept {
    return kTrailingPunctuation.find(c) != std::string_view::npos;
}

// Returns the number of bytes of the currency-symbol code point starting at
// s[pos], or 0 when there is none.
std::size_t currency_symbol_length(std::string_view s, std::size_t pos) noexcept;

} // namespace tailcheck::text
