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

#include "tailcheck/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <array>
#include <cstdint>

namespace tailcheck::text {

namespace {

// Decodes one code point at s[i], advancing i. Malformed sequences yield a
// negative value and consume one byte.
UChar32 next_code_point(std::string_view s, std::size_t& i) {
    UChar32 cp;
    int32_t pos = static_cast<int32_t>(i);
    U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), pos, static_cast<int32_t>(s.size()), cp);
    i = static_cast<std::size_t>(pos);
    return cp;
}

UChar32 previous_code_point(std::string_view s, std::size_t& i) {
    UChar32 cp;
    int32_t pos = static_cast<int32_t>(i);
    U8_PREV(reinterpret_cast<const uint8_t*>(s.data()), 0, pos, cp);
    i = static_cast<std::size_t>(pos);
    return cp;
}

bool is_punct_cp(UChar32 cp) { return cp >= 0 && u_ispunct(cp); }

} // namespace

std::vector<TokenView> whitespace_tokens(std::string_view s) {
    std::vector<TokenView> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        if (i == s.size()) break;
        std::size_t start = i;
        while (i < s.size() && !is_space(s[i])) ++i;
        out.push_back({start, i, s.substr(start, i - start)});
    }
    return out;
}

std::size_t count_tokens(std::string_view s) {
    std::size_t n = 0;
    bool in_token = false;
    for (char c : s) {
        if (is_space(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++n;
        }
    }
    return n;
}

std::string fold_case(std::string_view s) {
    std::string out(s);
    std::size_t i = 0;
    while (i < out.size()) {
        unsigned char c = static_cast<unsigned char>(out[i]);
        if (c < 0x80) {
            if (c >= 'A' && c <= 'Z') out[i] = static_cast<char>(c + ('a' - 'A'));
            ++i;
            continue;
        }
        std::size_t start = i;
        UChar32 cp = next_code_point(out, i);
        if (cp < 0) continue;
        UChar32 lower = u_tolower(cp);
        if (lower == cp) continue;
        std::size_t len = i - start;
        if (static_cast<std::size_t>(U8_LENGTH(lower)) != len) continue;
        std::array<uint8_t, 4> buf{};
        int32_t written = 0;
        UBool error = false;
        U8_APPEND(buf.data(), written, 4, lower, error);
        if (error) continue;
        for (std::size_t k = 0; k < len; ++k) out[start + k] = static_cast<char>(buf[k]);
    }
    return out;
}

bool contains_digit(std::string_view s) noexcept {
    for (char c : s) {
        if (is_digit(c)) return true;
    }
    return false;
}

bool is_punctuation_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!is_punct_cp(next_code_point(s, i))) return false;
    }
    return true;
}

std::string_view trim_punctuation(std::string_view s) {
    std::size_t begin = 0;
    while (begin < s.size()) {
        std::size_t next = begin;
        if (!is_punct_cp(next_code_point(s, next))) break;
        begin = next;
    }
    std::size_t end = s.size();
    while (end > begin) {
        std::size_t prev = end;
        if (!is_punct_cp(previous_code_point(s, prev))) break;
        end = prev;
    }
    return s.substr(begin, end - begin);
}

std::string normalize_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const auto& tok : whitespace_tokens(s)) {
        if (!out.empty()) out.push_back(' ');
        out.append(tok.view);
    }
    return out;
}

std::size_t currency_symbol_length(std::string_view s, std::size_t pos) noexcept {
    if (pos >= s.size()) return 0;
    unsigned char c = static_cast<unsigned char>(s[pos]);
    if (c == '$') return 1;
    if (c < 0x80) return 0;
    std::size_t i = pos;
    UChar32 cp;
    int32_t p = static_cast<int32_t>(i);
    U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), p, static_cast<int32_t>(s.size()), cp);
    if (cp < 0) return 0;
    if (u_charType(cp) != U_CURRENCY_SYMBOL) return 0;
    return static_cast<std::size_t>(p) - pos;
}

} // namespace tailcheck::text
