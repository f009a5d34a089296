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

#include "tailcheck/lexicon.hpp"

#include <algorithm>

namespace tailcheck {

NumberLexicon::NumberLexicon(std::string language, std::vector<std::pair<std::string, std::int64_t>> words)
    : language_(std::move(language)), words_(std::move(words)) {
    std::sort(words_.begin(), words_.end());
}

const NumberLexicon& NumberLexicon::for_language(std::string_view language) {
    static const NumberLexicon en("en", {
        {"zero", 0},      {"one", 1},        {"two", 2},        {"three", 3},     {"four", 4},
        {"five", 5},      {"six", 6},        {"seven", 7},      {"eight", 8},     {"nine", 9},
        {"ten", 10},      {"eleven", 11},    {"twelve", 12},    {"thirteen", 13}, {"fourteen", 14},
        {"fifteen", 15},  {"sixteen", 16},   {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
        {"twenty", 20},   {"thirty", 30},    {"forty", 40},     {"fifty", 50},    {"sixty", 60},
        {"seventy", 70},  {"eighty", 80},    {"ninety", 90},    {"hundred", 100}, {"thousand", 1000},
    });
    // Inflected forms of "ein" are included for 1.
    static const NumberLexicon de("de", {
        {"null", 0},       {"eins", 1},       {"ein", 1},         {"eine", 1},       {"einen", 1},
        {"einem", 1},      {"einer", 1},      {"eines", 1},       {"zwei", 2},       {"zwo", 2},
        {"drei", 3},       {"vier", 4},       {"fünf", 5},        {"sechs", 6},      {"sieben", 7},
        {"acht", 8},       {"neun", 9},       {"zehn", 10},       {"elf", 11},       {"zwölf", 12},
        {"dreizehn", 13},  {"vierzehn", 14},  {"fünfzehn", 15},   {"sechzehn", 16},  {"siebzehn", 17},
        {"achtzehn", 18},  {"neunzehn", 19},  {"zwanzig", 20},    {"dreißig", 30},   {"vierzig", 40},
        {"fünfzig", 50},   {"sechzig", 60},   {"siebzig", 70},    {"achtzig", 80},   {"neunzig", 90},
        {"hundert", 100},  {"einhundert", 100}, {"tausend", 1000}, {"eintausend", 1000},
    });
    static const NumberLexicon none("", {});
    if (language == "en") return en;
    if (language == "de") return de;
    return none;
}

std::optional<std::int64_t> NumberLexicon::value_of(std::string_view folded_word) const noexcept {
    auto it = std::lower_bound(words_.begin(), words_.end(), folded_word,
                               [](const auto& w, std::string_view key) { return w.first < key; });
    if (it == words_.end() || it->first != folded_word) return std::nullopt;
    return it->second;
}

std::vector<std::string_view> NumberLexicon::words_for(std::int64_t value) const {
    std::vector<std::string_view> out;
    for (const auto& [word, v] : words_) {
        if (v == value) out.push_back(word);
    }
    return out;
}

} // namespace tailcheck
