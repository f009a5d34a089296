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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tailcheck {

// Cardinal number words of one language: 0-20, the tens up to 90, hundred and
// thousand. Lookups take case-folded words.
class NumberLexicon {
  public:
    NumberLexicon(std::string language, std::vector<std::pair<std::string, std::int64_t>> words);

    // Bundled lexicons exist for "en" and "de"; others yield an empty lexicon.
    static const NumberLexicon& for_language(std::string_view language);

    const std::string& language() const noexcept { return language_; }
    std::optional<std::int64_t> value_of(std::string_view folded_word) const noexcept;
    std::vector<std::string_view> words_for(std::int64_t value) const;
    bool empty() const noexcept { return words_.empty(); }

  private:
    std::string language_;
    std::vector<std::pair<std::string, std::int64_t>> words_; // sorted by word
};

} // namespace tailcheck
