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

#include "tailcheck/corpus.hpp"
#include "tailcheck/tables.hpp"
#include "tailcheck/text.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tailcheck {

enum class GuardMode : std::uint8_t {
    None,
    NumericAntecedent, // previous token is a number or an English number word
    NumericAdjacent,   // previous or next token is a number
};

std::string_view to_string(GuardMode m) noexcept;
std::optional<GuardMode> parse_guard_mode(std::string_view s) noexcept;

// Guard applied to a table. Entries tagged "sym" use symbol_mode, all others
// use mode.
struct GuardPolicy {
    GuardMode mode = GuardMode::None;
    GuardMode symbol_mode = GuardMode::None;

    GuardMode mode_for(const TransformationEntry& e) const noexcept {
        return e.type_tag == "sym" ? symbol_mode : mode;
    }

    static GuardPolicy uniform(GuardMode m) noexcept { return {m, m}; }

    bool operator==(const GuardPolicy&) const = default;
};

// Units: antecedent. Currencies: antecedent for words, adjacent for symbols.
// Large numbers and web terms: none.
GuardPolicy default_guard_policy(TableCategory c) noexcept;

// Whitespace tokens, with currency symbols split off adjacent digits so that
// "£14" yields "£" and "14".
std::vector<text::TokenView> trigger_tokens(std::string_view s);

// A source sentence tokenized and case-folded once, shared by all tables.
class PreparedSource {
  public:
    explicit PreparedSource(std::string_view source);

    std::string_view text() const noexcept { return text_; }
    const std::vector<text::TokenView>& tokens() const noexcept { return tokens_; }
    std::string_view folded_token(std::size_t i) const noexcept {
        return std::string_view(folded_).substr(tokens_[i].start, tokens_[i].end - tokens_[i].start);
    }
    std::span<const std::string_view> surfaces() const noexcept { return surfaces_; }

  private:
    std::string_view text_;
    std::string folded_;
    std::vector<text::TokenView> tokens_;
    std::vector<std::string_view> surfaces_;
};

struct TriggerMatch {
    const TransformationEntry* entry = nullptr;
    TokenSpan span;
    std::size_t token_index = 0;
};

// A token matches trigger t when, case-folded, it equals t followed by zero or
// more characters of text::kTrailingPunctuation. The longest such t wins.
std::vector<TriggerMatch> find_triggers(std::string_view source, const TransformationTable& table);
std::vector<TriggerMatch> find_triggers(const PreparedSource& source, const TransformationTable& table);

bool is_numeric_token(std::string_view token) noexcept;

// English cardinal words one to twenty, the tens, hundred and thousand, and
// hyphenated combinations of them ("twenty-five").
bool is_number_word(std::string_view token);

bool numeric_guard(std::span<const std::string_view> tokens, std::size_t index, GuardMode mode);

// Index of the numeric token that satisfied the guard, if the guard has one.
// Number words count as anchors only for the antecedent mode.
std::optional<std::size_t> guard_anchor(std::span<const std::string_view> tokens, std::size_t index, GuardMode mode);

struct TriggerFailure {
    TriggerMatch match;
    // Digit-bearing token bound to the trigger ("6" in "6 feet"), if any.
    std::optional<std::size_t> numeric_anchor;
};

// Guarded triggers none of whose target forms occur in folded_target.
std::vector<TriggerFailure> failed_triggers(const PreparedSource& source, std::string_view folded_target,
                                            const TransformationTable& table, const GuardPolicy& policy);

Detection make_trigger_detection(PairId id, const TransformationTable& table, const TriggerMatch& m);

std::vector<Detection> check_pair(const SentencePair& pair, const TransformationTable& table,
                                  const GuardPolicy& policy);

// Scheme-prefixed (http://, https://, ftp://) or www.-prefixed substrings of
// whitespace tokens, extended to the end of the token with trailing sentence
// punctuation removed.
std::vector<TokenSpan> extract_urls(std::string_view s);

// One detection per extracted source URL missing verbatim from the target.
std::vector<Detection> check_urls(const SentencePair& pair);

// URL copy check plus the identity table for bare web terms.
std::vector<Detection> check_web_terms(const SentencePair& pair, const TransformationTable& web_table);
std::vector<Detection> check_web_terms(const SentencePair& pair);

} // namespace tailcheck
