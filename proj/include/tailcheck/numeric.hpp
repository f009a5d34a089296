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
#include "tailcheck/lexicon.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tailcheck {

struct LocaleConvention {
    char decimal_mark = '.';
    char group_mark = ',';

    // en=(. ,) de=(, .); anything else falls back to en.
    static LocaleConvention for_language(std::string_view language) noexcept;

    bool operator==(const LocaleConvention&) const = default;
};

// Exact decimal: integer digits without leading zeros ("0" for zero) and
// fraction digits without trailing zeros.
struct DecimalValue {
    std::string integer = "0";
    std::string fraction;

    bool is_integer() const noexcept { return fraction.empty(); }
    bool operator==(const DecimalValue&) const = default;
};

enum class NumericKind : std::uint8_t { Plain, Time, Date, FusedUnit };

std::string_view to_string(NumericKind k) noexcept;

struct ClockTime {
    int hour = 0;
    int minute = 0;
    bool operator==(const ClockTime&) const = default;
};

// Day-month-year fields as written; the year keeps its written width.
struct CalendarDate {
    int first = 0;  // day or month
    int second = 0; // month or day
    int year = 0;
    bool two_digit_year = false;

    // (day, month) readings that are valid calendar fields.
    std::vector<std::pair<int, int>> readings() const;
};

struct NumericValue {
    TokenSpan span;
    std::string raw;
    std::string condensed;
    std::optional<DecimalValue> parsed; // plain and fused-unit values only
    NumericKind kind = NumericKind::Plain;
    std::optional<ClockTime> time;
    std::optional<CalendarDate> date;
};

// Parses digits with group and decimal marks. Groups must be 1-3 digits then
// exactly 3; the decimal mark may occur once, after all groups. No-break
// spaces also act as group marks.
std::optional<DecimalValue> parse_decimal(std::string_view raw, const LocaleConvention& locale);

// Renders v with the locale's decimal mark, grouping thousands when grouped.
std::string render_decimal(const DecimalValue& v, const LocaleConvention& locale, bool grouped);

// Maximal digit runs (digits joined by . , : / - or no-break spaces when a
// digit follows), classified as dates, times or plain numbers. Fraction-like
// slash compounds ("1.1/2", "24/7") are skipped. Hyphen and colon compounds
// that are not dates or times are split into their parts.
std::vector<NumericValue> extract_numeric_values(std::string_view text, const LocaleConvention& locale);

// The transformations a translation may apply to one source value.
class AcceptanceSet {
  public:
    AcceptanceSet(NumericValue source, LocaleConvention target_locale, const NumberLexicon& target_words);

    // Target value extracted under the target locale.
    bool accepts(const NumericValue& target) const;
    // Case-folded target word with surrounding punctuation removed.
    bool accepts_word(std::string_view folded_word) const;

    // Representative accepted renderings, for evidence and tests.
    std::vector<std::string> forms() const;

    const NumericValue& source() const noexcept { return source_; }

  private:
    NumericValue source_;
    LocaleConvention target_locale_;
    std::vector<std::string_view> words_;
};

AcceptanceSet allowed_target_forms(const NumericValue& v, const LocaleConvention& target_locale,
                                   const NumberLexicon& target_words);

struct NumericConfig {
    LocaleConvention source_locale;
    LocaleConvention target_locale = LocaleConvention::for_language("de");
    std::string target_language = "de";

    bool operator==(const NumericConfig&) const = default;
};

// One Detection per source value with no accepted counterpart. Values inside
// URLs are not checked, nor values overlapping an exempt span (numbers bound
// to a trigger that already failed).
std::vector<Detection> check_pair_numeric(const SentencePair& pair, const NumericConfig& cfg,
                                          std::span<const TokenSpan> exempt = {});

} // namespace tailcheck
