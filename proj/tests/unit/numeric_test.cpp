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
#include "tailcheck/numeric.hpp"

#include "support/decimal_oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace tailcheck {
namespace {

const LocaleConvention kEn = LocaleConvention::for_language("en");
const LocaleConvention kDe = LocaleConvention::for_language("de");

NumericValue only_value(std::string_view s, const LocaleConvention& loc = kEn) {
    auto v = extract_numeric_values(s, loc);
    EXPECT_EQ(v.size(), 1u) << s;
    return v.empty() ? NumericValue{} : v[0];
}

NumericValue value_of(std::string_view s, const LocaleConvention& loc) { return only_value(s, loc); }

std::vector<Detection> check(std::string src, std::string tgt) {
    return check_pair_numeric(SentencePair{0, std::move(src), std::move(tgt)}, NumericConfig{});
}

TEST(Extract, Examples) {
    auto v = only_value("at £14 from");
    EXPECT_EQ(v.kind, NumericKind::Plain);
    EXPECT_EQ(v.condensed, "14");
    ASSERT_TRUE(v.parsed);
    EXPECT_EQ(v.parsed->integer, "14");
    auto t = only_value("around 2:30 p.m.");
    EXPECT_EQ(t.kind, NumericKind::Time);
    EXPECT_EQ(t.raw, "2:30");
    EXPECT_TRUE(extract_numeric_values("no digits here", kEn).empty());
}

TEST(Extract, Kinds) {
    EXPECT_EQ(only_value("on 12/25/2020 we").kind, NumericKind::Date);
    EXPECT_EQ(only_value("on 25-12-20 we").kind, NumericKind::Date);
    EXPECT_EQ(only_value("a 5km run").kind, NumericKind::FusedUnit);
    EXPECT_EQ(only_value("costs 10,000.50 total").parsed->fraction, "5");
    EXPECT_EQ(only_value("costs 10.000,50 total", kDe).parsed->integer, "10000");
    EXPECT_TRUE(extract_numeric_values("add 1.1/2 cups and 24/7", kEn).empty());
    EXPECT_EQ(extract_numeric_values("from 1990-1995", kEn).size(), 2u);
    EXPECT_EQ(only_value("a .5 share").parsed->fraction, "5");
}

TEST(Extract, TrailingPunctuationIsNotPartOfValue) {
    auto v = only_value("grew by 2020.");
    EXPECT_EQ(v.raw, "2020");
    EXPECT_EQ(v.span.end, 12u);
}

TEST(Extract, CondensedIsDigitSubsequence) {
    std::mt19937_64 rng(5);
    const std::string alphabet = "0123456789.,:/- ab";
    for (int i = 0; i < 2000; ++i) {
        std::string s;
        int n = std::uniform_int_distribution<int>(1, 20)(rng);
        for (int k = 0; k < n; ++k) s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
        for (const auto& v : extract_numeric_values(s, kEn)) {
            std::string digits;
            for (char c : v.raw) {
                if (c >= '0' && c <= '9') digits += c;
            }
            EXPECT_EQ(v.condensed, digits) << s;
            EXPECT_EQ(s.substr(v.span.start, v.span.end - v.span.start), v.raw) << s;
        }
    }
}

TEST(ParseDecimal, Groups) {
    EXPECT_EQ(parse_decimal("10,000", kEn), (DecimalValue{"10000", ""}));
    EXPECT_EQ(parse_decimal("1,234,567.890", kEn), (DecimalValue{"1234567", "89"}));
    EXPECT_EQ(parse_decimal("007", kEn), (DecimalValue{"7", ""}));
    EXPECT_EQ(parse_decimal("2,470", kDe), (DecimalValue{"2", "47"}));
    EXPECT_FALSE(parse_decimal("1,23,456", kEn));
    EXPECT_FALSE(parse_decimal("1.2.3", kEn));
    EXPECT_EQ(render_decimal(DecimalValue{"10000", "5"}, kDe, true), "10.000,5");
}

TEST(Acceptance, Examples) {
    const auto& de = NumberLexicon::for_language("de");
    auto time = allowed_target_forms(value_of("2:00", kEn), kDe, de);
    EXPECT_TRUE(time.accepts(value_of("14:00", kDe)));
    auto forms = time.forms();
    EXPECT_NE(std::find(forms.begin(), forms.end(), "14:00"), forms.end());

    auto twelve = allowed_target_forms(value_of("12", kEn), kDe, de);
    EXPECT_TRUE(twelve.accepts_word("zwölf"));
    forms = twelve.forms();
    EXPECT_NE(std::find(forms.begin(), forms.end(), "zwölf"), forms.end());

    auto ten_k = allowed_target_forms(value_of("10,000", kEn), kDe, de);
    for (const auto& r : testing::render_all({10000, ""}, ',', '.')) EXPECT_TRUE(ten_k.accepts(value_of(r, kDe))) << r;
    forms = ten_k.forms();
    EXPECT_NE(std::find(forms.begin(), forms.end(), "10.000"), forms.end());
}

TEST(CheckNumeric, Examples) {
    EXPECT_EQ(check("It rose to 24.70 dollars.", "Er stieg auf 2,470 Dollar.").size(), 1u);
    EXPECT_TRUE(check("I have 14 apples.", "Ich habe 14 Äpfel.").empty());
    auto d = check("This will continue throughout 2020.", "Das wird das ganze Jahr über so weitergehen.");
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].source_spans[0].surface, "2020");
    EXPECT_EQ(d[0].detector, DetectorKind::NumericalValues);
    EXPECT_TRUE(check("We met at 2:00.", "Wir trafen uns um 14:00.").empty());
    EXPECT_TRUE(check("We met at 14:00.", "Wir trafen uns um 2:00.").empty());
    EXPECT_TRUE(check("He has 12 cats.", "Er hat zwölf Katzen.").empty());
    EXPECT_TRUE(check("On 12/25/2020 it snowed.", "Am 25.12.2020 schneite es.").empty());
    EXPECT_TRUE(check("On 3/4/2020 it snowed.", "Am 4.3.2020 schneite es.").empty());
    EXPECT_TRUE(check("On 3/4/2020 it snowed.", "Am 3.4.2020 schneite es.").empty());
    EXPECT_FALSE(check("On 12/25/2020 it snowed.", "Am 25.12.2021 schneite es.").empty());
    EXPECT_FALSE(check("We met at 2:30.", "Wir trafen uns um 14:45.").empty());
}

TEST(CheckNumeric, IdentityNeverFlags) {
    for (std::string s : {"It cost 24.70 on 3/4/2020 at 2:30 p.m.", "1,000,000 people, 5km, 1990-1995", "24/7 and 1.1/2",
                          "v2.0.1 build 20201231 at 12:00:00", ".5 or 0.50 or 00"}) {
        EXPECT_TRUE(check(s, s).empty()) << s;
    }
}

TEST(CheckNumeric, LocaleSymmetry) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 1000; ++i) {
        auto v = testing::random_decimal(rng);
        for (const auto& s : testing::render_all(v, '.', ',')) {
            for (const auto& t : testing::render_all(v, ',', '.')) {
                auto d = check("The figure was " + s + " in total.", "Die Zahl betrug insgesamt " + t + ".");
                EXPECT_TRUE(d.empty()) << s << " -> " << t;
            }
        }
    }
}

TEST(CheckNumeric, TimeShiftInvolution) {
    for (int h = 0; h < 24; ++h) {
        int shifted = (h + 12) % 24;
        EXPECT_EQ((shifted + 12) % 24, h);
        auto hs = std::to_string(h), ss = std::to_string(shifted);
        EXPECT_TRUE(check("at " + hs + ":15 today", "um " + ss + ":15 heute").empty()) << h;
        EXPECT_TRUE(check("at " + ss + ":15 today", "um " + hs + ":15 heute").empty()) << h;
    }
}

TEST(CheckNumeric, ExemptSpansAreSkipped) {
    SentencePair p{0, "It costs £14 today.", "Es kostet 15 € heute."};
    EXPECT_EQ(check_pair_numeric(p, NumericConfig{}).size(), 1u);
    std::vector<TokenSpan> exempt = {TokenSpan::of(p.source, 11, 13)};
    EXPECT_TRUE(check_pair_numeric(p, NumericConfig{}, exempt).empty());
}

TEST(CheckNumeric, NumbersInsideUrlsAreSkipped) {
    EXPECT_TRUE(check("see https://example.org/2020/page42 now", "siehe Seite jetzt").empty());
}

} // namespace
} // namespace tailcheck
