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

#include "tailcheck/token_detector.hpp"

#include "support/oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>

namespace tailcheck {
namespace {

const TransformationTable& units() { return builtin_table(LanguagePair{}, TableCategory::PhysicalUnits); }
const TransformationTable& currencies() { return builtin_table(LanguagePair{}, TableCategory::Currencies); }

GuardPolicy units_policy() { return default_guard_policy(TableCategory::PhysicalUnits); }
GuardPolicy currency_policy() { return default_guard_policy(TableCategory::Currencies); }

TEST(TriggerTokens, SplitsCurrencyFromDigits) {
    auto toks = trigger_tokens("at £14 from 20€ and US$5");
    std::vector<std::string_view> v;
    for (const auto& t : toks) v.push_back(t.view);
    EXPECT_EQ(v, (std::vector<std::string_view>{"at", "£", "14", "from", "20", "€", "and", "US$", "5"}));
    EXPECT_EQ(toks[1].start, 3u);
    EXPECT_EQ(toks[2].start, 5u);
}

TEST(FindTriggers, PlesiosaurMm) {
    auto m = find_triggers("The plesiosaur teeth it self is about 43 mm long.", units());
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].entry->trigger, "mm");
    EXPECT_EQ(m[0].token_index, 8u);
    EXPECT_EQ(m[0].span.surface, "mm");
}

TEST(FindTriggers, NoSubstringMatches) {
    EXPECT_TRUE(find_triggers("a firm commitment", units()).empty());
    EXPECT_TRUE(find_triggers("mmm kmh", units()).empty());
}

TEST(FindTriggers, TrailingPunctuationAndCase) {
    auto m = find_triggers("ran 5 KM. then 3 Miles!)", units());
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0].span.surface, "KM");
    EXPECT_EQ(m[1].span.surface, "Miles");
}

TEST(Guard, Examples) {
    std::array<std::string_view, 4> stay = {"stay", "6", "feet", "apart"};
    EXPECT_TRUE(numeric_guard(stay, 2, GuardMode::NumericAntecedent));
    std::array<std::string_view, 4> missed = {"missed", "by", "a", "mile"};
    EXPECT_FALSE(numeric_guard(missed, 3, GuardMode::NumericAntecedent));
    std::array<std::string_view, 2> six = {"six", "feet"};
    EXPECT_TRUE(numeric_guard(six, 1, GuardMode::NumericAntecedent));
    EXPECT_TRUE(numeric_guard(missed, 3, GuardMode::None));
    std::array<std::string_view, 3> sym = {"£", "14", "from"};
    EXPECT_TRUE(numeric_guard(sym, 0, GuardMode::NumericAdjacent));
    EXPECT_FALSE(numeric_guard(sym, 0, GuardMode::NumericAntecedent));
}

TEST(Guard, NumberWords) {
    EXPECT_TRUE(is_number_word("six"));
    EXPECT_TRUE(is_number_word("Twenty-Five,"));
    EXPECT_TRUE(is_number_word("hundred"));
    EXPECT_FALSE(is_number_word("a"));
    EXPECT_FALSE(is_number_word("few"));
    EXPECT_FALSE(is_number_word("zero"));
}

TEST(Guard, AnchorPrefersPrevious) {
    std::array<std::string_view, 3> t = {"5", "$", "7"};
    EXPECT_EQ(guard_anchor(t, 1, GuardMode::NumericAdjacent), 0u);
    std::array<std::string_view, 3> u = {"at", "$", "7"};
    EXPECT_EQ(guard_anchor(u, 1, GuardMode::NumericAdjacent), 2u);
    EXPECT_EQ(guard_anchor(u, 1, GuardMode::NumericAntecedent), std::nullopt);
}

TEST(CheckPair, SixFeetSixMeter) {
    SentencePair p{0, "People should stay 6 feet apart.", "Die Leute sollten 6 Meter auseinander bleiben."};
    auto d = check_pair(p, units(), units_policy());
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].detector, DetectorKind::PhysicalUnits);
    EXPECT_EQ(d[0].source_spans[0].surface, "feet");
    EXPECT_NE(d[0].evidence.find("Fußende"), std::string::npos);
}

TEST(CheckPair, Relaxations) {
    EXPECT_TRUE(check_pair({0, "a run of 10 km", "ein Lauf von 10km"}, units(), units_policy()).empty());
    EXPECT_TRUE(check_pair({0, "He missed by a mile.", "Er hat es weit verfehlt."}, units(), units_policy()).empty());
    EXPECT_TRUE(
        check_pair({0, "He ran a few yards further.", "Er lief ein paar Schritte weiter."}, units(), units_policy())
            .empty());
}

TEST(CheckPair, TargetMatchIsCaseInsensitive) {
    EXPECT_TRUE(check_pair({0, "6 feet", "6 FUSS fuß"}, units(), units_policy()).empty());
    EXPECT_TRUE(check_pair({0, "costs $5", "kostet 5 DOLLAR"}, currencies(), currency_policy()).empty());
}

TEST(CheckPair, FusedCurrencySymbol) {
    SentencePair p{3, "Get it at £14 from Dunelm.", "Bei Dunelm für 15 € erhältlich."};
    auto d = check_pair(p, currencies(), currency_policy());
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].source_spans[0].surface, "£");
    EXPECT_EQ(d[0].source_spans[0].start, 10u);
}

TEST(CheckPair, EmptyTableNeverFlags) {
    TransformationTable empty({}, TableCategory::PhysicalUnits, {});
    EXPECT_TRUE(check_pair({0, "6 feet", "6 Meter"}, empty, units_policy()).empty());
}

TEST(Urls, Extraction) {
    auto urls = extract_urls("See https://www.incometaxindiaefiling.gov.in/home, or www.bbc.en.");
    ASSERT_EQ(urls.size(), 2u);
    EXPECT_EQ(urls[0].surface, "https://www.incometaxindiaefiling.gov.in/home");
    EXPECT_EQ(urls[1].surface, "www.bbc.en");
    EXPECT_TRUE(extract_urls("no links here, just www and http").empty());
}

TEST(Urls, WebTermExamples) {
    auto d = check_web_terms({0, "Type https://www.incometaxindiaefiling.gov.in/home into the address bar",
                              "Geben Sie incometaxindiaefiling.gov.in/home in die Adressleiste ein"});
    ASSERT_FALSE(d.empty());
    EXPECT_EQ(d[0].detector, DetectorKind::WebTerms);
    EXPECT_FALSE(check_web_terms({0, "visit www.bbc.en now", "besuchen Sie www.bbc.de jetzt"}).empty());
    EXPECT_TRUE(check_web_terms({0, "visit www.bbc.en now", "besuchen Sie www.bbc.en jetzt"}).empty());
    EXPECT_TRUE(check_web_terms({0, "nothing to see", "nichts zu sehen"}).empty());
}

// Library and brute-force reference agree on random tables and sentences.
TEST(Oracle, AgreesOnRandomInputs) {
    testing::RandomInputs gen(99);
    std::size_t flagged = 0;
    for (int t = 0; t < 20; ++t) {
        auto table = gen.table(kAllCategories[static_cast<std::size_t>(t) % 4]);
        auto policy = gen.policy();
        for (PairId i = 0; i < 300; ++i) {
            auto pair = gen.pair(i);
            auto expected = testing::oracle_check(pair, table, policy);
            std::vector<testing::OracleHit> actual;
            for (const auto& d : check_pair(pair, table, policy)) {
                actual.push_back({d.source_spans[0].start, d.source_spans[0].end, d.detector});
            }
            std::sort(expected.begin(), expected.end());
            std::sort(actual.begin(), actual.end());
            ASSERT_EQ(actual, expected) << "source: " << pair.source << "\ntarget: " << pair.target;
            flagged += expected.size();
        }
    }
    EXPECT_GT(flagged, 100u);
}

TEST(Oracle, TokenizersAgree) {
    for (std::string s : {"£14", "14€", "US$5", "₹20,000", "$", "a€b", "1$2$3", "x 10km ¥ 5¥"}) {
        auto mine = testing::oracle_tokens(s);
        auto lib = trigger_tokens(s);
        ASSERT_EQ(mine.size(), lib.size()) << s;
        for (std::size_t i = 0; i < lib.size(); ++i) {
            EXPECT_EQ(mine[i].start, lib[i].start) << s;
            EXPECT_EQ(mine[i].text, lib[i].view) << s;
        }
    }
}

} // namespace
} // namespace tailcheck
