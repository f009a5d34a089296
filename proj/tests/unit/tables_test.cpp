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

#include "tailcheck/error.hpp"
#include "tailcheck/tables.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace tailcheck {
namespace {

const TransformationEntry* entry(const TransformationTable& t, std::string_view trigger) {
    auto i = t.find(trigger);
    return i ? &t.entries()[*i] : nullptr;
}

std::string error_of(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_table(in, "t.tsv");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

TEST(Tables, ParsesRows) {
    std::istringstream in("# comment\nmeter\tmeter, m\tdist\tphysical-units\n"
                          "feet\tFuß, Füße, Fußende\tdist\tphysical-units\n");
    auto t = parse_table(in, "t.tsv");
    EXPECT_EQ(t.category(), TableCategory::PhysicalUnits);
    ASSERT_EQ(t.entries().size(), 2u);
    const auto& m = t.entries()[0];
    EXPECT_EQ(m.trigger, "meter");
    EXPECT_EQ(m.targets, (std::vector<std::string>{"meter", "m"}));
    EXPECT_EQ(m.type_tag, "dist");
    EXPECT_EQ(t.entries()[1].targets.size(), 3u);
    EXPECT_EQ(t.entries()[1].canonical_target(), "Fuß");
}

TEST(Tables, CanonicalColumn) {
    std::istringstream in("mile\tmeile, meilen\tdist\tphysical-units\tmeilen\n");
    auto t = parse_table(in, "t.tsv");
    EXPECT_EQ(t.entries()[0].canonical_target(), "meilen");
}

TEST(Tables, DuplicateTriggerNamesBothLines) {
    auto msg = error_of("mile\tmeile\tdist\tphysical-units\nkm\tkm\tdist\tphysical-units\nMile\tmeile\tdist\tphysical-units\n");
    EXPECT_NE(msg.find("duplicate"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(Tables, InvalidRowsAreFatal) {
    EXPECT_NE(error_of("mile\t\tdist\tphysical-units\n"), "");
    EXPECT_NE(error_of("mile\tmeile\t\tphysical-units\n"), "");
    EXPECT_NE(error_of("mile\tmeile\tdist\tlengths\n"), "");
    EXPECT_NE(error_of("mile\tmeile\tdist\n"), "");
    EXPECT_NE(error_of("mile\tmeile\tdist\tphysical-units\n$\t$\tsym\tcurrencies\n"), "");
    EXPECT_NE(error_of("mile\tmeile, , meilen\tdist\tphysical-units\n"), "");
    EXPECT_NE(error_of("# only a comment\n"), "");
}

TEST(Tables, ConstructorValidates) {
    TransformationEntry e{"x y", {"a"}, "t", TableCategory::WebTerms, 0};
    EXPECT_THROW(TransformationTable({}, TableCategory::WebTerms, {e}), ConfigError);
    e.trigger = "x";
    e.canonical = 3;
    EXPECT_THROW(TransformationTable({}, TableCategory::WebTerms, {e}), ConfigError);
}

TEST(Tables, WriteParseRoundTrip) {
    for (const auto& t : builtin_tables(LanguagePair{})) {
        std::ostringstream out;
        write_table(out, t);
        std::istringstream in(out.str());
        auto back = parse_table(in, "round-trip");
        EXPECT_EQ(back, t) << to_string(t.category());
    }
}

TEST(Tables, BundledEntries) {
    LanguagePair en_de;
    const auto& cur = builtin_table(en_de, TableCategory::Currencies);
    auto* dollar = entry(cur, "$");
    ASSERT_NE(dollar, nullptr);
    EXPECT_EQ(dollar->targets, (std::vector<std::string>{"$", "dollar", "dollars", "usd"}));
    EXPECT_EQ(dollar->type_tag, "sym");
    EXPECT_NE(entry(builtin_table(en_de, TableCategory::LargeNumbers), "trillion"), nullptr);
    auto* https = entry(builtin_table(en_de, TableCategory::WebTerms), "https");
    ASSERT_NE(https, nullptr);
    EXPECT_EQ(https->targets, (std::vector<std::string>{"https"}));
    auto* feet = entry(builtin_table(en_de, TableCategory::PhysicalUnits), "feet");
    ASSERT_NE(feet, nullptr);
    EXPECT_EQ(feet->targets, (std::vector<std::string>{"Fuß", "Füße", "Fußende"}));
}

TEST(Tables, WebTermsAreIdentityMappings) {
    for (const auto& e : builtin_table(LanguagePair{}, TableCategory::WebTerms).entries()) {
        EXPECT_EQ(e.targets, (std::vector<std::string>{e.trigger}));
    }
}

TEST(Tables, BundledTablesAreOrderedAndTyped) {
    auto all = builtin_tables(LanguagePair{});
    ASSERT_EQ(all.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(all[i].category(), kAllCategories[i]);
        for (const auto& e : all[i].entries()) {
            EXPECT_EQ(e.category, all[i].category());
            EXPECT_FALSE(e.type_tag.empty());
        }
    }
}

TEST(Tables, UnsupportedPair) {
    EXPECT_THROW(builtin_tables(LanguagePair{"fr", "ja"}), ConfigError);
    auto lp = LanguagePair::parse("en-de");
    ASSERT_TRUE(lp);
    EXPECT_EQ(*lp, LanguagePair{});
    EXPECT_FALSE(LanguagePair::parse("ende"));
}

TEST(Tables, LookupIsCaseInsensitiveOnFoldedInput) {
    const auto& t = builtin_table(LanguagePair{}, TableCategory::PhysicalUnits);
    EXPECT_TRUE(t.find("km"));
    EXPECT_TRUE(t.find("km²"));
    EXPECT_FALSE(t.find("kilometres-ish"));
}

} // namespace
} // namespace tailcheck
