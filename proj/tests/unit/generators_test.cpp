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

#include "tailcheck/generators.hpp"
#include "tailcheck/text.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace tailcheck {
namespace {

const TransformationTable& units() { return builtin_table(LanguagePair{}, TableCategory::PhysicalUnits); }
GuardPolicy units_policy() { return default_guard_policy(TableCategory::PhysicalUnits); }

std::size_t same_type_count(const TransformationTable& t, const std::string& tag) {
    return static_cast<std::size_t>(
        std::count_if(t.entries().begin(), t.entries().end(), [&](const auto& e) { return e.type_tag == tag; }));
}

TEST(Metamorphic, MetersBecomeOtherDistances) {
    auto out = metamorphic_generate("ran 5 meters today", units(), 11);
    ASSERT_FALSE(out.empty());
    EXPECT_EQ(out.size(), same_type_count(units(), "dist") - 1);
    bool yards = false;
    for (const auto& m : out) {
        EXPECT_EQ(m.original_id, 11u);
        EXPECT_EQ(m.substituted_from, "meters");
        EXPECT_NE(m.substituted_to, "meters");
        EXPECT_EQ(m.type_tag, "dist");
        EXPECT_EQ(m.token_index, 2u);
        yards = yards || m.new_source == "ran 5 yards today";
    }
    EXPECT_TRUE(yards);
}

TEST(Metamorphic, NoTriggerNoInstances) {
    EXPECT_TRUE(metamorphic_generate("nothing measurable here", units()).empty());
}

// Count, closure and reversibility on random lowercase sentences built from
// bare triggers and filler words. The expected count enumerates every
// (occurrence, same-type entry) substitution directly.
TEST(Metamorphic, Properties) {
    const auto& table = units();
    const std::vector<std::string> filler = {"the", "ran", "5", "about", "a", "six", "long", "mmm", "kms", "10km"};
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 2000; ++i) {
        std::string sentence;
        std::size_t expected = 0;
        int n = std::uniform_int_distribution<int>(0, 10)(rng);
        for (int k = 0; k < n; ++k) {
            std::string tok;
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
                const auto& e = table.entries()[std::uniform_int_distribution<std::size_t>(0, table.entries().size() - 1)(rng)];
                tok = e.trigger;
                for (const auto& other : table.entries()) expected += (&other != &e && other.type_tag == e.type_tag);
            } else {
                tok = filler[std::uniform_int_distribution<std::size_t>(0, filler.size() - 1)(rng)];
            }
            sentence += (k ? " " : "") + tok;
        }
        auto out = metamorphic_generate(sentence, table, static_cast<PairId>(i));
        ASSERT_EQ(out.size(), expected) << sentence;
        for (const auto& m : out) {
            // Closure: the new sentence holds a same-type trigger at the same token.
            auto found = find_triggers(m.new_source, table);
            auto at = std::find_if(found.begin(), found.end(),
                                   [&](const auto& f) { return f.token_index == m.token_index; });
            ASSERT_NE(at, found.end()) << m.new_source;
            EXPECT_EQ(at->entry->type_tag, m.type_tag);
            EXPECT_EQ(at->entry->trigger, m.substituted_to);
            EXPECT_EQ(text::count_tokens(m.new_source), text::count_tokens(sentence));
            // Reversibility: substituting back restores the original.
            auto back = metamorphic_generate(m.new_source, table);
            bool restored = std::any_of(back.begin(), back.end(), [&](const auto& r) {
                return r.token_index == m.token_index && r.new_source == sentence;
            });
            EXPECT_TRUE(restored) << sentence << " -> " << m.new_source;
        }
    }
}

TEST(MetaCorpus, PlesiosaurTemplate) {
    SentencePair p{0, "The plesiosaur teeth it self is about 43 mm long.", "Der Plesiosaurier Zahn selber misst etwa 43 mm."};
    MetaCorpusGenerator gen(units(), units_policy());
    auto t = gen.templatize(p);
    ASSERT_TRUE(t);
    EXPECT_EQ(t->source_template, "The plesiosaur teeth it self is about 43 [VAL] long.");
    EXPECT_EQ(t->target_template, "Der Plesiosaurier Zahn selber misst etwa 43 [VAL].");
    EXPECT_EQ(t->matched_target_form, "mm");
    auto pairs = gen.expand(*t);
    EXPECT_EQ(pairs.size(), same_type_count(units(), "dist"));
    auto feet = std::find_if(pairs.begin(), pairs.end(), [](const auto& m) { return m.source_token == "feet"; });
    ASSERT_NE(feet, pairs.end());
    EXPECT_EQ(feet->source, "The plesiosaur teeth it self is about 43 feet long.");
    EXPECT_EQ(feet->target, "Der Plesiosaurier Zahn selber misst etwa 43 Fuß.");
    EXPECT_EQ(feet->target_form, "Fuß");
    auto self = std::find_if(pairs.begin(), pairs.end(), [](const auto& m) { return m.source_token == "mm"; });
    ASSERT_NE(self, pairs.end());
    EXPECT_EQ(t->instantiate(t->source_surface, t->target_surface), p);
}

TEST(MetaCorpus, SkipReasons) {
    std::vector<SentencePair> corpus = {
        {0, "stay 6 feet apart", "6 Meter Abstand halten"},          // flagged
        {1, "no units here", "keine Einheiten"},                      // zero triggers
        {2, "ran 5 km and 3 miles", "lief 5 km und 3 Meilen"},        // multiple
        {3, "ran 5 km", "lief 5 km, also 5 km"},                      // form twice
        {4, "ran 5 km [VAL]", "lief 5 km [VAL]"},                     // placeholder present
        {5, "ran 5 km", "lief 5 Kilometer"},                          // ok
    };
    auto mc = meta_corpus_generate(corpus, units(), units_policy());
    EXPECT_EQ(mc.skips, (MetaCorpusSkips{1, 1, 1, 2}));
    ASSERT_EQ(mc.templates.size(), 1u);
    EXPECT_EQ(mc.templates[0].origin, 5u);
    EXPECT_EQ(mc.templates[0].target_template, "lief 5 [VAL]");
    EXPECT_EQ(mc.pairs.size(), same_type_count(units(), "dist"));
}

// Every generated pair passes the detector that selected its template.
TEST(MetaCorpus, GeneratedPairsAreClean) {
    std::vector<SentencePair> corpus = {
        {0, "The plesiosaur teeth it self is about 43 mm long.", "Der Plesiosaurier Zahn selber misst etwa 43 mm."},
        {1, "The lake covers 12 km² of land.", "Der See bedeckt 12 km² Land."},
        {2, "She lifted 40 kg easily.", "Sie hob mühelos 40 kg."},
    };
    auto mc = meta_corpus_generate(corpus, units(), units_policy());
    ASSERT_EQ(mc.templates.size(), 3u);
    for (const auto& p : mc.pairs) {
        EXPECT_TRUE(check_pair({0, p.source, p.target}, units(), units_policy()).empty()) << p.source << " | " << p.target;
    }
}

} // namespace
} // namespace tailcheck
