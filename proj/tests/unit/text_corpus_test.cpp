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

#include "tailcheck/corpus.hpp"
#include "tailcheck/error.hpp"
#include "tailcheck/text.hpp"

#include "support/synthetic.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string_view>

namespace tailcheck {
namespace {

TEST(Text, WhitespaceTokensCarryOffsets) {
    auto toks = text::whitespace_tokens("  ab\tcd  e ");
    ASSERT_EQ(toks.size(), 3u);
    EXPECT_EQ(toks[0].start, 2u);
    EXPECT_EQ(toks[0].view, "ab");
    EXPECT_EQ(toks[1].start, 5u);
    EXPECT_EQ(toks[2].view, "e");
    EXPECT_EQ(text::count_tokens("  ab\tcd  e "), 3u);
    EXPECT_EQ(text::count_tokens(""), 0u);
}

TEST(Text, NoBreakSpaceIsNotASeparator) {
    EXPECT_EQ(text::count_tokens("10 000 km"), 2u);
}

TEST(Text, FoldCaseKeepsByteLength) {
    for (std::string s : {"Hello WORLD", "FÜSSE Straße", "ÄÖÜ", "İstanbul", "ΣΊΣΥΦΟΣ", "Ⅻ €"}) {
        auto f = text::fold_case(s);
        EXPECT_EQ(f.size(), s.size()) << s;
    }
    EXPECT_EQ(text::fold_case("FÜSSE Dollar"), "füsse dollar");
}

TEST(Text, PunctuationHelpers) {
    EXPECT_TRUE(text::is_punctuation_token("--"));
    EXPECT_FALSE(text::is_punctuation_token("=="));
    EXPECT_TRUE(text::is_punctuation_token("«»"));
    EXPECT_FALSE(text::is_punctuation_token("a."));
    EXPECT_FALSE(text::is_punctuation_token(""));
    EXPECT_EQ(text::trim_punctuation("(\"hello!\")"), "hello");
    EXPECT_EQ(text::normalize_whitespace("  a \t b  "), "a b");
}

TEST(Text, CurrencySymbols) {
    EXPECT_EQ(text::currency_symbol_length("$5", 0), 1u);
    EXPECT_EQ(text::currency_symbol_length("£14", 0), 2u);
    EXPECT_EQ(text::currency_symbol_length("₹", 0), 3u);
    EXPECT_EQ(text::currency_symbol_length("a€", 1), 3u);
    EXPECT_EQ(text::currency_symbol_length("ab", 0), 0u);
    EXPECT_EQ(text::currency_symbol_length("Ü", 0), 0u);
}

TEST(Corpus, TsvLineSplits) {
    std::istringstream in("Hello\tHola\n");
    auto r = BitextReader::from_tsv_stream(in);
    auto p = r.next();
    ASSERT_TRUE(p);
    EXPECT_EQ(*p, (SentencePair{0, "Hello", "Hola"}));
    EXPECT_FALSE(r.next());
}

TEST(Corpus, MalformedLineSkippedAndCounted) {
    std::istringstream in("a\tb\nno tab here\nc\td\n");
    auto r = BitextReader::from_tsv_stream(in);
    auto p0 = r.next();
    auto p1 = r.next();
    ASSERT_TRUE(p0 && p1);
    EXPECT_EQ(p0->id, 0u);
    EXPECT_EQ(p1->id, 2u);
    EXPECT_EQ(p1->source, "c");
    EXPECT_FALSE(r.next());
    EXPECT_EQ(r.malformed(), 1u);
}

TEST(Corpus, ParallelFilesOfUnequalLengthAreFatal) {
    std::istringstream src("a\nb\nc\n"), tgt("x\ny\n");
    auto r = BitextReader::from_parallel_streams(src, tgt);
    try {
        while (r.next()) {
        }
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find('3'), std::string::npos) << msg;
        EXPECT_NE(msg.find('2'), std::string::npos) << msg;
    }
}

TEST(Corpus, ReadAfterWriteRoundTrip) {
    auto corpus = testing::make_synthetic_corpus(2000, 50, 7);
    auto tsv = testing::to_tsv(corpus.pairs);
    std::istringstream in(tsv);
    auto r = BitextReader::from_tsv_stream(in);
    std::size_t i = 0;
    while (auto p = r.next()) {
        ASSERT_LT(i, corpus.pairs.size());
        EXPECT_EQ(*p, corpus.pairs[i]);
        ++i;
    }
    EXPECT_EQ(i, corpus.pairs.size());
    EXPECT_EQ(r.malformed(), 0u);
}

TEST(Corpus, SanitizeStripsLineBreaksOnly) {
    constexpr std::string_view raw("a\nb\r\0c d\u0085e\u2028 \tf", 17);
    EXPECT_EQ(sanitize_line(raw), "abc de \tf");
}

TEST(Corpus, EmptyReportWritesNothing) {
    std::ostringstream out;
    write_report(out, {});
    EXPECT_TRUE(out.str().empty());
}

TEST(Corpus, ReportRecordRoundTrip) {
    Detection d{42, DetectorKind::Currencies, {TokenSpan::of("at £14 from", 3, 5)}, "\"£\": no allowed form"};
    std::ostringstream out;
    write_detection(out, d);
    auto text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
    for (auto field : {"\"pair_id\"", "\"detector\"", "\"spans\"", "\"evidence\"", "currencies"}) {
        EXPECT_NE(text.find(field), std::string::npos) << field;
    }
    std::istringstream in(text);
    auto back = read_report(in);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].pair_id, 42u);
    EXPECT_EQ(back[0].detector, DetectorKind::Currencies);
    ASSERT_EQ(back[0].source_spans.size(), 1u);
    EXPECT_EQ(back[0].source_spans[0].start, 3u);
    EXPECT_EQ(back[0].source_spans[0].end, 5u);
    EXPECT_EQ(back[0].evidence, d.evidence);
}

TEST(Corpus, ReportOutputIsDeterministic) {
    std::vector<Detection> report;
    for (PairId i = 0; i < 1000; ++i) {
        report.push_back({i, kAllDetectors[i % kDetectorCount], {TokenSpan::of("x y z", 0, 1)}, "e" + std::to_string(i)});
    }
    std::ostringstream a, b;
    write_report(a, report);
    write_report(b, report);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Corpus, ReportOrder) {
    std::vector<Detection> v = {
        {2, DetectorKind::PhysicalUnits, {TokenSpan::of("abcdef", 4, 5)}, ""},
        {1, DetectorKind::Coverage, {}, ""},
        {1, DetectorKind::PhysicalUnits, {TokenSpan::of("abcdef", 3, 4)}, ""},
        {1, DetectorKind::PhysicalUnits, {TokenSpan::of("abcdef", 0, 1)}, ""},
    };
    std::stable_sort(v.begin(), v.end(), report_order);
    EXPECT_EQ(v[0].source_spans[0].start, 0u);
    EXPECT_EQ(v[1].source_spans[0].start, 3u);
    EXPECT_EQ(v[2].detector, DetectorKind::Coverage);
    EXPECT_EQ(v[3].pair_id, 2u);
}

TEST(Corpus, StatsCountPairsOncePerDetector) {
    std::vector<Detection> report = {
        {0, DetectorKind::PhysicalUnits, {}, ""},
        {0, DetectorKind::PhysicalUnits, {}, ""},
        {0, DetectorKind::NumericalValues, {}, ""},
        {3, DetectorKind::HallucinationOscillatory, {}, ""},
        {3, DetectorKind::HallucinationNatural, {}, ""},
        {5, DetectorKind::HallucinationNatural, {}, ""},
    };
    auto s = compute_stats(report, 10);
    EXPECT_EQ(s.flagged_pairs[index_of(DetectorKind::PhysicalUnits)], 1u);
    EXPECT_EQ(s.detections[index_of(DetectorKind::PhysicalUnits)], 2u);
    EXPECT_EQ(s.hallucination_pairs, 2u);
    EXPECT_EQ(s.total_flagged, 3u);
    EXPECT_EQ(s.total_processed, 10u);
    EXPECT_DOUBLE_EQ(s.incidence_rate(), 0.3);
}

TEST(Corpus, EmptyReportGivesZeroStats) {
    auto s = compute_stats({}, 0);
    EXPECT_EQ(s, CorpusStats{});
    std::ostringstream out;
    render_stats(out, s);
    EXPECT_NE(out.str().find("Pairs Flagged"), std::string::npos);
}

} // namespace
} // namespace tailcheck
