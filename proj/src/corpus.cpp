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

#include <nlohmann/json.hpp>

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

namespace tailcheck {

namespace {

constexpr std::array<std::string_view, kDetectorCount> kDetectorNames = {
    "physical-units",
    "currencies",
    "large-numbers",
    "web-terms",
    "numerical-values",
    "coverage",
    "hallucination-oscillatory",
    "hallucination-natural",
};

std::size_t count_remaining_lines(std::istream& in) {
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

} // namespace

std::string_view to_string(DetectorKind kind) noexcept { return kDetectorNames[index_of(kind)]; }

std::optional<DetectorKind> parse_detector(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kDetectorNames.size(); ++i) {
        if (kDetectorNames[i] == name) return kAllDetectors[i];
    }
    return std::nullopt;
}

TokenSpan TokenSpan::of(std::string_view owner, std::size_t start, std::size_t end) {
    if (start >= end || end > owner.size()) {
        throw InvariantError("token span [" + std::to_string(start) + "," + std::to_string(end) +
                             ") outside string of length " + std::to_string(owner.size()));
    }
    return TokenSpan{start, end, std::string(owner.substr(start, end - start))};
}

bool report_order(const Detection& a, const Detection& b) noexcept {
    auto first = [](const Detection& d) {
        return d.source_spans.empty() ? std::size_t{0} : d.source_spans.front().start;
    };
    return std::make_tuple(a.pair_id, index_of(a.detector), first(a)) <
           std::make_tuple(b.pair_id, index_of(b.detector), first(b));
}

CorpusStats compute_stats(std::span<const Detection> report, std::size_t total_processed) {
    CorpusStats stats;
    stats.total_processed = total_processed;

    // Group by pair id; report order keeps a pair's records contiguous, but
    // do not rely on it.
    std::vector<const Detection*> sorted;
    sorted.reserve(report.size());
    for (const auto& d : report) sorted.push_back(&d);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Detection* a, const Detection* b) { return report_order(*a, *b); });

    std::size_t i = 0;
    while (i < sorted.size()) {
        PairId id = sorted[i]->pair_id;
        std::array<bool, kDetectorCount> seen{};
        for (; i < sorted.size() && sorted[i]->pair_id == id; ++i) {
            auto k = index_of(sorted[i]->detector);
            ++stats.detections[k];
            seen[k] = true;
        }
        for (std::size_t k = 0; k < kDetectorCount; ++k) {
            if (seen[k]) ++stats.flagged_pairs[k];
        }
        if (seen[index_of(DetectorKind::HallucinationOscillatory)] ||
            seen[index_of(DetectorKind::HallucinationNatural)]) {
            ++stats.hallucination_pairs;
        }
        ++stats.total_flagged;
    }
    return stats;
}

void render_stats(std::ostream& out, const CorpusStats& stats) {
    struct Row {
        std::string_view label;
        std::size_t count;
    };
    auto pairs = [&](DetectorKind k) { return stats.flagged_pairs[index_of(k)]; };
    const std::array<Row, 7> rows = {{
        {"Coverage", pairs(DetectorKind::Coverage)},
        {"Hallucinations", stats.hallucination_pairs},
        {"Physical Units", pairs(DetectorKind::PhysicalUnits)},
        {"Currencies", pairs(DetectorKind::Currencies)},
        {"Large Numbers", pairs(DetectorKind::LargeNumbers)},
        {"Web Content", pairs(DetectorKind::WebTerms)},
        {"Numerical Values", pairs(DetectorKind::NumericalValues)},
    }};
    std::size_t total_errors = 0;
    for (const auto& r : rows) total_errors += r.count;

    constexpr int kLabel = 20;
    constexpr int kCount = 12;
    auto line = [&](std::string_view label, const std::string& value) {
        out << std::left << std::setw(kLabel) << label << std::right << std::setw(kCount) << value << '\n';
    };
    line("Property", "Count");
    out << std::string(kLabel + kCount, '-') << '\n';
    for (const auto& r : rows) line(r.label, std::to_string(r.count));
    out << std::string(kLabel + kCount, '-') << '\n';
    line("Total Errors", std::to_string(total_errors));
    line("Pairs Processed", std::to_string(stats.total_processed));
    line("Pairs Flagged", std::to_string(stats.total_flagged));
    std::ostringstream rate;
    rate << std::fixed << std::setprecision(4) << stats.incidence_rate() * 100.0 << '%';
    line("Incidence Rate", rate.str());
}

std::string sanitize_line(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '\n' || c == '\r' || c == '\0') continue;
        // U+0085 (C2 85), U+2028 (E2 80 A8), U+2029 (E2 80 A9)
        if (static_cast<unsigned char>(c) == 0xC2 && i + 1 < s.size() &&
            static_cast<unsigned char>(s[i + 1]) == 0x85) {
            ++i;
            continue;
        }
        if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < s.size() &&
            static_cast<unsigned char>(s[i + 1]) == 0x80 &&
            (static_cast<unsigned char>(s[i + 2]) == 0xA8 || static_cast<unsigned char>(s[i + 2]) == 0xA9)) {
            i += 2;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

BitextReader BitextReader::open_tsv(const std::filesystem::path& path) {
    BitextReader r;
    r.owned_a_ = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*r.owned_a_) throw IoError("cannot open bitext '" + path.string() + "'");
    r.a_ = r.owned_a_.get();
    r.format_ = BitextFormat::Tsv;
    return r;
}

BitextReader BitextReader::open_parallel(const std::filesystem::path& source, const std::filesystem::path& target) {
    BitextReader r;
    r.owned_a_ = std::make_unique<std::ifstream>(source, std::ios::binary);
    if (!*r.owned_a_) throw IoError("cannot open source file '" + source.string() + "'");
    r.owned_b_ = std::make_unique<std::ifstream>(target, std::ios::binary);
    if (!*r.owned_b_) throw IoError("cannot open target file '" + target.string() + "'");
    r.a_ = r.owned_a_.get();
    r.b_ = r.owned_b_.get();
    r.format_ = BitextFormat::Parallel;
    return r;
}

BitextReader BitextReader::from_tsv_stream(std::istream& in) {
    BitextReader r;
    r.a_ = &in;
    r.format_ = BitextFormat::Tsv;
    return r;
}

BitextReader BitextReader::from_parallel_streams(std::istream& source, std::istream& target) {
    BitextReader r;
    r.a_ = &source;
    r.b_ = &target;
    r.format_ = BitextFormat::Parallel;
    return r;
}

BitextReader::BitextReader(BitextReader&&) noexcept = default;
BitextReader& BitextReader::operator=(BitextReader&&) noexcept = default;
BitextReader::~BitextReader() = default;

std::optional<SentencePair> BitextReader::next() {
    if (format_ == BitextFormat::Tsv) {
        while (std::getline(*a_, buf_a_)) {
            PairId id = line_++;
            auto tab = buf_a_.find('\t');
            if (tab == std::string::npos || buf_a_.find('\t', tab + 1) != std::string::npos) {
                ++malformed_;
                continue;
            }
            std::string_view line(buf_a_);
            return SentencePair{id, sanitize_line(line.substr(0, tab)), sanitize_line(line.substr(tab + 1))};
        }
        if (a_->bad()) throw IoError("read error in bitext at line " + std::to_string(line_ + 1));
        return std::nullopt;
    }

    bool got_a = static_cast<bool>(std::getline(*a_, buf_a_));
    bool got_b = static_cast<bool>(std::getline(*b_, buf_b_));
    if (a_->bad() || b_->bad()) throw IoError("read error in parallel input at line " + std::to_string(line_ + 1));
    if (got_a != got_b) {
        std::size_t source_lines = line_ + (got_a ? 1 + count_remaining_lines(*a_) : 0);
        std::size_t target_lines = line_ + (got_b ? 1 + count_remaining_lines(*b_) : 0);
        throw IoError("parallel inputs differ in length: source has " + std::to_string(source_lines) +
                      " lines, target has " + std::to_string(target_lines) + " lines");
    }
    if (!got_a) return std::nullopt;
    return SentencePair{line_++, sanitize_line(buf_a_), sanitize_line(buf_b_)};
}

void write_bitext_line(std::ostream& out, const SentencePair& pair) {
    out << pair.source << '\t' << pair.target << '\n';
    if (!out) throw IoError("write failure while writing bitext");
}

void write_detection(std::ostream& out, const Detection& d) {
    nlohmann::ordered_json rec;
    rec["pair_id"] = d.pair_id;
    rec["detector"] = to_string(d.detector);
    auto spans = nlohmann::ordered_json::array();
    for (const auto& s : d.source_spans) spans.push_back({s.start, s.end});
    rec["spans"] = std::move(spans);
    rec["evidence"] = d.evidence;
    out << rec.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << '\n';
    if (!out) throw IoError("write failure while writing detection report");
}

void write_report(std::ostream& out, std::span<const Detection> report) {
    std::vector<const Detection*> sorted;
    sorted.reserve(report.size());
    for (const auto& d : report) sorted.push_back(&d);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Detection* a, const Detection* b) { return report_order(*a, *b); });
    for (const auto* d : sorted) write_detection(out, *d);
    out.flush();
    if (!out) throw IoError("write failure while writing detection report");
}

std::vector<Detection> read_report(std::istream& in) {
    std::vector<Detection> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            auto rec = nlohmann::json::parse(line);
            Detection d;
            d.pair_id = rec.at("pair_id").get<PairId>();
            auto name = rec.at("detector").get<std::string>();
            auto kind = parse_detector(name);
            if (!kind) throw IoError("unknown detector '" + name + "'");
            d.detector = *kind;
            for (const auto& span : rec.at("spans")) {
                d.source_spans.push_back(TokenSpan{span.at(0).get<std::size_t>(), span.at(1).get<std::size_t>(), {}});
            }
            d.evidence = rec.at("evidence").get<std::string>();
            out.push_back(std::move(d));
        } catch (const nlohmann::json::exception& e) {
            throw IoError("malformed report record at line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

} // namespace tailcheck
