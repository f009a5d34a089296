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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tailcheck {

using PairId = std::uint64_t;

enum class DetectorKind : std::uint8_t {
    PhysicalUnits,
    Currencies,
    LargeNumbers,
    WebTerms,
    NumericalValues,
    Coverage,
    HallucinationOscillatory,
    HallucinationNatural,
};

inline constexpr std::size_t kDetectorCount = 8;

inline constexpr std::array<DetectorKind, kDetectorCount> kAllDetectors = {
    DetectorKind::PhysicalUnits,
    DetectorKind::Currencies,
    DetectorKind::LargeNumbers,
    DetectorKind::WebTerms,
    DetectorKind::NumericalValues,
    DetectorKind::Coverage,
    DetectorKind::HallucinationOscillatory,
    DetectorKind::HallucinationNatural,
};

std::string_view to_string(DetectorKind kind) noexcept;
std::optional<DetectorKind> parse_detector(std::string_view name) noexcept;

constexpr std::size_t index_of(DetectorKind kind) noexcept { return static_cast<std::size_t>(kind); }

constexpr bool is_token_level(DetectorKind kind) noexcept {
    return kind == DetectorKind::PhysicalUnits || kind == DetectorKind::Currencies ||
           kind == DetectorKind::LargeNumbers || kind == DetectorKind::WebTerms ||
           kind == DetectorKind::NumericalValues;
}

struct TokenSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string surface;

    // Builds a span over owner[start, end).
    static TokenSpan of(std::string_view owner, std::size_t start, std::size_t end);

    bool operator==(const TokenSpan&) const = default;
};

struct SentencePair {
    PairId id = 0;
    std::string source;
    std::string target;

    bool operator==(const SentencePair&) const = default;
};

struct Detection {
    PairId pair_id = 0;
    DetectorKind detector = DetectorKind::PhysicalUnits;
    std::vector<TokenSpan> source_spans;
    std::string evidence;

    bool operator==(const Detection&) const = default;
};

// Orders by pair id, then detector, then first span. Stable sorting with this
// predicate gives the canonical report order.
bool report_order(const Detection& a, const Detection& b) noexcept;

struct CorpusStats {
    // Flagged pairs per detector (a pair with two failed triggers counts once).
    std::array<std::size_t, kDetectorCount> flagged_pairs{};
    // Individual detections per detector.
    std::array<std::size_t, kDetectorCount> detections{};
    // Pairs flagged by either hallucination detector.
    std::size_t hallucination_pairs = 0;
    std::size_t total_processed = 0;
    std::size_t total_flagged = 0;

    double incidence_rate() const noexcept {
        return total_processed == 0 ? 0.0
                                    : static_cast<double>(total_flagged) / static_cast<double>(total_processed);
    }

    bool operator==(const CorpusStats&) const = default;
};

// Builds stats from a report in canonical order; total_processed is supplied
// because the report only lists flagged pairs.
CorpusStats compute_stats(std::span<const Detection> report, std::size_t total_processed);

// Plain-text table: one row per error class, hallucinations combined, then totals.
void render_stats(std::ostream& out, const CorpusStats& stats);

// Removes line-break and NUL characters (\n, \r, \0, U+0085, U+2028, U+2029).
std::string sanitize_line(std::string_view s);

enum class BitextFormat { Tsv, Parallel };

// Sequential reader over a TSV bitext or two line-aligned files. Pair ids are
// 0-based input line numbers, so a skipped malformed line leaves a gap.
class BitextReader {
  public:
    static BitextReader open_tsv(const std::filesystem::path& path);
    static BitextReader open_parallel(const std::filesystem::path& source, const std::filesystem::path& target);

    // Non-owning; the stream must outlive the reader.
    static BitextReader from_tsv_stream(std::istream& in);
    static BitextReader from_parallel_streams(std::istream& source, std::istream& target);

    BitextReader(BitextReader&&) noexcept;
    BitextReader& operator=(BitextReader&&) noexcept;
    ~BitextReader();

    // Throws IoError when parallel inputs have unequal line counts.
    std::optional<SentencePair> next();

    std::size_t malformed() const noexcept { return malformed_; }
    std::size_t lines_read() const noexcept { return line_; }

  private:
    BitextReader() = default;

    std::unique_ptr<std::ifstream> owned_a_;
    std::unique_ptr<std::ifstream> owned_b_;
    std::istream* a_ = nullptr;
    std::istream* b_ = nullptr;
    BitextFormat format_ = BitextFormat::Tsv;
    std::size_t line_ = 0;
    std::size_t malformed_ = 0;
    std::string buf_a_;
    std::string buf_b_;
};

// One "source\ttarget\n" line. Throws IoError when the sink has failed.
void write_bitext_line(std::ostream& out, const SentencePair& pair);

// Line-delimited JSON records: {"pair_id","detector","spans","evidence"}.
void write_detection(std::ostream& out, const Detection& d);
void write_report(std::ostream& out, std::span<const Detection> report);

// Parses report records. Spans carry offsets only (surface left empty).
std::vector<Detection> read_report(std::istream& in);

} // namespace tailcheck
