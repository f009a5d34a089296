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

#include "tailcheck/alignment.hpp"
#include "tailcheck/config.hpp"
#include "tailcheck/corpus.hpp"
#include "tailcheck/numeric.hpp"
#include "tailcheck/sequence.hpp"
#include "tailcheck/tables.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tailcheck {

// The enabled per-pair detectors of one run, built once and shared read-only
// by all shards.
class DetectorSuite {
  public:
    DetectorSuite(const RunConfig& cfg, RunMode mode);

    // Detections of every enabled detector except the natural-hallucination
    // scan, in report order. alignment may be null when coverage is off.
    std::vector<Detection> check(const SentencePair& pair, const AlignmentResult* alignment = nullptr) const;

    bool enabled(DetectorKind d) const noexcept { return enabled_[index_of(d)]; }
    bool needs_alignment() const noexcept { return enabled(DetectorKind::Coverage); }

    const TransformationTable* table(TableCategory c) const noexcept;
    const HallucinationConfig& hallucination() const noexcept { return hallucination_; }

  private:
    std::array<bool, kDetectorCount> enabled_{};
    std::vector<TransformationTable> tables_; // enabled categories, in category order
    std::array<GuardPolicy, 4> guards_;
    NumericConfig numeric_;
    CoverageConfig coverage_;
    HallucinationConfig hallucination_;
};

std::unique_ptr<AlignmentProvider> make_alignment_provider(const RunConfig& cfg);

struct RunSummary {
    CorpusStats stats;
    std::size_t malformed_lines = 0;
    std::size_t alignment_unavailable = 0;
    std::vector<std::string> alignment_errors; // first few, for diagnostics
};

// Applies every enabled detector to every pair. Per-pair detectors run on
// cfg.shards threads; the natural-hallucination scan runs as a final global
// phase. The report is in canonical order and independent of the shard count.
std::vector<Detection> detect_corpus(const RunConfig& cfg, RunMode mode, BitextReader& reader,
                                     RunSummary* summary = nullptr);

// detect_corpus followed by writing the report.
RunSummary run_detect(const RunConfig& cfg, BitextReader& reader, std::ostream& report);

using ReaderFactory = std::function<BitextReader()>;

struct FilterSummary {
    RunSummary run;
    std::size_t kept = 0;
    std::size_t removed = 0;
};

// Two passes over the input: detect, then split it into clean and removed
// streams, each preserving input order. Malformed lines go to neither.
FilterSummary run_filter(const RunConfig& cfg, const ReaderFactory& open_input, std::ostream& clean,
                         std::ostream& removed, std::ostream* report = nullptr);

struct StandardFilterOptions {
    double max_ratio = 1.3;
    std::size_t max_words = 150;
    std::function<bool(const SentencePair&)> language_ok; // unset: always true
};

enum class StandardFilterReason { Keep, Empty, Ratio, ReverseRatio, Length, Language };

std::string_view to_string(StandardFilterReason r) noexcept;

// Length-ratio, length and language checks, in that order; the first failed
// rule is the reason.
StandardFilterReason standard_filter(const SentencePair& pair, const StandardFilterOptions& options = {});

} // namespace tailcheck
