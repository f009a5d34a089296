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
#include "tailcheck/corpus.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tailcheck {

using StopwordSet = std::unordered_set<std::string>;

// One lowercase token per line, '#' comments.
StopwordSet parse_stopwords(std::istream& in);
StopwordSet load_stopwords(const std::filesystem::path& path);
// Bundled lists exist for "en".
std::shared_ptr<const StopwordSet> builtin_stopwords(std::string_view language);

struct CoverageBucket {
    // Sources with fewer tokens than this fall in the bucket.
    std::size_t max_len_exclusive = std::numeric_limits<std::size_t>::max();
    std::size_t max_unaligned = 0;

    bool operator==(const CoverageBucket&) const = default;
};

struct CoverageConfig {
    std::shared_ptr<const StopwordSet> stopwords;
    std::vector<CoverageBucket> buckets = default_buckets();

    static std::vector<CoverageBucket> default_buckets();

    // Throws ConfigError unless buckets strictly increase in both fields and
    // end with a catch-all.
    void validate() const;

    std::size_t threshold_for(std::size_t source_tokens) const;
};

// "50:10,100:20,200:30,*:40"
std::vector<CoverageBucket> parse_buckets(std::string_view text);
std::string format_buckets(const std::vector<CoverageBucket>& buckets);

struct HallucinationConfig {
    std::size_t oscillatory_margin = 4;
    std::size_t oscillatory_floor = 10;
    std::size_t natural_min_sources = 5;

    void validate() const;
};

// Content tokens (not stopwords, not punctuation-only) with no link; flags
// when their count strictly exceeds the bucket threshold.
std::optional<Detection> coverage_check(const SentencePair& pair, const AlignmentLinks& links,
                                        const CoverageConfig& cfg);

// Flags when the most frequent target bigram beats the most frequent source
// bigram by at least the margin and exceeds the floor.
std::optional<Detection> oscillatory_check(const SentencePair& pair, const HallucinationConfig& cfg);

// Groups pairs by whitespace-normalized target and flags every member of a
// group whose sources have enough distinct token lengths. Pairs may be added
// in any order.
class NaturalHallucinationIndex {
  public:
    void add(PairId id, std::string_view target, std::size_t source_tokens);
    // Same, for a target already passed through text::normalize_whitespace.
    void add_normalized(PairId id, std::string normalized_target, std::size_t source_tokens);

    // Detections sorted by pair id. Spans are left empty.
    std::vector<Detection> finish(const HallucinationConfig& cfg) const;

    std::size_t size() const noexcept { return size_; }

  private:
    struct Member {
        PairId id;
        std::size_t source_tokens;
    };
    std::unordered_map<std::string, std::vector<Member>> groups_;
    std::size_t size_ = 0;
};

std::vector<Detection> natural_hallucination_scan(std::span<const SentencePair> corpus, const HallucinationConfig& cfg);

} // namespace tailcheck
