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
#include "tailcheck/numeric.hpp"
#include "tailcheck/sequence.hpp"
#include "tailcheck/tables.hpp"
#include "tailcheck/token_detector.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tailcheck {

enum class RunMode { Detect, Filter };

enum class AlignmentSource { None, File, Diagonal, Sidecar };

std::string_view to_string(AlignmentSource s) noexcept;

// Every field is addressable as a flat key (see set()).
struct RunConfig {
    // Unset means the mode default: token-level, numeric and oscillatory for
    // filter, plus natural hallucinations for detect.
    std::optional<std::vector<DetectorKind>> detectors;
    LanguagePair languages;
    std::string tables_dir; // empty: bundled tables
    std::array<GuardPolicy, 4> guards = {
        default_guard_policy(TableCategory::PhysicalUnits),
        default_guard_policy(TableCategory::Currencies),
        default_guard_policy(TableCategory::LargeNumbers),
        default_guard_policy(TableCategory::WebTerms),
    };
    // Locale marks; unset ones come from the language pair.
    std::optional<char> source_decimal;
    std::optional<char> source_group;
    std::optional<char> target_decimal;
    std::optional<char> target_group;
    std::string stopwords_path; // empty: bundled list of the source language
    std::vector<CoverageBucket> coverage_buckets = CoverageConfig::default_buckets();
    HallucinationConfig hallucination;
    AlignmentSource alignment = AlignmentSource::None;
    std::string alignment_file;
    SidecarOptions sidecar;
    std::size_t shards = 1;
    BitextFormat input_format = BitextFormat::Tsv;
    std::string report_path;
    std::string clean_path;
    std::string removed_path;
    std::string stats_path;

    // Applies one key=value setting; throws ConfigError on an unknown key or
    // a bad value.
    void set(std::string_view key, std::string_view value);

    // All settings as key=value pairs; applying them to a default config
    // reproduces this one.
    std::vector<std::pair<std::string, std::string>> entries() const;

    std::vector<DetectorKind> enabled_detectors(RunMode mode) const;
    bool enabled(DetectorKind d, RunMode mode) const;
    GuardPolicy& guard(TableCategory c) { return guards[static_cast<std::size_t>(c)]; }
    const GuardPolicy& guard(TableCategory c) const { return guards[static_cast<std::size_t>(c)]; }
    NumericConfig numeric() const;

    // Throws ConfigError on inconsistent settings, e.g. coverage without an
    // alignment provider.
    void validate(RunMode mode) const;
};

// "key = value" lines; '#' starts a comment line.
RunConfig parse_run_config(std::istream& in, std::string_view origin = "<config>");
RunConfig load_run_config(const std::filesystem::path& path);
void write_run_config(std::ostream& out, const RunConfig& cfg);

// "key=value" as given on the command line.
void apply_override(RunConfig& cfg, std::string_view assignment);

} // namespace tailcheck
