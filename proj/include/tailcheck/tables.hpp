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

#include "tailcheck/corpus.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tailcheck {

enum class TableCategory : std::uint8_t {
    PhysicalUnits,
    Currencies,
    LargeNumbers,
    WebTerms,
};

inline constexpr std::array<TableCategory, 4> kAllCategories = {
    TableCategory::PhysicalUnits,
    TableCategory::Currencies,
    TableCategory::LargeNumbers,
    TableCategory::WebTerms,
};

// Category names match the detector names they feed.
std::string_view to_string(TableCategory c) noexcept;
std::optional<TableCategory> parse_category(std::string_view name) noexcept;
DetectorKind detector_for(TableCategory c) noexcept;

struct LanguagePair {
    std::string source = "en";
    std::string target = "de";

    std::string to_string() const { return source + "-" + target; }
    static std::optional<LanguagePair> parse(std::string_view s);

    bool operator==(const LanguagePair&) const = default;
};

struct TransformationEntry {
    std::string trigger;              // lowercase, no whitespace
    std::vector<std::string> targets; // as written in the table, in order
    std::string type_tag;
    TableCategory category = TableCategory::PhysicalUnits;
    std::size_t canonical = 0;        // index into targets used for substitution

    const std::string& canonical_target() const { return targets[canonical]; }

    bool operator==(const TransformationEntry&) const = default;
};

// Validated, immutable table. Trigger lookup is case-insensitive.
class TransformationTable {
  public:
    // Throws ConfigError if any entry or the table as a whole is invalid.
    TransformationTable(LanguagePair languages, TableCategory category, std::vector<TransformationEntry> entries);

    const LanguagePair& languages() const noexcept { return languages_; }
    TableCategory category() const noexcept { return category_; }
    const std::vector<TransformationEntry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    // Case-folded target forms of entry i, parallel to entries()[i].targets.
    const std::vector<std::string>& folded_targets(std::size_t i) const { return folded_targets_[i]; }

    // Exact lookup of an already case-folded trigger; returns the entry index.
    std::optional<std::size_t> find(std::string_view folded_trigger) const noexcept;

    std::size_t index_of(const TransformationEntry& e) const noexcept {
        return static_cast<std::size_t>(&e - entries_.data());
    }

    bool operator==(const TransformationTable& o) const {
        return languages_ == o.languages_ && category_ == o.category_ && entries_ == o.entries_;
    }

  private:
    LanguagePair languages_;
    TableCategory category_;
    std::vector<TransformationEntry> entries_;
    std::vector<std::vector<std::string>> folded_targets_;
    std::vector<std::pair<std::string, std::size_t>> sorted_triggers_;
};

// Table files are TSV: trigger, comma-separated targets, type tag, category and
// an optional fifth column naming the canonical target. '#' starts a comment.
TransformationTable parse_table(std::istream& in, std::string_view origin, const LanguagePair& languages = {});
TransformationTable load_table(const std::filesystem::path& path, const LanguagePair& languages = {});
void write_table(std::ostream& out, const TransformationTable& table);

// Loads <dir>/<category>.tsv for every category present in the directory.
std::vector<TransformationTable> load_table_dir(const std::filesystem::path& dir, const LanguagePair& languages);

std::vector<LanguagePair> supported_language_pairs();

// Physical units, currencies, large numbers and web terms, in that order.
// Throws ConfigError for pairs without bundled tables.
std::vector<TransformationTable> builtin_tables(const LanguagePair& languages);

// The bundled table of one category.
const TransformationTable& builtin_table(const LanguagePair& languages, TableCategory category);

} // namespace tailcheck
