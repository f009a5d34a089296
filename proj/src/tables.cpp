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

#include "tailcheck/tables.hpp"

#include "embedded.hpp"
#include "tailcheck/error.hpp"
#include "tailcheck/text.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

namespace tailcheck {

namespace {

constexpr std::array<std::string_view, 4> kCategoryNames = {
    "physical-units",
    "currencies",
    "large-numbers",
    "web-terms",
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && text::is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && text::is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

bool has_whitespace(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return text::is_space(c); });
}

} // namespace

std::string_view to_string(TableCategory c) noexcept { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<TableCategory> parse_category(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
        if (kCategoryNames[i] == name) return kAllCategories[i];
    }
    return std::nullopt;
}

DetectorKind detector_for(TableCategory c) noexcept {
    switch (c) {
    case TableCategory::PhysicalUnits: return DetectorKind::PhysicalUnits;
    case TableCategory::Currencies: return DetectorKind::Currencies;
    case TableCategory::LargeNumbers: return DetectorKind::LargeNumbers;
    case TableCategory::WebTerms: return DetectorKind::WebTerms;
    }
    return DetectorKind::PhysicalUnits;
}

std::optional<LanguagePair> LanguagePair::parse(std::string_view s) {
    auto dash = s.find('-');
    if (dash == std::string_view::npos || dash == 0 || dash + 1 == s.size()) return std::nullopt;
    if (s.find('-', dash + 1) != std::string_view::npos) return std::nullopt;
    return LanguagePair{std::string(s.substr(0, dash)), std::string(s.substr(dash + 1))};
}

TransformationTable::TransformationTable(LanguagePair languages, TableCategory category,
                                         std::vector<TransformationEntry> entries)
    : languages_(std::move(languages)), category_(category), entries_(std::move(entries)) {
    folded_targets_.reserve(entries_.size());
    sorted_triggers_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        auto& e = entries_[i];
        e.trigger = text::fold_case(e.trigger);
        if (e.trigger.empty() || has_whitespace(e.trigger)) {
            throw ConfigError("invalid trigger '" + e.trigger + "': must be nonempty without whitespace");
        }
        if (e.targets.empty()) throw ConfigError("trigger '" + e.trigger + "' has no target forms");
        for (const auto& t : e.targets) {
            if (t.empty()) throw ConfigError("trigger '" + e.trigger + "' has an empty target form");
        }
        if (e.type_tag.empty()) throw ConfigError("trigger '" + e.trigger + "' has no type tag");
        if (e.category != category_) {
            throw ConfigError("trigger '" + e.trigger + "' has category '" + std::string(to_string(e.category)) +
                              "' in a '" + std::string(to_string(category_)) + "' table");
        }
        if (e.canonical >= e.targets.size()) {
            throw ConfigError("trigger '" + e.trigger + "' has an out-of-range canonical target");
        }
        std::vector<std::string> folded;
        folded.reserve(e.targets.size());
        for (const auto& t : e.targets) folded.push_back(text::fold_case(t));
        folded_targets_.push_back(std::move(folded));
        sorted_triggers_.emplace_back(e.trigger, i);
    }
    std::sort(sorted_triggers_.begin(), sorted_triggers_.end());
    for (std::size_t i = 1; i < sorted_triggers_.size(); ++i) {
        if (sorted_triggers_[i].first == sorted_triggers_[i - 1].first) {
            throw ConfigError("duplicate trigger '" + sorted_triggers_[i].first + "'");
        }
    }
}

std::optional<std::size_t> TransformationTable::find(std::string_view folded_trigger) const noexcept {
    auto it = std::lower_bound(sorted_triggers_.begin(), sorted_triggers_.end(), folded_trigger,
                               [](const auto& entry, std::string_view key) { return entry.first < key; });
    if (it == sorted_triggers_.end() || it->first != folded_trigger) return std::nullopt;
    return it->second;
}

TransformationTable parse_table(std::istream& in, std::string_view origin, const LanguagePair& languages) {
    std::vector<TransformationEntry> entries;
    std::map<std::string, std::size_t> first_seen; // folded trigger -> line
    std::optional<TableCategory> table_category;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) -> ConfigError {
        return ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;

        auto cols = split(line, '\t');
        if (cols.size() < 4 || cols.size() > 5) {
            throw fail("expected 4 or 5 tab-separated columns, found " + std::to_string(cols.size()));
        }
        TransformationEntry e;
        e.trigger = text::fold_case(trim(cols[0]));
        if (e.trigger.empty() || has_whitespace(e.trigger)) throw fail("trigger must be nonempty without whitespace");

        auto targets_col = trim(cols[1]);
        if (targets_col.find('|') != std::string_view::npos) throw fail("target list must not contain '|'");
        if (!targets_col.empty()) {
            for (auto t : split(targets_col, ',')) {
                auto form = trim(t);
                if (form.empty()) throw fail("empty target form for trigger '" + e.trigger + "'");
                e.targets.emplace_back(form);
            }
        }
        if (e.targets.empty()) throw fail("empty targets list for trigger '" + e.trigger + "'");

        e.type_tag = std::string(trim(cols[2]));
        if (e.type_tag.empty()) throw fail("missing type tag for trigger '" + e.trigger + "'");

        auto cat_name = trim(cols[3]);
        auto cat = parse_category(cat_name);
        if (!cat) throw fail("unknown category '" + std::string(cat_name) + "'");
        if (table_category && *table_category != *cat) {
            throw fail("category '" + std::string(cat_name) + "' differs from table category '" +
                       std::string(to_string(*table_category)) + "'");
        }
        table_category = cat;
        e.category = *cat;

        if (cols.size() == 5 && !trim(cols[4]).empty()) {
            auto canon = trim(cols[4]);
            auto it = std::find(e.targets.begin(), e.targets.end(), canon);
            if (it == e.targets.end()) {
                throw fail("canonical target '" + std::string(canon) + "' is not among the target forms");
            }
            e.canonical = static_cast<std::size_t>(it - e.targets.begin());
        }

        auto [it, inserted] = first_seen.emplace(e.trigger, lineno);
        if (!inserted) {
            throw fail("duplicate trigger '" + e.trigger + "' (first defined on line " + std::to_string(it->second) +
                       ", repeated on line " + std::to_string(lineno) + ")");
        }
        entries.push_back(std::move(e));
    }
    if (in.bad()) throw IoError("read error in table " + std::string(origin));
    if (!table_category) throw ConfigError(std::string(origin) + ": table has no entries");
    return TransformationTable(languages, *table_category, std::move(entries));
}

TransformationTable load_table(const std::filesystem::path& path, const LanguagePair& languages) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open table '" + path.string() + "'");
    return parse_table(in, path.string(), languages);
}

void write_table(std::ostream& out, const TransformationTable& table) {
    out << "# " << to_string(table.category()) << " " << table.languages().to_string() << '\n';
    for (const auto& e : table.entries()) {
        out << e.trigger << '\t';
        for (std::size_t i = 0; i < e.targets.size(); ++i) {
            if (i) out << ", ";
            out << e.targets[i];
        }
        out << '\t' << e.type_tag << '\t' << to_string(e.category);
        if (e.canonical != 0) out << '\t' << e.canonical_target();
        out << '\n';
    }
    if (!out) throw IoError("write failure while writing table");
}

std::vector<TransformationTable> load_table_dir(const std::filesystem::path& dir, const LanguagePair& languages) {
    std::vector<TransformationTable> out;
    for (auto cat : kAllCategories) {
        auto path = dir / (std::string(to_string(cat)) + ".tsv");
        if (!std::filesystem::exists(path)) continue;
        auto table = load_table(path, languages);
        if (table.category() != cat) {
            throw ConfigError(path.string() + ": file holds '" + std::string(to_string(table.category())) +
                              "' entries");
        }
        out.push_back(std::move(table));
    }
    if (out.empty()) throw ConfigError("no table files found in '" + dir.string() + "'");
    return out;
}

std::vector<LanguagePair> supported_language_pairs() { return {LanguagePair{"en", "de"}}; }

std::vector<TransformationTable> builtin_tables(const LanguagePair& languages) {
    std::vector<TransformationTable> out;
    for (auto cat : kAllCategories) out.push_back(builtin_table(languages, cat));
    return out;
}

const TransformationTable& builtin_table(const LanguagePair& languages, TableCategory category) {
    static std::mutex mu;
    static std::map<std::pair<std::string, TableCategory>, TransformationTable> cache;

    auto supported = supported_language_pairs();
    if (std::find(supported.begin(), supported.end(), languages) == supported.end()) {
        std::string list;
        for (const auto& p : supported) list += (list.empty() ? "" : ", ") + p.to_string();
        throw ConfigError("no bundled tables for language pair '" + languages.to_string() + "' (supported: " + list +
                          ")");
    }

    std::lock_guard lock(mu);
    auto key = std::make_pair(languages.to_string(), category);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    auto name = "tables/" + languages.to_string() + "/" + std::string(to_string(category)) + ".tsv";
    auto content = detail::embedded_file(name);
    if (!content) throw InvariantError("bundled table '" + name + "' missing from build");
    std::istringstream in{std::string(*content)};
    auto [it, _] = cache.emplace(key, parse_table(in, name, languages));
    return it->second;
}

} // namespace tailcheck
