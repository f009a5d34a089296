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

#include "tailcheck/config.hpp"

#include "tailcheck/error.hpp"
#include "tailcheck/text.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>

namespace tailcheck {

namespace {

constexpr std::size_t kMaxShards = 1024;

std::string_view trim(std::string_view s) {
    while (!s.empty() && text::is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && text::is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::size_t parse_count(std::string_view key, std::string_view value, std::size_t min) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size() || v < min) {
        throw ConfigError("'" + std::string(key) + "' needs an integer >= " + std::to_string(min) + ", got '" +
                          std::string(value) + "'");
    }
    return v;
}

char parse_mark(std::string_view key, std::string_view value) {
    if (value.size() != 1 || text::is_space(value[0]) || text::is_digit(value[0])) {
        throw ConfigError("'" + std::string(key) + "' needs a single non-digit character, got '" +
                          std::string(value) + "'");
    }
    return value[0];
}

GuardMode parse_guard(std::string_view key, std::string_view value) {
    auto m = parse_guard_mode(value);
    if (!m) {
        throw ConfigError("'" + std::string(key) + "' must be none, numeric-antecedent or numeric-adjacent, got '" +
                          std::string(value) + "'");
    }
    return *m;
}

std::vector<DetectorKind> parse_detector_list(std::string_view value) {
    if (value == "all") return {kAllDetectors.begin(), kAllDetectors.end()};
    std::vector<DetectorKind> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        auto comma = value.find(',', start);
        auto name = trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!name.empty()) {
            auto d = parse_detector(name);
            if (!d) throw ConfigError("unknown detector '" + std::string(name) + "'");
            if (std::find(out.begin(), out.end(), *d) == out.end()) out.push_back(*d);
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string mark_text(const std::optional<char>& c) { return c ? std::string(1, *c) : std::string(); }

} // namespace

std::string_view to_string(AlignmentSource s) noexcept {
    switch (s) {
    case AlignmentSource::None: return "none";
    case AlignmentSource::File: return "file";
    case AlignmentSource::Diagonal: return "diagonal";
    case AlignmentSource::Sidecar: return "sidecar";
    }
    return "none";
}

void RunConfig::set(std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "detectors") {
        if (value == "default" || value.empty()) {
            detectors.reset();
        } else {
            detectors = parse_detector_list(value);
        }
    } else if (key == "language_pair") {
        auto lp = LanguagePair::parse(value);
        if (!lp) throw ConfigError("'language_pair' must look like en-de, got '" + std::string(value) + "'");
        languages = *lp;
    } else if (key == "tables.dir") {
        tables_dir = value;
    } else if (key.starts_with("guard.")) {
        auto rest = key.substr(6);
        bool symbols = rest.ends_with(".symbols");
        if (symbols) rest.remove_suffix(8);
        auto cat = parse_category(rest);
        if (!cat) throw ConfigError("unknown configuration key '" + std::string(key) + "'");
        auto mode = parse_guard(key, value);
        (symbols ? guard(*cat).symbol_mode : guard(*cat).mode) = mode;
    } else if (key == "locale.source.decimal") {
        source_decimal = value.empty() ? std::nullopt : std::optional(parse_mark(key, value));
    } else if (key == "locale.source.group") {
        source_group = value.empty() ? std::nullopt : std::optional(parse_mark(key, value));
    } else if (key == "locale.target.decimal") {
        target_decimal = value.empty() ? std::nullopt : std::optional(parse_mark(key, value));
    } else if (key == "locale.target.group") {
        target_group = value.empty() ? std::nullopt : std::optional(parse_mark(key, value));
    } else if (key == "coverage.stopwords") {
        stopwords_path = value;
    } else if (key == "coverage.buckets") {
        coverage_buckets = parse_buckets(value);
    } else if (key == "hallucination.oscillatory_margin") {
        hallucination.oscillatory_margin = parse_count(key, value, 1);
    } else if (key == "hallucination.oscillatory_floor") {
        hallucination.oscillatory_floor = parse_count(key, value, 1);
    } else if (key == "hallucination.natural_min_sources") {
        hallucination.natural_min_sources = parse_count(key, value, 1);
    } else if (key == "alignment.provider") {
        if (value == "none") {
            alignment = AlignmentSource::None;
        } else if (value == "file") {
            alignment = AlignmentSource::File;
        } else if (value == "diagonal") {
            alignment = AlignmentSource::Diagonal;
        } else if (value == "sidecar") {
            alignment = AlignmentSource::Sidecar;
        } else {
            throw ConfigError("'alignment.provider' must be none, file, diagonal or sidecar, got '" +
                              std::string(value) + "'");
        }
    } else if (key == "alignment.file") {
        alignment_file = value;
    } else if (key == "alignment.sidecar.command") {
        sidecar.command = value;
    } else if (key == "alignment.sidecar.socket") {
        sidecar.socket = value;
    } else if (key == "alignment.sidecar.timeout_ms") {
        sidecar.timeout = std::chrono::milliseconds(parse_count(key, value, 1));
    } else if (key == "alignment.sidecar.connections") {
        sidecar.connections = parse_count(key, value, 1);
    } else if (key == "shards") {
        shards = parse_count(key, value, 1);
        if (shards > kMaxShards) throw ConfigError("'shards' must be at most " + std::to_string(kMaxShards));
    } else if (key == "input.format") {
        if (value == "tsv") {
            input_format = BitextFormat::Tsv;
        } else if (value == "parallel") {
            input_format = BitextFormat::Parallel;
        } else {
            throw ConfigError("'input.format' must be tsv or parallel, got '" + std::string(value) + "'");
        }
    } else if (key == "output.report") {
        report_path = value;
    } else if (key == "output.clean") {
        clean_path = value;
    } else if (key == "output.removed") {
        removed_path = value;
    } else if (key == "output.stats") {
        stats_path = value;
    } else {
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    }
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
    std::vector<std::pair<std::string, std::string>> out;
    std::string det = "default";
    if (detectors) {
        det.clear();
        for (auto d : *detectors) det += (det.empty() ? "" : ",") + std::string(to_string(d));
    }
    out.emplace_back("detectors", det);
    out.emplace_back("language_pair", languages.to_string());
    out.emplace_back("tables.dir", tables_dir);
    for (auto c : kAllCategories) {
        auto name = "guard." + std::string(to_string(c));
        out.emplace_back(name, std::string(to_string(guard(c).mode)));
        out.emplace_back(name + ".symbols", std::string(to_string(guard(c).symbol_mode)));
    }
    out.emplace_back("locale.source.decimal", mark_text(source_decimal));
    out.emplace_back("locale.source.group", mark_text(source_group));
    out.emplace_back("locale.target.decimal", mark_text(target_decimal));
    out.emplace_back("locale.target.group", mark_text(target_group));
    out.emplace_back("coverage.stopwords", stopwords_path);
    out.emplace_back("coverage.buckets", format_buckets(coverage_buckets));
    out.emplace_back("hallucination.oscillatory_margin", std::to_string(hallucination.oscillatory_margin));
    out.emplace_back("hallucination.oscillatory_floor", std::to_string(hallucination.oscillatory_floor));
    out.emplace_back("hallucination.natural_min_sources", std::to_string(hallucination.natural_min_sources));
    out.emplace_back("alignment.provider", std::string(to_string(alignment)));
    out.emplace_back("alignment.file", alignment_file);
    out.emplace_back("alignment.sidecar.command", sidecar.command);
    out.emplace_back("alignment.sidecar.socket", sidecar.socket);
    out.emplace_back("alignment.sidecar.timeout_ms", std::to_string(sidecar.timeout.count()));
    out.emplace_back("alignment.sidecar.connections", std::to_string(sidecar.connections));
    out.emplace_back("shards", std::to_string(shards));
    out.emplace_back("input.format", input_format == BitextFormat::Tsv ? "tsv" : "parallel");
    out.emplace_back("output.report", report_path);
    out.emplace_back("output.clean", clean_path);
    out.emplace_back("output.removed", removed_path);
    out.emplace_back("output.stats", stats_path);
    return out;
}

std::vector<DetectorKind> RunConfig::enabled_detectors(RunMode mode) const {
    if (detectors) return *detectors;
    std::vector<DetectorKind> out = {DetectorKind::PhysicalUnits, DetectorKind::Currencies,
                                     DetectorKind::LargeNumbers,  DetectorKind::WebTerms,
                                     DetectorKind::NumericalValues, DetectorKind::HallucinationOscillatory};
    if (mode == RunMode::Detect) out.push_back(DetectorKind::HallucinationNatural);
    return out;
}

bool RunConfig::enabled(DetectorKind d, RunMode mode) const {
    auto list = enabled_detectors(mode);
    return std::find(list.begin(), list.end(), d) != list.end();
}

NumericConfig RunConfig::numeric() const {
    NumericConfig n;
    n.source_locale = LocaleConvention::for_language(languages.source);
    n.target_locale = LocaleConvention::for_language(languages.target);
    if (source_decimal) n.source_locale.decimal_mark = *source_decimal;
    if (source_group) n.source_locale.group_mark = *source_group;
    if (target_decimal) n.target_locale.decimal_mark = *target_decimal;
    if (target_group) n.target_locale.group_mark = *target_group;
    n.target_language = languages.target;
    return n;
}

void RunConfig::validate(RunMode mode) const {
    auto supported = supported_language_pairs();
    if (tables_dir.empty() && std::find(supported.begin(), supported.end(), languages) == supported.end()) {
        std::string list;
        for (const auto& p : supported) list += (list.empty() ? "" : ", ") + p.to_string();
        throw ConfigError("no bundled tables for language pair '" + languages.to_string() +
                          "' (supported: " + list + "); set tables.dir");
    }
    auto n = numeric();
    if (n.source_locale.decimal_mark == n.source_locale.group_mark ||
        n.target_locale.decimal_mark == n.target_locale.group_mark) {
        throw ConfigError("locale decimal and group marks must differ");
    }
    CoverageConfig{nullptr, coverage_buckets}.validate();
    hallucination.validate();
    if (shards == 0 || shards > kMaxShards) throw ConfigError("'shards' must be between 1 and 1024");

    if (enabled(DetectorKind::Coverage, mode) && alignment == AlignmentSource::None) {
        throw ConfigError("the coverage detector needs an alignment provider (set alignment.provider)");
    }
    if (alignment == AlignmentSource::File && alignment_file.empty()) {
        throw ConfigError("alignment.provider=file needs alignment.file");
    }
    if (alignment == AlignmentSource::Sidecar && sidecar.command.empty() == sidecar.socket.empty()) {
        throw ConfigError("alignment.provider=sidecar needs exactly one of alignment.sidecar.command and "
                          "alignment.sidecar.socket");
    }
}

RunConfig parse_run_config(std::istream& in, std::string_view origin) {
    RunConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": expected key = value");
        }
        try {
            cfg.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (in.bad()) throw IoError("read error in " + std::string(origin));
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open configuration file '" + path.string() + "'");
    return parse_run_config(in, path.string());
}

void write_run_config(std::ostream& out, const RunConfig& cfg) {
    for (const auto& [k, v] : cfg.entries()) out << k << " = " << v << '\n';
    if (!out) throw IoError("write failure while writing configuration");
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(assignment) + "' must look like key=value");
    }
    cfg.set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

} // namespace tailcheck
