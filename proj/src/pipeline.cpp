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

#include "tailcheck/pipeline.hpp"

#include "tailcheck/error.hpp"
#include "tailcheck/text.hpp"
#include "tailcheck/token_detector.hpp"

#include <algorithm>
#include <exception>
#include <ostream>
#include <thread>

namespace tailcheck {

namespace {

constexpr std::size_t kChunkSize = 8192;
constexpr std::size_t kKeptAlignmentErrors = 10;

bool is_supported(const LanguagePair& lp) {
    auto supported = supported_language_pairs();
    return std::find(supported.begin(), supported.end(), lp) != supported.end();
}

// Runs fn(begin, end) over n items split into contiguous slices, one thread
// per slice. The first exception thrown by any slice is rethrown.
template <typename Fn> void for_slices(std::size_t n, std::size_t slices, Fn fn) {
    slices = std::min(slices, n);
    if (slices <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errors(slices);
    {
        std::vector<std::jthread> workers;
        workers.reserve(slices);
        std::size_t per = (n + slices - 1) / slices;
        for (std::size_t s = 0; s < slices; ++s) {
            std::size_t begin = std::min(n, s * per), end = std::min(n, (s + 1) * per);
            workers.emplace_back([&, s, begin, end] {
                try {
                    fn(begin, end);
                } catch (...) {
                    errors[s] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace

DetectorSuite::DetectorSuite(const RunConfig& cfg, RunMode mode)
    : guards_(cfg.guards), numeric_(cfg.numeric()), hallucination_(cfg.hallucination) {
    cfg.validate(mode);
    for (auto d : cfg.enabled_detectors(mode)) enabled_[index_of(d)] = true;

    for (auto cat : kAllCategories) {
        if (!enabled(detector_for(cat))) continue;
        auto path = std::filesystem::path(cfg.tables_dir) / (std::string(to_string(cat)) + ".tsv");
        if (!cfg.tables_dir.empty() && std::filesystem::exists(path)) {
            auto t = load_table(path, cfg.languages);
            if (t.category() != cat) {
                throw ConfigError(path.string() + ": file holds '" + std::string(to_string(t.category())) +
                                  "' entries");
            }
            tables_.push_back(std::move(t));
        } else if (is_supported(cfg.languages)) {
            tables_.push_back(builtin_table(cfg.languages, cat));
        } else {
            throw ConfigError("no '" + std::string(to_string(cat)) + "' table for language pair '" +
                              cfg.languages.to_string() + "' in '" + cfg.tables_dir + "'");
        }
    }

    if (enabled(DetectorKind::Coverage)) {
        coverage_.stopwords = cfg.stopwords_path.empty()
                                  ? builtin_stopwords(cfg.languages.source)
                                  : std::make_shared<const StopwordSet>(load_stopwords(cfg.stopwords_path));
        coverage_.buckets = cfg.coverage_buckets;
        coverage_.validate();
    }
}

const TransformationTable* DetectorSuite::table(TableCategory c) const noexcept {
    for (const auto& t : tables_) {
        if (t.category() == c) return &t;
    }
    return nullptr;
}

std::vector<Detection> DetectorSuite::check(const SentencePair& pair, const AlignmentResult* alignment) const {
    std::vector<Detection> out;
    std::vector<TokenSpan> exempt;
    if (!tables_.empty()) {
        PreparedSource source(pair.source);
        auto folded_target = text::fold_case(pair.target);
        for (const auto& table : tables_) {
            if (table.category() == TableCategory::WebTerms) {
                auto urls = check_urls(pair);
                out.insert(out.end(), std::make_move_iterator(urls.begin()), std::make_move_iterator(urls.end()));
            }
            const auto& policy = guards_[static_cast<std::size_t>(table.category())];
            for (const auto& f : failed_triggers(source, folded_target, table, policy)) {
                out.push_back(make_trigger_detection(pair.id, table, f.match));
                if (f.numeric_anchor) {
                    const auto& tok = source.tokens()[*f.numeric_anchor];
                    exempt.push_back(TokenSpan::of(pair.source, tok.start, tok.end));
                }
            }
        }
    }
    if (enabled(DetectorKind::NumericalValues)) {
        auto nums = check_pair_numeric(pair, numeric_, exempt);
        out.insert(out.end(), std::make_move_iterator(nums.begin()), std::make_move_iterator(nums.end()));
    }
    if (enabled(DetectorKind::Coverage) && alignment && alignment->links) {
        if (auto d = coverage_check(pair, *alignment->links, coverage_)) out.push_back(std::move(*d));
    }
    if (enabled(DetectorKind::HallucinationOscillatory)) {
        if (auto d = oscillatory_check(pair, hallucination_)) out.push_back(std::move(*d));
    }
    std::stable_sort(out.begin(), out.end(), report_order);
    return out;
}

std::unique_ptr<AlignmentProvider> make_alignment_provider(const RunConfig& cfg) {
    switch (cfg.alignment) {
    case AlignmentSource::None: return nullptr;
    case AlignmentSource::File: return std::make_unique<FileProvider>(cfg.alignment_file);
    case AlignmentSource::Diagonal: return std::make_unique<DiagonalProvider>();
    case AlignmentSource::Sidecar: return std::make_unique<SidecarProvider>(cfg.sidecar);
    }
    return nullptr;
}

std::vector<Detection> detect_corpus(const RunConfig& cfg, RunMode mode, BitextReader& reader,
                                     RunSummary* summary) {
    DetectorSuite suite(cfg, mode);
    auto provider = suite.needs_alignment() ? make_alignment_provider(cfg) : nullptr;
    bool natural = suite.enabled(DetectorKind::HallucinationNatural);

    NaturalHallucinationIndex index;
    RunSummary local;
    std::vector<Detection> report;
    std::vector<SentencePair> chunk;
    std::size_t total = 0;

    while (true) {
        chunk.clear();
        while (chunk.size() < kChunkSize) {
            auto p = reader.next();
            if (!p) break;
            chunk.push_back(std::move(*p));
        }
        if (chunk.empty()) break;
        total += chunk.size();

        std::vector<AlignmentResult> aligned;
        if (provider) {
            aligned = provider->align_batch(chunk);
            if (aligned.size() != chunk.size()) throw InvariantError("alignment provider returned a wrong result count");
            for (const auto& a : aligned) {
                if (a.links) continue;
                ++local.alignment_unavailable;
                if (local.alignment_errors.size() < kKeptAlignmentErrors) local.alignment_errors.push_back(a.error);
            }
        }

        std::vector<std::vector<Detection>> per_pair(chunk.size());
        std::vector<std::string> normalized(natural ? chunk.size() : 0);
        std::vector<std::size_t> lengths(natural ? chunk.size() : 0);
        for_slices(chunk.size(), cfg.shards, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                per_pair[i] = suite.check(chunk[i], provider ? &aligned[i] : nullptr);
                if (natural) {
                    normalized[i] = text::normalize_whitespace(chunk[i].target);
                    lengths[i] = text::count_tokens(chunk[i].source);
                }
            }
        });
        for (std::size_t i = 0; i < chunk.size(); ++i) {
            for (auto& d : per_pair[i]) report.push_back(std::move(d));
            if (natural) index.add_normalized(chunk[i].id, std::move(normalized[i]), lengths[i]);
        }
    }

    if (natural) {
        auto found = index.finish(suite.hallucination());
        report.insert(report.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
    }
    std::stable_sort(report.begin(), report.end(), report_order);

    if (summary) {
        local.stats = compute_stats(report, total);
        local.malformed_lines = reader.malformed();
        *summary = std::move(local);
    }
    return report;
}

RunSummary run_detect(const RunConfig& cfg, BitextReader& reader, std::ostream& out) {
    RunSummary summary;
    auto report = detect_corpus(cfg, RunMode::Detect, reader, &summary);
    write_report(out, report);
    return summary;
}

FilterSummary run_filter(const RunConfig& cfg, const ReaderFactory& open_input, std::ostream& clean,
                         std::ostream& removed, std::ostream* report_out) {
    FilterSummary summary;
    std::vector<PairId> flagged;
    {
        auto reader = open_input();
        auto report = detect_corpus(cfg, RunMode::Filter, reader, &summary.run);
        if (report_out) write_report(*report_out, report);
        for (const auto& d : report) flagged.push_back(d.pair_id);
    }
    std::sort(flagged.begin(), flagged.end());
    flagged.erase(std::unique(flagged.begin(), flagged.end()), flagged.end());

    auto reader = open_input();
    while (auto p = reader.next()) {
        if (std::binary_search(flagged.begin(), flagged.end(), p->id)) {
            write_bitext_line(removed, *p);
            ++summary.removed;
        } else {
            write_bitext_line(clean, *p);
            ++summary.kept;
        }
    }
    if (summary.removed != flagged.size()) {
        throw InvariantError("second pass over the input saw " + std::to_string(summary.removed) +
                             " flagged pairs, detection found " + std::to_string(flagged.size()));
    }
    return summary;
}

std::string_view to_string(StandardFilterReason r) noexcept {
    switch (r) {
    case StandardFilterReason::Keep: return "keep";
    case StandardFilterReason::Empty: return "empty";
    case StandardFilterReason::Ratio: return "ratio";
    case StandardFilterReason::ReverseRatio: return "reverse-ratio";
    case StandardFilterReason::Length: return "length";
    case StandardFilterReason::Language: return "language";
    }
    return "keep";
}

StandardFilterReason standard_filter(const SentencePair& pair, const StandardFilterOptions& options) {
    auto src = static_cast<double>(text::count_tokens(pair.source));
    auto tgt = static_cast<double>(text::count_tokens(pair.target));
    if (src == 0 || tgt == 0) return StandardFilterReason::Empty;
    if (tgt / src > options.max_ratio) return StandardFilterReason::Ratio;
    if (src / tgt > options.max_ratio) return StandardFilterReason::ReverseRatio;
    auto max_words = static_cast<double>(options.max_words);
    if (src > max_words || tgt > max_words) return StandardFilterReason::Length;
    if (options.language_ok && !options.language_ok(pair)) return StandardFilterReason::Language;
    return StandardFilterReason::Keep;
}

} // namespace tailcheck
