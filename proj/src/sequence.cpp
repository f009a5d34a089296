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

#include "tailcheck/sequence.hpp"

#include "embedded.hpp"
#include "tailcheck/error.hpp"
#include "tailcheck/text.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace tailcheck {

namespace {

constexpr std::size_t kMaxListedIds = 50;

std::optional<std::size_t> parse_size(std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

// Highest multiplicity of any adjacent token pair.
std::pair<std::size_t, std::pair<std::string_view, std::string_view>>
max_bigram(const std::vector<text::TokenView>& tokens) {
    if (tokens.size() < 2) return {0, {}};
    std::vector<std::pair<std::string_view, std::string_view>> bigrams;
    bigrams.reserve(tokens.size() - 1);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) bigrams.emplace_back(tokens[i].view, tokens[i + 1].view);
    std::sort(bigrams.begin(), bigrams.end());
    std::size_t best = 0;
    std::pair<std::string_view, std::string_view> which;
    for (std::size_t i = 0; i < bigrams.size();) {
        std::size_t j = i;
        while (j < bigrams.size() && bigrams[j] == bigrams[i]) ++j;
        if (j - i > best) {
            best = j - i;
            which = bigrams[i];
        }
        i = j;
    }
    return {best, which};
}

std::optional<TokenSpan> whole_span(std::string_view s) {
    auto tokens = text::whitespace_tokens(s);
    if (tokens.empty()) return std::nullopt;
    return TokenSpan::of(s, tokens.front().start, tokens.back().end);
}

} // namespace

StopwordSet parse_stopwords(std::istream& in) {
    StopwordSet out;
    std::string line;
    while (std::getline(in, line)) {
        auto tokens = text::whitespace_tokens(line);
        if (tokens.empty() || tokens.front().view.front() == '#') continue;
        out.insert(text::fold_case(tokens.front().view));
    }
    return out;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open stopword file '" + path.string() + "'");
    return parse_stopwords(in);
}

std::shared_ptr<const StopwordSet> builtin_stopwords(std::string_view language) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const StopwordSet>, std::less<>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(language); it != cache.end()) return it->second;
    auto content = detail::embedded_file("data/stopwords/" + std::string(language) + ".txt");
    if (!content) throw ConfigError("no bundled stopword list for language '" + std::string(language) + "'");
    std::istringstream in{std::string(*content)};
    auto set = std::make_shared<const StopwordSet>(parse_stopwords(in));
    cache.emplace(std::string(language), set);
    return set;
}

std::vector<CoverageBucket> CoverageConfig::default_buckets() {
    return {{50, 10}, {100, 20}, {200, 30}, {std::numeric_limits<std::size_t>::max(), 40}};
}

void CoverageConfig::validate() const {
    if (buckets.empty()) throw ConfigError("coverage needs at least one threshold bucket");
    for (std::size_t i = 1; i < buckets.size(); ++i) {
        if (buckets[i].max_len_exclusive <= buckets[i - 1].max_len_exclusive ||
            buckets[i].max_unaligned <= buckets[i - 1].max_unaligned) {
            throw ConfigError("coverage buckets must strictly increase: " + format_buckets(buckets));
        }
    }
    if (buckets.back().max_len_exclusive != std::numeric_limits<std::size_t>::max()) {
        throw ConfigError("coverage buckets must end with a catch-all '*' bucket");
    }
}

std::size_t CoverageConfig::threshold_for(std::size_t source_tokens) const {
    for (const auto& b : buckets) {
        if (source_tokens < b.max_len_exclusive) return b.max_unaligned;
    }
    return buckets.empty() ? 0 : buckets.back().max_unaligned;
}

std::vector<CoverageBucket> parse_buckets(std::string_view text) {
    std::vector<CoverageBucket> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        auto colon = item.find(':');
        if (colon == std::string_view::npos) throw ConfigError("bad coverage bucket '" + std::string(item) + "'");
        CoverageBucket b;
        auto len = item.substr(0, colon);
        if (len != "*") {
            auto v = parse_size(len);
            if (!v) throw ConfigError("bad coverage bucket length '" + std::string(len) + "'");
            b.max_len_exclusive = *v;
        }
        auto thr = parse_size(item.substr(colon + 1));
        if (!thr) throw ConfigError("bad coverage bucket threshold in '" + std::string(item) + "'");
        b.max_unaligned = *thr;
        out.push_back(b);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    CoverageConfig check;
    check.buckets = out;
    check.validate();
    return out;
}

std::string format_buckets(const std::vector<CoverageBucket>& buckets) {
    std::string out;
    for (const auto& b : buckets) {
        if (!out.empty()) out += ',';
        out += b.max_len_exclusive == std::numeric_limits<std::size_t>::max() ? std::string("*")
                                                                              : std::to_string(b.max_len_exclusive);
        out += ':' + std::to_string(b.max_unaligned);
    }
    return out;
}

void HallucinationConfig::validate() const {
    if (oscillatory_margin == 0 || oscillatory_floor == 0 || natural_min_sources == 0) {
        throw ConfigError("hallucination thresholds must be positive");
    }
}

std::optional<Detection> coverage_check(const SentencePair& pair, const AlignmentLinks& links,
                                        const CoverageConfig& cfg) {
    auto tokens = text::whitespace_tokens(pair.source);
    if (links.src_len() != tokens.size()) {
        throw InvariantError("alignment for pair " + std::to_string(pair.id) + " covers " +
                             std::to_string(links.src_len()) + " source tokens, sentence has " +
                             std::to_string(tokens.size()));
    }
    auto aligned = links.aligned_sources();
    Detection d;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (aligned[i]) continue;
        const auto& tok = tokens[i];
        if (text::is_punctuation_token(tok.view)) continue;
        if (cfg.stopwords) {
            auto word = text::fold_case(text::trim_punctuation(tok.view));
            if (word.empty() || cfg.stopwords->contains(word)) continue;
        }
        d.source_spans.push_back(TokenSpan::of(pair.source, tok.start, tok.end));
    }
    auto threshold = cfg.threshold_for(tokens.size());
    if (d.source_spans.size() <= threshold) return std::nullopt;
    d.pair_id = pair.id;
    d.detector = DetectorKind::Coverage;
    d.evidence = std::to_string(d.source_spans.size()) + " unaligned content tokens exceed threshold " +
                 std::to_string(threshold) + " for a " + std::to_string(tokens.size()) + "-token source";
    return d;
}

std::optional<Detection> oscillatory_check(const SentencePair& pair, const HallucinationConfig& cfg) {
    auto tgt_tokens = text::whitespace_tokens(pair.target);
    // No bigram can repeat more often than there are bigrams.
    if (tgt_tokens.size() < 2 || tgt_tokens.size() - 1 <= cfg.oscillatory_floor) return std::nullopt;
    auto [tgt_max, bigram] = max_bigram(tgt_tokens);
    if (tgt_max <= cfg.oscillatory_floor) return std::nullopt;
    auto [src_max, _] = max_bigram(text::whitespace_tokens(pair.source));
    if (tgt_max < src_max + cfg.oscillatory_margin) return std::nullopt;

    Detection d;
    d.pair_id = pair.id;
    d.detector = DetectorKind::HallucinationOscillatory;
    if (auto span = whole_span(pair.source)) d.source_spans.push_back(std::move(*span));
    d.evidence = "bigram \"" + std::string(bigram.first) + " " + std::string(bigram.second) + "\" repeats " +
                 std::to_string(tgt_max) + " times in translation, most frequent source bigram " +
                 std::to_string(src_max) + " times";
    return d;
}

void NaturalHallucinationIndex::add(PairId id, std::string_view target, std::size_t source_tokens) {
    add_normalized(id, text::normalize_whitespace(target), source_tokens);
}

void NaturalHallucinationIndex::add_normalized(PairId id, std::string normalized_target, std::size_t source_tokens) {
    if (normalized_target.empty()) return;
    groups_[std::move(normalized_target)].push_back({id, source_tokens});
    ++size_;
}

std::vector<Detection> NaturalHallucinationIndex::finish(const HallucinationConfig& cfg) const {
    std::vector<Detection> out;
    for (const auto& [target, members] : groups_) {
        if (members.size() < cfg.natural_min_sources) continue;
        std::set<std::size_t> lengths;
        for (const auto& m : members) lengths.insert(m.source_tokens);
        if (lengths.size() < cfg.natural_min_sources) continue;

        std::vector<PairId> ids;
        for (const auto& m : members) ids.push_back(m.id);
        std::sort(ids.begin(), ids.end());
        std::string listed;
        for (std::size_t i = 0; i < std::min(ids.size(), kMaxListedIds); ++i) {
            listed += (i ? ", " : "") + std::to_string(ids[i]);
        }
        if (ids.size() > kMaxListedIds) listed += ", and " + std::to_string(ids.size() - kMaxListedIds) + " more";
        auto evidence = "translation \"" + target + "\" shared by " + std::to_string(ids.size()) + " sources with " +
                        std::to_string(lengths.size()) + " distinct lengths (pairs " + listed + ")";
        for (auto id : ids) {
            Detection d;
            d.pair_id = id;
            d.detector = DetectorKind::HallucinationNatural;
            d.evidence = evidence;
            out.push_back(std::move(d));
        }
    }
    std::stable_sort(out.begin(), out.end(), report_order);
    return out;
}

std::vector<Detection> natural_hallucination_scan(std::span<const SentencePair> corpus,
                                                  const HallucinationConfig& cfg) {
    NaturalHallucinationIndex index;
    for (const auto& p : corpus) index.add(p.id, p.target, text::count_tokens(p.source));
    return index.finish(cfg);
}

} // namespace tailcheck
