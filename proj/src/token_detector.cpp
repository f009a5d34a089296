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

#include "tailcheck/token_detector.hpp"

#include "tailcheck/lexicon.hpp"

#include <algorithm>
#include <array>

namespace tailcheck {

namespace {

constexpr std::array<std::string_view, 3> kGuardNames = {"none", "numeric-antecedent", "numeric-adjacent"};

constexpr std::array<std::string_view, 4> kUrlPrefixes = {"https://", "http://", "ftp://", "www."};

bool is_ascii_alnum(char c) noexcept { return text::is_digit(c) || text::is_ascii_alpha(c); }

// Cheap test run before the per-token scan.
bool might_hold_url(std::string_view s) noexcept {
    if (s.find("://") != std::string_view::npos) return true;
    for (auto pos = s.find('.'); pos != std::string_view::npos; pos = s.find('.', pos + 1)) {
        if (pos >= 3 && (s[pos - 1] | 0x20) == 'w' && (s[pos - 2] | 0x20) == 'w' && (s[pos - 3] | 0x20) == 'w') {
            return true;
        }
    }
    return false;
}

std::string strip_trailing(std::string_view s) {
    while (!s.empty() && text::is_trailing_punctuation(s.back())) s.remove_suffix(1);
    return std::string(s);
}

// Splits one whitespace token at currency-symbol/digit boundaries.
void split_currency(std::string_view s, const text::TokenView& tok, std::vector<text::TokenView>& out) {
    std::size_t seg_start = tok.start;
    std::size_t i = tok.start;
    enum class Kind { Other, Digit, Symbol } prev = Kind::Other;
    while (i < tok.end) {
        Kind kind = Kind::Other;
        std::size_t len = 1;
        if (text::is_digit(s[i])) {
            kind = Kind::Digit;
        } else if (auto sym = text::currency_symbol_length(s, i); sym > 0 && i + sym <= tok.end) {
            kind = Kind::Symbol;
            len = sym;
        } else {
            // Step over the rest of a multi-byte code point.
            unsigned char c = static_cast<unsigned char>(s[i]);
            len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
            len = std::min(len, tok.end - i);
        }
        bool boundary = (prev == Kind::Digit && kind == Kind::Symbol) || (prev == Kind::Symbol && kind == Kind::Digit);
        if (boundary && i > seg_start) {
            out.push_back({seg_start, i, s.substr(seg_start, i - seg_start)});
            seg_start = i;
        }
        prev = kind;
        i += len;
    }
    out.push_back({seg_start, tok.end, s.substr(seg_start, tok.end - seg_start)});
}

std::string join_forms(const std::vector<std::string>& forms) {
    std::string out;
    for (const auto& f : forms) {
        if (!out.empty()) out += ", ";
        out += f;
    }
    return out;
}

} // namespace

std::string_view to_string(GuardMode m) noexcept { return kGuardNames[static_cast<std::size_t>(m)]; }

std::optional<GuardMode> parse_guard_mode(std::string_view s) noexcept {
    for (std::size_t i = 0; i < kGuardNames.size(); ++i) {
        if (kGuardNames[i] == s) return static_cast<GuardMode>(i);
    }
    return std::nullopt;
}

GuardPolicy default_guard_policy(TableCategory c) noexcept {
    switch (c) {
    case TableCategory::PhysicalUnits: return GuardPolicy::uniform(GuardMode::NumericAntecedent);
    case TableCategory::Currencies: return {GuardMode::NumericAntecedent, GuardMode::NumericAdjacent};
    case TableCategory::LargeNumbers:
    case TableCategory::WebTerms: return GuardPolicy::uniform(GuardMode::None);
    }
    return {};
}

std::vector<text::TokenView> trigger_tokens(std::string_view s) {
    std::vector<text::TokenView> out;
    for (const auto& tok : text::whitespace_tokens(s)) split_currency(s, tok, out);
    return out;
}

PreparedSource::PreparedSource(std::string_view source)
    : text_(source), folded_(text::fold_case(source)), tokens_(trigger_tokens(source)) {
    surfaces_.reserve(tokens_.size());
    for (const auto& t : tokens_) surfaces_.push_back(t.view);
}

std::vector<TriggerMatch> find_triggers(std::string_view source, const TransformationTable& table) {
    return find_triggers(PreparedSource(source), table);
}

std::vector<TriggerMatch> find_triggers(const PreparedSource& source, const TransformationTable& table) {
    std::vector<TriggerMatch> out;
    if (table.empty()) return out;
    const auto& tokens = source.tokens();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto candidate = source.folded_token(i);
        while (!candidate.empty()) {
            if (auto idx = table.find(candidate)) {
                const auto& tok = tokens[i];
                out.push_back(TriggerMatch{&table.entries()[*idx],
                                           TokenSpan::of(source.text(), tok.start, tok.start + candidate.size()), i});
                break;
            }
            if (!text::is_trailing_punctuation(candidate.back())) break;
            candidate.remove_suffix(1);
        }
    }
    return out;
}

bool is_numeric_token(std::string_view token) noexcept { return text::contains_digit(token); }

bool is_number_word(std::string_view token) {
    auto folded = strip_trailing(text::fold_case(token));
    if (folded.empty()) return false;
    const auto& lex = NumberLexicon::for_language("en");
    std::string_view rest(folded);
    while (true) {
        auto dash = rest.find('-');
        auto part = rest.substr(0, dash);
        auto v = lex.value_of(part);
        if (!v || *v == 0) return false;
        if (dash == std::string_view::npos) return true;
        rest.remove_prefix(dash + 1);
    }
}

bool numeric_guard(std::span<const std::string_view> tokens, std::size_t index, GuardMode mode) {
    switch (mode) {
    case GuardMode::None: return true;
    case GuardMode::NumericAntecedent:
        return index > 0 && (is_numeric_token(tokens[index - 1]) || is_number_word(tokens[index - 1]));
    case GuardMode::NumericAdjacent:
        return (index > 0 && is_numeric_token(tokens[index - 1])) ||
               (index + 1 < tokens.size() && is_numeric_token(tokens[index + 1])) || is_numeric_token(tokens[index]);
    }
    return false;
}

std::optional<std::size_t> guard_anchor(std::span<const std::string_view> tokens, std::size_t index, GuardMode mode) {
    if (index > 0 && is_numeric_token(tokens[index - 1])) return index - 1;
    if (mode == GuardMode::NumericAdjacent && index + 1 < tokens.size() && is_numeric_token(tokens[index + 1])) {
        return index + 1;
    }
    return std::nullopt;
}

std::vector<TriggerFailure> failed_triggers(const PreparedSource& source, std::string_view folded_target,
                                            const TransformationTable& table, const GuardPolicy& policy) {
    std::vector<TriggerFailure> out;
    for (auto& m : find_triggers(source, table)) {
        auto mode = policy.mode_for(*m.entry);
        if (!numeric_guard(source.surfaces(), m.token_index, mode)) continue;
        const auto& forms = table.folded_targets(table.index_of(*m.entry));
        bool found = std::any_of(forms.begin(), forms.end(), [&](const std::string& f) {
            return folded_target.find(f) != std::string_view::npos;
        });
        if (found) continue;
        auto anchor = guard_anchor(source.surfaces(), m.token_index, mode);
        out.push_back(TriggerFailure{std::move(m), anchor});
    }
    return out;
}

Detection make_trigger_detection(PairId id, const TransformationTable& table, const TriggerMatch& m) {
    Detection d;
    d.pair_id = id;
    d.detector = detector_for(table.category());
    d.source_spans.push_back(m.span);
    d.evidence = "\"" + m.span.surface + "\": no allowed form (" + join_forms(m.entry->targets) + ") in translation";
    return d;
}

std::vector<Detection> check_pair(const SentencePair& pair, const TransformationTable& table,
                                  const GuardPolicy& policy) {
    std::vector<Detection> out;
    if (table.empty()) return out;
    PreparedSource source(pair.source);
    auto folded_target = text::fold_case(pair.target);
    for (const auto& f : failed_triggers(source, folded_target, table, policy)) {
        out.push_back(make_trigger_detection(pair.id, table, f.match));
    }
    return out;
}

std::vector<TokenSpan> extract_urls(std::string_view s) {
    std::vector<TokenSpan> out;
    if (!might_hold_url(s)) return out;
    for (const auto& tok : text::whitespace_tokens(s)) {
        auto folded = text::fold_case(tok.view);
        std::size_t best = std::string::npos;
        std::size_t best_prefix = 0;
        for (auto prefix : kUrlPrefixes) {
            std::size_t pos = 0;
            while ((pos = folded.find(prefix, pos)) != std::string::npos) {
                if (pos == 0 || !is_ascii_alnum(folded[pos - 1])) break;
                ++pos;
            }
            if (pos != std::string::npos && pos < best) {
                best = pos;
                best_prefix = prefix.size();
            }
        }
        if (best == std::string::npos) continue;
        std::string_view url = tok.view.substr(best);
        while (!url.empty() && text::is_trailing_punctuation(url.back())) url.remove_suffix(1);
        if (url.size() <= best_prefix) continue;
        std::size_t start = tok.start + best;
        out.push_back(TokenSpan::of(s, start, start + url.size()));
    }
    return out;
}

std::vector<Detection> check_urls(const SentencePair& pair) {
    std::vector<Detection> out;
    for (auto& url : extract_urls(pair.source)) {
        if (pair.target.find(url.surface) != std::string::npos) continue;
        Detection d;
        d.pair_id = pair.id;
        d.detector = DetectorKind::WebTerms;
        d.evidence = "URL \"" + url.surface + "\" not copied verbatim into translation";
        d.source_spans.push_back(std::move(url));
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<Detection> check_web_terms(const SentencePair& pair, const TransformationTable& web_table) {
    auto out = check_urls(pair);
    auto terms = check_pair(pair, web_table, default_guard_policy(TableCategory::WebTerms));
    for (auto& d : terms) {
        d.detector = DetectorKind::WebTerms;
        out.push_back(std::move(d));
    }
    std::stable_sort(out.begin(), out.end(), report_order);
    return out;
}

std::vector<Detection> check_web_terms(const SentencePair& pair) {
    return check_web_terms(pair, builtin_table(LanguagePair{"en", "de"}, TableCategory::WebTerms));
}

} // namespace tailcheck
