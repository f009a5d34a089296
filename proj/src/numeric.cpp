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

#include "tailcheck/numeric.hpp"

#include "tailcheck/text.hpp"
#include "tailcheck/token_detector.hpp"

#include <algorithm>

namespace tailcheck {

namespace {

constexpr std::string_view kNbsp = "\xC2\xA0";
constexpr std::string_view kNnbsp = "\xE2\x80\xAF";
constexpr std::string_view kThinSpace = "\xE2\x80\x89";

// Length of a separator starting at s[pos], 0 if none.
std::size_t separator_length(std::string_view s, std::size_t pos) noexcept {
    char c = s[pos];
    if (c == '.' || c == ',' || c == ':' || c == '/' || c == '-') return 1;
    auto rest = s.substr(pos);
    if (rest.starts_with(kNbsp)) return kNbsp.size();
    if (rest.starts_with(kNnbsp)) return kNnbsp.size();
    if (rest.starts_with(kThinSpace)) return kThinSpace.size();
    return 0;
}

bool is_space_group(std::string_view sep) noexcept { return sep == kNbsp || sep == kNnbsp || sep == kThinSpace; }

int to_int(std::string_view digits) noexcept {
    int v = 0;
    for (char c : digits) v = v * 10 + (c - '0');
    return v;
}

std::string strip_leading_zeros(std::string s) {
    auto nz = s.find_first_not_of('0');
    return nz == std::string::npos ? std::string("0") : s.substr(nz);
}

std::string strip_trailing_zeros(std::string s) {
    auto nz = s.find_last_not_of('0');
    s.resize(nz == std::string::npos ? 0 : nz + 1);
    return s;
}

std::string condense(std::string_view raw) {
    std::string out;
    for (char c : raw) {
        if (text::is_digit(c)) out += c;
    }
    return out;
}

// One digit run split into digit groups and the separators between them.
struct Run {
    std::string_view text;
    std::size_t lead = 0; // start of a leading decimal mark, if any
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::vector<std::string_view> seps;
};

std::string_view group_digits(const Run& r, std::size_t g) {
    return r.text.substr(r.groups[g].first, r.groups[g].second - r.groups[g].first);
}

std::optional<CalendarDate> date_shape(const Run& r, std::size_t a) {
    auto g0 = group_digits(r, a), g1 = group_digits(r, a + 1), g2 = group_digits(r, a + 2);
    CalendarDate d;
    if (g0.size() == 4 && g1.size() <= 2 && g2.size() <= 2) {
        d.first = to_int(g2);
        d.second = to_int(g1);
        d.year = to_int(g0);
        if (d.second < 1 || d.second > 12 || d.first < 1 || d.first > 31) return std::nullopt;
        return d;
    }
    if (g0.size() > 2 || g1.size() > 2 || (g2.size() != 2 && g2.size() != 4)) return std::nullopt;
    d.first = to_int(g0);
    d.second = to_int(g1);
    d.year = to_int(g2);
    d.two_digit_year = g2.size() == 2;
    if (d.readings().empty()) return std::nullopt;
    return d;
}

std::optional<ClockTime> time_shape(std::string_view h, std::string_view m) {
    if (h.empty() || h.size() > 2 || m.size() != 2) return std::nullopt;
    ClockTime t{to_int(h), to_int(m)};
    if (t.hour > 24 || t.minute > 59) return std::nullopt;
    return t;
}

// "14.00" style clock times, as written in German.
std::optional<ClockTime> dotted_time(std::string_view raw) {
    auto dot = raw.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    auto h = raw.substr(0, dot), m = raw.substr(dot + 1);
    if (!std::all_of(h.begin(), h.end(), text::is_digit) || !std::all_of(m.begin(), m.end(), text::is_digit)) {
        return std::nullopt;
    }
    return time_shape(h, m);
}

class Classifier {
  public:
    Classifier(const Run& run, const LocaleConvention& locale, std::vector<NumericValue>& out)
        : r_(run), locale_(locale), out_(out) {}

    void classify(std::size_t a, std::size_t b) {
        std::size_t n = b - a;
        auto seps = std::span(r_.seps).subspan(a, n - 1);
        bool has_slash = std::find(seps.begin(), seps.end(), "/") != seps.end();
        bool uniform = std::all_of(seps.begin(), seps.end(), [&](auto s) { return s == seps.front(); });

        if (n == 3 && uniform && (seps[0] == "/" || seps[0] == "-" || seps[0] == ".")) {
            if (auto d = date_shape(r_, a); d && (seps[0] != "." || !d->two_digit_year)) {
                emit(a, b, NumericKind::Date, [&](NumericValue& v) { v.date = d; });
                return;
            }
        }
        if (has_slash) return; // fraction-like
        if (split_on(a, b, "-")) return;
        if (n == 2 && seps[0] == ":") {
            if (auto t = time_shape(group_digits(r_, a), group_digits(r_, a + 1))) {
                emit(a, b, NumericKind::Time, [&](NumericValue& v) { v.time = t; });
                return;
            }
        }
        if (split_on(a, b, ":")) return;

        auto [start, end] = bounds(a, b);
        bool fused = end < r_.text.size() && text::is_ascii_alpha(r_.text[end]);
        emit(a, b, fused ? NumericKind::FusedUnit : NumericKind::Plain, [&](NumericValue& v) {
            v.parsed = parse_decimal(v.raw, locale_);
        });
    }

  private:
    std::pair<std::size_t, std::size_t> bounds(std::size_t a, std::size_t b) const {
        std::size_t start = r_.groups[a].first;
        if (a == 0 && r_.lead < start) start = r_.lead;
        return {start, r_.groups[b - 1].second};
    }

    bool split_on(std::size_t a, std::size_t b, std::string_view sep) {
        bool any = false;
        std::size_t piece = a;
        for (std::size_t k = a; k + 1 < b; ++k) {
            if (r_.seps[k] != sep) continue;
            any = true;
            classify(piece, k + 1);
            piece = k + 1;
        }
        if (any) classify(piece, b);
        return any;
    }

    template <typename Fill> void emit(std::size_t a, std::size_t b, NumericKind kind, Fill fill) {
        auto [start, end] = bounds(a, b);
        NumericValue v;
        v.span = TokenSpan::of(r_.text, start, end);
        v.raw = v.span.surface;
        v.condensed = condense(v.raw);
        v.kind = kind;
        fill(v);
        out_.push_back(std::move(v));
    }

    const Run& r_;
    const LocaleConvention& locale_;
    std::vector<NumericValue>& out_;
};

bool is_word_number(std::int64_t v) noexcept { return (v >= 0 && v <= 20) || (v > 20 && v <= 100 && v % 10 == 0); }

std::string two_digits(int v) { return (v < 10 ? "0" : "") + std::to_string(v); }

std::vector<int> hour_variants(int h) {
    std::vector<int> out{h, (h + 12) % 24};
    if (h >= 12) out.push_back(h - 12);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool same_year(const CalendarDate& a, const CalendarDate& b) noexcept {
    if (a.two_digit_year || b.two_digit_year) return a.year % 100 == b.year % 100;
    return a.year == b.year;
}

} // namespace

LocaleConvention LocaleConvention::for_language(std::string_view language) noexcept {
    if (language == "de") return {',', '.'};
    return {'.', ','};
}

std::string_view to_string(NumericKind k) noexcept {
    switch (k) {
    case NumericKind::Plain: return "plain";
    case NumericKind::Time: return "time";
    case NumericKind::Date: return "date";
    case NumericKind::FusedUnit: return "fused-unit";
    }
    return "plain";
}

std::vector<std::pair<int, int>> CalendarDate::readings() const {
    std::vector<std::pair<int, int>> out;
    auto valid = [](int d, int m) { return d >= 1 && d <= 31 && m >= 1 && m <= 12; };
    if (valid(first, second)) out.emplace_back(first, second);
    if (first != second && valid(second, first)) out.emplace_back(second, first);
    return out;
}

std::optional<DecimalValue> parse_decimal(std::string_view raw, const LocaleConvention& locale) {
    std::vector<std::string_view> groups;
    bool leading_decimal = false;
    bool seen_decimal = false;
    bool seen_group = false;
    std::size_t i = 0;
    if (!raw.empty() && raw[0] == locale.decimal_mark) {
        leading_decimal = true;
        seen_decimal = true;
        i = 1;
    }
    while (i < raw.size()) {
        std::size_t j = i;
        while (j < raw.size() && text::is_digit(raw[j])) ++j;
        if (j == i) return std::nullopt;
        groups.push_back(raw.substr(i, j - i));
        if (j == raw.size()) break;
        if (seen_decimal) return std::nullopt; // nothing may follow the fraction
        auto len = separator_length(raw, j);
        auto sep = raw.substr(j, len);
        if (len == 1 && sep[0] == locale.decimal_mark) {
            seen_decimal = true;
        } else if ((len == 1 && sep[0] == locale.group_mark) || (len > 1 && is_space_group(sep))) {
            seen_group = true;
        } else {
            return std::nullopt;
        }
        i = j + len;
        if (i >= raw.size()) return std::nullopt;
    }
    if (groups.empty()) return std::nullopt;

    DecimalValue v;
    std::size_t int_groups = groups.size();
    if (seen_decimal) {
        v.fraction = strip_trailing_zeros(std::string(groups.back()));
        int_groups = leading_decimal ? 0 : groups.size() - 1;
    }
    if (seen_group) {
        if (int_groups < 2 || groups[0].size() > 3) return std::nullopt;
        for (std::size_t g = 1; g < int_groups; ++g) {
            if (groups[g].size() != 3) return std::nullopt;
        }
    }
    std::string integer;
    for (std::size_t g = 0; g < int_groups; ++g) integer += groups[g];
    v.integer = strip_leading_zeros(std::move(integer));
    return v;
}

std::string render_decimal(const DecimalValue& v, const LocaleConvention& locale, bool grouped) {
    std::string out;
    const auto& d = v.integer;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (grouped && i > 0 && (d.size() - i) % 3 == 0) out += locale.group_mark;
        out += d[i];
    }
    if (!v.fraction.empty()) {
        out += locale.decimal_mark;
        out += v.fraction;
    }
    return out;
}

std::vector<NumericValue> extract_numeric_values(std::string_view s, const LocaleConvention& locale) {
    std::vector<NumericValue> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!text::is_digit(s[i])) {
            ++i;
            continue;
        }
        Run run;
        run.text = s;
        run.lead = i;
        if (i > 0 && s[i - 1] == locale.decimal_mark &&
            (i == 1 || !(text::is_digit(s[i - 2]) || text::is_ascii_alpha(s[i - 2])))) {
            run.lead = i - 1;
        }
        std::size_t j = i;
        while (true) {
            std::size_t g = j;
            while (j < s.size() && text::is_digit(s[j])) ++j;
            run.groups.emplace_back(g, j);
            if (j >= s.size()) break;
            auto len = separator_length(s, j);
            if (len == 0 || j + len >= s.size() || !text::is_digit(s[j + len])) break;
            run.seps.push_back(s.substr(j, len));
            j += len;
        }
        Classifier(run, locale, out).classify(0, run.groups.size());
        i = j;
    }
    return out;
}

AcceptanceSet::AcceptanceSet(NumericValue source, LocaleConvention target_locale, const NumberLexicon& target_words)
    : source_(std::move(source)), target_locale_(target_locale) {
    const auto& p = source_.parsed;
    if (p && p->is_integer() && p->integer.size() <= 3) {
        auto value = std::stoll(p->integer);
        if (is_word_number(value)) words_ = target_words.words_for(value);
    }
}

bool AcceptanceSet::accepts(const NumericValue& t) const {
    const auto& s = source_;
    if (t.raw == s.raw) return true;
    switch (s.kind) {
    case NumericKind::Plain:
    case NumericKind::FusedUnit:
        if (t.kind != NumericKind::Plain && t.kind != NumericKind::FusedUnit) return false;
        if (s.parsed && t.parsed) return *s.parsed == *t.parsed;
        return s.condensed == t.condensed;
    case NumericKind::Time: {
        auto tt = t.time ? t.time : dotted_time(t.raw);
        if (!tt || tt->minute != s.time->minute) return false;
        auto hours = hour_variants(s.time->hour);
        return std::find(hours.begin(), hours.end(), tt->hour) != hours.end();
    }
    case NumericKind::Date: {
        if (!t.date || !same_year(*s.date, *t.date)) return false;
        auto a = s.date->readings(), b = t.date->readings();
        return std::any_of(a.begin(), a.end(),
                           [&](const auto& r) { return std::find(b.begin(), b.end(), r) != b.end(); });
    }
    }
    return false;
}

bool AcceptanceSet::accepts_word(std::string_view folded_word) const {
    return std::find(words_.begin(), words_.end(), folded_word) != words_.end();
}

std::vector<std::string> AcceptanceSet::forms() const {
    std::vector<std::string> out{source_.raw};
    const auto& s = source_;
    switch (s.kind) {
    case NumericKind::Plain:
    case NumericKind::FusedUnit:
        if (s.parsed) {
            out.push_back(render_decimal(*s.parsed, target_locale_, false));
            out.push_back(render_decimal(*s.parsed, target_locale_, true));
        } else {
            out.push_back(s.condensed);
        }
        break;
    case NumericKind::Time:
        for (int h : hour_variants(s.time->hour)) {
            out.push_back(std::to_string(h) + ":" + two_digits(s.time->minute));
            out.push_back(two_digits(h) + ":" + two_digits(s.time->minute));
        }
        break;
    case NumericKind::Date: {
        auto year = s.date->two_digit_year ? two_digits(s.date->year) : std::to_string(s.date->year);
        for (auto [d, m] : s.date->readings()) {
            out.push_back(std::to_string(d) + "." + std::to_string(m) + "." + year);
            out.push_back(two_digits(d) + "." + two_digits(m) + "." + year);
            out.push_back(std::to_string(m) + "/" + std::to_string(d) + "/" + year);
            out.push_back(std::to_string(d) + "/" + std::to_string(m) + "/" + year);
        }
        break;
    }
    }
    for (auto w : words_) out.emplace_back(w);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AcceptanceSet allowed_target_forms(const NumericValue& v, const LocaleConvention& target_locale,
                                   const NumberLexicon& target_words) {
    return AcceptanceSet(v, target_locale, target_words);
}

namespace {

// raw copied unchanged into text, not as part of a longer digit run.
bool appears_verbatim(std::string_view text, std::string_view raw) {
    for (auto at = text.find(raw); at != std::string_view::npos; at = text.find(raw, at + 1)) {
        bool left = at == 0 || !text::is_digit(text[at - 1]);
        bool right = at + raw.size() == text.size() || !text::is_digit(text[at + raw.size()]);
        if (left && right) return true;
    }
    return false;
}

} // namespace

std::vector<Detection> check_pair_numeric(const SentencePair& pair, const NumericConfig& cfg,
                                          std::span<const TokenSpan> exempt) {
    std::vector<Detection> out;
    if (!text::contains_digit(pair.source)) return out;
    auto values = extract_numeric_values(pair.source, cfg.source_locale);
    if (values.empty()) return out;

    auto urls = extract_urls(pair.source);
    auto overlaps = [](const TokenSpan& a, const TokenSpan& b) { return a.start < b.end && b.start < a.end; };
    auto skipped = [&](const NumericValue& v) {
        return std::any_of(urls.begin(), urls.end(), [&](const auto& u) { return overlaps(u, v.span); }) ||
               std::any_of(exempt.begin(), exempt.end(), [&](const auto& e) { return overlaps(e, v.span); });
    };

    auto targets = extract_numeric_values(pair.target, cfg.target_locale);
    const auto& lexicon = NumberLexicon::for_language(cfg.target_language);
    std::vector<std::string> words;
    bool words_ready = false;

    for (auto& v : values) {
        if (skipped(v)) continue;
        AcceptanceSet acc(std::move(v), cfg.target_locale, lexicon);
        if (std::any_of(targets.begin(), targets.end(), [&](const auto& t) { return acc.accepts(t); })) continue;
        const auto& src = acc.source();
        if (appears_verbatim(pair.target, src.raw)) continue;
        if (src.kind == NumericKind::Date) {
            // Month spelled out: the day and the year must still be present.
            bool year = false, day = false;
            auto readings = src.date->readings();
            for (const auto& t : targets) {
                if (!t.parsed || !t.parsed->is_integer() || t.parsed->integer.size() > 4) continue;
                int n = std::stoi(t.parsed->integer);
                if (src.date->two_digit_year ? n % 100 == src.date->year % 100 : n == src.date->year) year = true;
                for (auto [d, m] : readings) day = day || n == d;
            }
            if (year && day) continue;
        }
        if (!words_ready) {
            auto folded = text::fold_case(pair.target);
            for (const auto& tok : text::whitespace_tokens(folded)) {
                auto w = text::trim_punctuation(tok.view);
                if (!w.empty()) words.emplace_back(w);
            }
            words_ready = true;
        }
        if (std::any_of(words.begin(), words.end(), [&](const auto& w) { return acc.accepts_word(w); })) continue;

        Detection d;
        d.pair_id = pair.id;
        d.detector = DetectorKind::NumericalValues;
        d.source_spans.push_back(src.span);
        d.evidence = "number \"" + src.raw + "\" has no allowed counterpart in translation";
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace tailcheck
