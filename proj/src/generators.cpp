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

#include "tailcheck/generators.hpp"

#include "tailcheck/error.hpp"
#include "tailcheck/text.hpp"

namespace tailcheck {

namespace {

std::string splice(std::string_view s, std::size_t start, std::size_t end, std::string_view fill) {
    std::string out;
    out.reserve(s.size() - (end - start) + fill.size());
    out.append(s.substr(0, start));
    out.append(fill);
    out.append(s.substr(end));
    return out;
}

std::string fill_placeholder(const std::string& tmpl, std::string_view fill) {
    auto pos = tmpl.find(kPlaceholder);
    if (pos == std::string::npos) throw InvariantError("template without placeholder: " + tmpl);
    return splice(tmpl, pos, pos + kPlaceholder.size(), fill);
}

struct FormHit {
    std::size_t start;
    std::size_t length;
    std::size_t form;
};

} // namespace

std::vector<MetamorphicInstance> metamorphic_generate(std::string_view sentence, const TransformationTable& table,
                                                      PairId id) {
    std::vector<MetamorphicInstance> out;
    for (const auto& m : find_triggers(sentence, table)) {
        for (const auto& e : table.entries()) {
            if (&e == m.entry || e.type_tag != m.entry->type_tag) continue;
            out.push_back(MetamorphicInstance{id, splice(sentence, m.span.start, m.span.end, e.trigger),
                                              m.entry->trigger, e.trigger, e.type_tag, m.token_index});
        }
    }
    return out;
}

SentencePair Template::instantiate(std::string_view source_fill, std::string_view target_fill) const {
    return SentencePair{origin, fill_placeholder(source_template, source_fill),
                        fill_placeholder(target_template, target_fill)};
}

MetaCorpusGenerator::MetaCorpusGenerator(const TransformationTable& table, GuardPolicy policy)
    : table_(table), policy_(policy) {}

std::optional<Template> MetaCorpusGenerator::templatize(const SentencePair& pair) {
    if (!check_pair(pair, table_, policy_).empty()) {
        ++skips_.flagged;
        return std::nullopt;
    }
    auto matches = find_triggers(pair.source, table_);
    if (matches.empty()) {
        ++skips_.zero_triggers;
        return std::nullopt;
    }
    if (matches.size() > 1) {
        ++skips_.multiple_triggers;
        return std::nullopt;
    }
    if (pair.source.find(kPlaceholder) != std::string::npos || pair.target.find(kPlaceholder) != std::string::npos) {
        ++skips_.not_locatable;
        return std::nullopt;
    }

    const auto& m = matches.front();
    const auto& forms = table_.folded_targets(table_.index_of(*m.entry));
    auto folded_target = text::fold_case(pair.target);
    std::vector<FormHit> hits;
    for (std::size_t f = 0; f < forms.size(); ++f) {
        for (auto pos = folded_target.find(forms[f]); pos != std::string::npos;
             pos = folded_target.find(forms[f], pos + 1)) {
            hits.push_back({pos, forms[f].size(), f});
        }
    }
    if (hits.empty()) {
        ++skips_.not_locatable;
        return std::nullopt;
    }
    // Leftmost, then longest.
    auto best = hits.front();
    for (const auto& h : hits) {
        if (h.start < best.start || (h.start == best.start && h.length > best.length)) best = h;
    }
    for (const auto& h : hits) {
        bool overlaps = h.start < best.start + best.length && best.start < h.start + h.length;
        if (!overlaps) {
            ++skips_.not_locatable;
            return std::nullopt;
        }
    }

    Template t;
    t.id = next_id_++;
    t.origin = pair.id;
    t.source_template = splice(pair.source, m.span.start, m.span.end, kPlaceholder);
    t.target_template = splice(pair.target, best.start, best.start + best.length, kPlaceholder);
    t.slot_entry = *m.entry;
    t.matched_target_form = m.entry->targets[best.form];
    t.source_surface = m.span.surface;
    t.target_surface = pair.target.substr(best.start, best.length);
    return t;
}

std::vector<MetaCorpusPair> MetaCorpusGenerator::expand(const Template& t) const {
    std::vector<MetaCorpusPair> out;
    for (const auto& e : table_.entries()) {
        if (e.type_tag != t.slot_entry.type_tag) continue;
        out.push_back(MetaCorpusPair{fill_placeholder(t.source_template, e.trigger),
                                     fill_placeholder(t.target_template, e.canonical_target()), t.id, e.trigger,
                                     e.canonical_target()});
    }
    return out;
}

MetaCorpus meta_corpus_generate(std::span<const SentencePair> corpus, const TransformationTable& table,
                                const GuardPolicy& policy) {
    MetaCorpus out;
    MetaCorpusGenerator gen(table, policy);
    for (const auto& p : corpus) {
        auto t = gen.templatize(p);
        if (!t) continue;
        auto pairs = gen.expand(*t);
        out.pairs.insert(out.pairs.end(), std::make_move_iterator(pairs.begin()), std::make_move_iterator(pairs.end()));
        out.templates.push_back(std::move(*t));
    }
    out.skips = gen.skips();
    return out;
}

} // namespace tailcheck
