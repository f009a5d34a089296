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
#include "tailcheck/tables.hpp"
#include "tailcheck/token_detector.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tailcheck {

inline constexpr std::string_view kPlaceholder = "[VAL]";

struct MetamorphicInstance {
    PairId original_id = 0;
    std::string new_source;
    std::string substituted_from; // trigger of the replaced entry
    std::string substituted_to;   // trigger written in its place
    std::string type_tag;
    std::size_t token_index = 0;  // trigger token index, unchanged by substitution

    bool operator==(const MetamorphicInstance&) const = default;
};

// For every trigger occurrence, one instance per other entry with the same
// type tag. The guard is not applied.
std::vector<MetamorphicInstance> metamorphic_generate(std::string_view sentence, const TransformationTable& table,
                                                      PairId id = 0);

struct Template {
    std::size_t id = 0;
    PairId origin = 0;
    std::string source_template; // holds kPlaceholder exactly once
    std::string target_template; // holds kPlaceholder exactly once
    TransformationEntry slot_entry;
    std::string matched_target_form; // target form as listed in the table
    std::string source_surface;      // excised text, as written
    std::string target_surface;

    SentencePair instantiate(std::string_view source_fill, std::string_view target_fill) const;

    bool operator==(const Template&) const = default;
};

struct MetaCorpusPair {
    std::string source;
    std::string target;
    std::size_t template_id = 0;
    std::string source_token;
    std::string target_form;

    bool operator==(const MetaCorpusPair&) const = default;
};

struct MetaCorpusSkips {
    std::size_t flagged = 0;
    std::size_t zero_triggers = 0;
    std::size_t multiple_triggers = 0;
    // No target form found, a form found more than once, or the pair already
    // contains the placeholder.
    std::size_t not_locatable = 0;

    bool operator==(const MetaCorpusSkips&) const = default;
};

// Streaming form of the meta-corpus generator: select and templatize pairs
// one at a time, then expand each template over same-type entries.
class MetaCorpusGenerator {
  public:
    MetaCorpusGenerator(const TransformationTable& table, GuardPolicy policy);

    // Returns a template, or records the skip reason and returns nullopt.
    std::optional<Template> templatize(const SentencePair& pair);

    // One pair per entry sharing the slot's type tag, in table order.
    std::vector<MetaCorpusPair> expand(const Template& t) const;

    const MetaCorpusSkips& skips() const noexcept { return skips_; }

  private:
    const TransformationTable& table_;
    GuardPolicy policy_;
    MetaCorpusSkips skips_;
    std::size_t next_id_ = 0;
};

struct MetaCorpus {
    std::vector<Template> templates;
    std::vector<MetaCorpusPair> pairs;
    MetaCorpusSkips skips;
};

MetaCorpus meta_corpus_generate(std::span<const SentencePair> corpus, const TransformationTable& table,
                                const GuardPolicy& policy);

} // namespace tailcheck
