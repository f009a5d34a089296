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
#include "tailcheck/corpus.hpp"
#include "tailcheck/error.hpp"
#include "tailcheck/generators.hpp"
#include "tailcheck/pipeline.hpp"
#include "tailcheck/tables.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

namespace {

using namespace tailcheck;

struct Options {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string input;
    std::string source;
    std::string target;
    std::string report;
    std::string stats;
    std::string alignments;
    std::string detectors;
    std::size_t shards = 0;
    std::string clean;
    std::string removed;
    std::size_t total = 0;
    bool total_set = false;
    std::string corpus;
    std::string category = "physical-units";
    std::string output;
    std::string provenance;
    std::string templates;
    std::string kept;
    std::string dropped;
    double max_ratio = 1.3;
    std::size_t max_words = 150;
};

// An output file, or stdout for "" and "-".
class Sink {
  public:
    explicit Sink(const std::string& path, std::ostream& fallback = std::cout) : out_(&fallback) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_) throw IoError("cannot open '" + path + "' for writing");
        out_ = file_.get();
    }

    std::ostream& get() { return *out_; }

    void close() {
        out_->flush();
        if (!*out_) throw IoError("write failure");
        if (file_) file_->close();
    }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
};

RunConfig build_config(const Options& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_run_config(o.config_path);
    for (const auto& s : o.overrides) apply_override(cfg, s);
    if (!o.alignments.empty()) {
        cfg.set("alignment.provider", "file");
        cfg.set("alignment.file", o.alignments);
    }
    if (!o.detectors.empty()) cfg.set("detectors", o.detectors);
    if (o.shards) cfg.set("shards", std::to_string(o.shards));
    if (!o.source.empty() || !o.target.empty()) cfg.set("input.format", "parallel");
    if (!o.report.empty()) cfg.report_path = o.report;
    if (!o.stats.empty()) cfg.stats_path = o.stats;
    if (!o.clean.empty()) cfg.clean_path = o.clean;
    if (!o.removed.empty()) cfg.removed_path = o.removed;
    return cfg;
}

// Opens the corpus named by the options. Standard input is buffered so that
// two-pass commands can reread it.
ReaderFactory input_factory(const Options& o, const RunConfig& cfg, bool rereadable) {
    if (cfg.input_format == BitextFormat::Parallel) {
        if (o.source.empty() || o.target.empty()) throw ConfigError("parallel input needs --source and --target");
        return [s = o.source, t = o.target] { return BitextReader::open_parallel(s, t); };
    }
    if (o.input.empty() || o.input == "-") {
        if (!rereadable) return [] { return BitextReader::from_tsv_stream(std::cin); };
        auto buffer = std::make_shared<std::string>(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
        auto stream = std::make_shared<std::istringstream>();
        return [buffer, stream] {
            stream->clear();
            stream->str(*buffer);
            return BitextReader::from_tsv_stream(*stream);
        };
    }
    return [path = o.input] { return BitextReader::open_tsv(path); };
}

void report_summary(const RunConfig& cfg, const RunSummary& s) {
    Sink stats(cfg.stats_path, std::cerr);
    render_stats(stats.get(), s.stats);
    stats.close();
    if (s.malformed_lines) std::cerr << "skipped " << s.malformed_lines << " malformed input lines\n";
    if (s.alignment_unavailable) {
        std::cerr << s.alignment_unavailable << " pairs had no usable alignment and were not checked for coverage\n";
        for (const auto& e : s.alignment_errors) std::cerr << "  " << e << '\n';
    }
}

TableCategory parse_category_option(const std::string& name) {
    auto c = parse_category(name);
    if (!c) throw ConfigError("unknown table category '" + name + "'");
    return *c;
}

TransformationTable table_for(const RunConfig& cfg, TableCategory cat) {
    if (!cfg.tables_dir.empty()) {
        auto path = std::filesystem::path(cfg.tables_dir) / (std::string(to_string(cat)) + ".tsv");
        if (std::filesystem::exists(path)) return load_table(path, cfg.languages);
    }
    return builtin_table(cfg.languages, cat);
}

int cmd_detect(const Options& o) {
    auto cfg = build_config(o);
    auto reader = input_factory(o, cfg, false)();
    Sink report(cfg.report_path);
    auto summary = run_detect(cfg, reader, report.get());
    report.close();
    report_summary(cfg, summary);
    return 0;
}

int cmd_filter(const Options& o) {
    auto cfg = build_config(o);
    if (cfg.clean_path.empty() || cfg.removed_path.empty()) {
        throw ConfigError("filter needs --clean and --removed output files");
    }
    auto open = input_factory(o, cfg, true);
    Sink clean(cfg.clean_path), removed(cfg.removed_path);
    std::unique_ptr<Sink> report;
    if (!cfg.report_path.empty()) report = std::make_unique<Sink>(cfg.report_path);
    auto summary = run_filter(cfg, open, clean.get(), removed.get(), report ? &report->get() : nullptr);
    clean.close();
    removed.close();
    if (report) report->close();
    report_summary(cfg, summary.run);
    std::cerr << "kept " << summary.kept << ", removed " << summary.removed << '\n';
    return 0;
}

int cmd_stats(const Options& o) {
    std::ifstream in(o.input, std::ios::binary);
    if (!in) throw IoError("cannot open report '" + o.input + "'");
    auto report = read_report(in);
    std::size_t total = o.total;
    if (!o.corpus.empty()) {
        auto reader = BitextReader::open_tsv(o.corpus);
        total = 0;
        while (reader.next()) ++total;
    } else if (!o.total_set && !report.empty()) {
        throw ConfigError("stats needs --total or --corpus to compute the incidence rate");
    }
    auto stats = compute_stats(report, total);
    if (stats.total_flagged > stats.total_processed) {
        throw ConfigError("report flags " + std::to_string(stats.total_flagged) + " pairs but the corpus has only " +
                          std::to_string(stats.total_processed));
    }
    render_stats(std::cout, stats);
    return 0;
}

int cmd_metamorphic(const Options& o) {
    auto cfg = build_config(o);
    auto table = table_for(cfg, parse_category_option(o.category));
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!o.input.empty() && o.input != "-") {
        file.open(o.input, std::ios::binary);
        if (!file) throw IoError("cannot open '" + o.input + "'");
        in = &file;
    }
    Sink out(o.output);
    std::unique_ptr<Sink> prov;
    if (!o.provenance.empty()) prov = std::make_unique<Sink>(o.provenance);
    std::string line;
    PairId id = 0;
    std::size_t count = 0;
    for (; std::getline(*in, line); ++id) {
        auto clean = sanitize_line(line);
        auto sentence = std::string_view(clean).substr(0, clean.find('\t'));
        for (const auto& m : metamorphic_generate(sentence, table, id)) {
            out.get() << m.new_source << '\n';
            if (prov) {
                prov->get() << m.original_id << '\t' << m.token_index << '\t' << m.substituted_from << '\t'
                            << m.substituted_to << '\t' << m.type_tag << '\n';
            }
            ++count;
        }
    }
    out.close();
    if (prov) prov->close();
    std::cerr << "generated " << count << " instances from " << id << " sentences\n";
    return 0;
}

int cmd_metacorpus(const Options& o) {
    auto cfg = build_config(o);
    auto cat = parse_category_option(o.category);
    auto table = table_for(cfg, cat);
    auto reader = input_factory(o, cfg, false)();
    Sink out(o.output);
    std::unique_ptr<Sink> prov, tmpl;
    if (!o.provenance.empty()) prov = std::make_unique<Sink>(o.provenance);
    if (!o.templates.empty()) tmpl = std::make_unique<Sink>(o.templates);

    MetaCorpusGenerator gen(table, cfg.guard(cat));
    std::size_t pairs = 0, templates = 0;
    while (auto p = reader.next()) {
        auto t = gen.templatize(*p);
        if (!t) continue;
        ++templates;
        if (tmpl) tmpl->get() << t->id << '\t' << t->origin << '\t' << t->source_template << '\t' << t->target_template << '\n';
        for (const auto& m : gen.expand(*t)) {
            write_bitext_line(out.get(), SentencePair{0, m.source, m.target});
            if (prov) prov->get() << m.template_id << '\t' << t->origin << '\t' << m.source_token << '\t' << m.target_form << '\n';
            ++pairs;
        }
    }
    out.close();
    if (prov) prov->close();
    if (tmpl) tmpl->close();
    const auto& s = gen.skips();
    std::cerr << "templates " << templates << ", pairs " << pairs << "; skipped: flagged " << s.flagged
              << ", zero triggers " << s.zero_triggers << ", multiple triggers " << s.multiple_triggers
              << ", target form not locatable " << s.not_locatable << '\n';
    return 0;
}

int cmd_stdfilter(const Options& o) {
    auto cfg = build_config(o);
    auto reader = input_factory(o, cfg, false)();
    Sink kept(o.kept);
    std::unique_ptr<Sink> dropped;
    if (!o.dropped.empty()) dropped = std::make_unique<Sink>(o.dropped);
    StandardFilterOptions opts;
    opts.max_ratio = o.max_ratio;
    opts.max_words = o.max_words;
    std::map<std::string_view, std::size_t> reasons;
    while (auto p = reader.next()) {
        auto r = standard_filter(*p, opts);
        if (r == StandardFilterReason::Keep) {
            write_bitext_line(kept.get(), *p);
        } else {
            ++reasons[to_string(r)];
            if (dropped) dropped->get() << to_string(r) << '\t' << p->source << '\t' << p->target << '\n';
        }
    }
    kept.close();
    if (dropped) dropped->close();
    for (const auto& [reason, n] : reasons) std::cerr << "dropped (" << reason << "): " << n << '\n';
    return 0;
}

void add_input(CLI::App* cmd, Options& o) {
    cmd->add_option("input", o.input, "TSV bitext (source TAB target); '-' or omitted reads stdin");
    cmd->add_option("--source", o.source, "Source side of a parallel corpus");
    cmd->add_option("--target", o.target, "Target side of a parallel corpus");
}

void add_run_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--stats", o.stats, "Write the statistics table here instead of stderr");
    cmd->add_option("--alignments", o.alignments, "Pharaoh alignment file, line-aligned with the corpus");
    cmd->add_option("--detectors", o.detectors, "Comma-separated detector names, 'all' or 'default'");
    cmd->add_option("--shards", o.shards, "Worker threads for per-pair detectors")->check(CLI::Range(1, 1024));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tailcheck: high-precision detectors for long-tail translation errors"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config_path, "Run configuration file (key = value lines)");
    app.add_option("--set", o.overrides, "Override one configuration key, as key=value");

    auto* detect = app.add_subcommand("detect", "Run the detectors and write a JSON-lines report");
    add_input(detect, o);
    detect->add_option("--report", o.report, "Report file (default stdout)");
    add_run_options(detect, o);

    auto* filter = app.add_subcommand("filter", "Split a corpus into clean and removed pairs");
    add_input(filter, o);
    filter->add_option("--clean", o.clean, "Output for pairs without detections");
    filter->add_option("--removed", o.removed, "Output for flagged pairs");
    filter->add_option("--report", o.report, "Also write the detection report here");
    add_run_options(filter, o);

    auto* stats = app.add_subcommand("stats", "Summarize a detection report");
    stats->add_option("report", o.input, "Report file")->required();
    stats->add_option("--total", o.total, "Number of pairs in the checked corpus")
        ->each([&](const std::string&) { o.total_set = true; });
    stats->add_option("--corpus", o.corpus, "Checked corpus, to count its pairs");

    auto* meta = app.add_subcommand("metamorphic", "Generate same-type substitutions of source sentences");
    meta->add_option("input", o.input, "One source sentence per line (first TSV column is used)");
    meta->add_option("--category", o.category, "Table to draw substitutions from")
        ->check(CLI::IsMember({"physical-units", "currencies", "large-numbers", "web-terms"}));
    meta->add_option("--output", o.output, "New sentences (default stdout)");
    meta->add_option("--provenance", o.provenance, "Line-aligned provenance records");

    auto* corpus = app.add_subcommand("metacorpus", "Build a synthetic parallel corpus from clean pairs");
    add_input(corpus, o);
    corpus->add_option("--category", o.category, "Table to templatize with")
        ->check(CLI::IsMember({"physical-units", "currencies", "large-numbers", "web-terms"}));
    corpus->add_option("--output", o.output, "Generated bitext (default stdout)");
    corpus->add_option("--provenance", o.provenance, "Line-aligned provenance records");
    corpus->add_option("--templates", o.templates, "Template records");

    auto* stdf = app.add_subcommand("stdfilter", "Length-ratio and length baseline filter");
    add_input(stdf, o);
    stdf->add_option("--kept", o.kept, "Kept pairs (default stdout)");
    stdf->add_option("--dropped", o.dropped, "Dropped pairs, prefixed with the reason");
    stdf->add_option("--max-ratio", o.max_ratio, "Maximum token-count ratio in either direction");
    stdf->add_option("--max-words", o.max_words, "Maximum tokens per side");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*detect) return cmd_detect(o);
        if (*filter) return cmd_filter(o);
        if (*stats) return cmd_stats(o);
        if (*meta) return cmd_metamorphic(o);
        if (*corpus) return cmd_metacorpus(o);
        if (*stdf) return cmd_stdfilter(o);
    } catch (const tailcheck::Error& e) {
        std::cerr << "tailcheck: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "tailcheck: internal error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
