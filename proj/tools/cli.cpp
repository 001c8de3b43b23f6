#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sieve/bloom_filter.hpp"
#include "sieve/config.hpp"
#include "sieve/dedup.hpp"
#include "sieve/error.hpp"
#include "sieve/hashing.hpp"
#include "sieve/linear_model.hpp"
#include "sieve/mixer.hpp"
#include "sieve/pipeline.hpp"
#include "sieve/policy.hpp"
#include "sieve/stats.hpp"

namespace sieve::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Without --config the tokenizer falls back to whitespace splitting so that
// stats and mix work on a bare corpus.
PipelineConfig load_or_default(const std::string& path) {
    if (path.empty()) {
        PipelineConfig c;
        c.tokenizer = TokenizerMode::Whitespace;
        return c;
    }
    auto c = load_config(path);
    c.validate();
    return c;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::optional<std::size_t> workers_flag(const CLI::Option* opt, std::size_t value) {
    if (opt->count() == 0) return std::nullopt;
    return value;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

struct TagArgs {
    std::string input, output, taggers, config;
    std::size_t workers = 1;
    CLI::Option* workers_opt = nullptr;
};

int cmd_tag(const TagArgs& a, std::ostream& out, std::ostream& err) {
    const auto taggers = parse_tagger_list(a.taggers);
    const auto config = load_or_default(a.config);
    const auto resources = load_tag_resources(config, taggers);
    const std::size_t workers = resolve_workers(workers_flag(a.workers_opt, a.workers), config);
    err << "tagging " << a.input << " with " << workers << " worker(s)\n";
    const auto summary = tag_directory(a.input, a.output, taggers, resources, workers, config.parse_mode);
    for (const auto& t : taggers) {
        out << t.directory() << '\t' << summary.per_tagger.at(t.directory()) << '\n';
    }
    if (summary.parse_skipped > 0) err << "skipped " << summary.parse_skipped << " malformed line(s)\n";
    return kExitOk;
}

struct DedupeArgs {
    std::string input, output = "attributes", mode, bloom_in, bloom_out, config;
    double fpr = 0.01;
    std::uint64_t expected_items = 0;
    std::uint64_t salt = 0;
    CLI::Option* mode_opt = nullptr;
    CLI::Option* fpr_opt = nullptr;
    CLI::Option* expected_opt = nullptr;
    CLI::Option* salt_opt = nullptr;
};

int cmd_dedupe(const DedupeArgs& a, std::ostream& out, std::ostream& err) {
    auto config = load_or_default(a.config);
    auto& d = config.dedup;
    if (a.mode_opt->count()) d.mode = parse_dedup_mode(a.mode);
    if (a.fpr_opt->count()) d.fpr = a.fpr;
    if (a.expected_opt->count()) d.expected_items = a.expected_items;
    if (a.salt_opt->count()) d.salt = a.salt;
    if (!a.bloom_in.empty()) d.bloom_in = a.bloom_in;
    if (!a.bloom_out.empty()) d.bloom_out = a.bloom_out;
    if (!(d.fpr > 0.0 && d.fpr < 1.0)) throw ConfigError("--fpr must lie in (0, 1)");
    if (d.expected_items == 0) throw ConfigError("--expected-items must be positive");

    BloomFilter filter = d.bloom_in.empty() ? BloomFilter::with_capacity(d.expected_items, d.fpr, d.salt)
                                            : BloomFilter::load(d.bloom_in);
    const fs::path sidecars = fs::path(a.output) / (std::string("dedup_") + to_string(d.mode));
    err << "dedupe (" << to_string(d.mode) << ") " << a.input << " -> " << sidecars.string() << '\n';
    const auto s = dedup_directory(a.input, sidecars, d.mode, filter, d.expected_items, config.parse_mode);
    if (!d.bloom_out.empty()) filter.save(d.bloom_out);
    if (s.capacity_warnings > 0) {
        err << "warning: filter exceeded its expected capacity by " << s.capacity_warnings
            << " insert(s); false-positive rate is above target\n";
    }
    json j;
    j["mode"] = to_string(d.mode);
    j["shards"] = s.shards;
    j["documents"] = s.documents;
    j["duplicates"] = s.duplicates;
    j["skipped_empty"] = s.skipped_empty;
    j["capacity_warnings"] = s.capacity_warnings;
    j["parse_skipped"] = s.parse_skipped;
    j["bloom_items"] = filter.item_count();
    out << j.dump(2) << '\n';
    return kExitOk;
}

struct TrainArgs {
    std::string data, label, model_out, config;
    TrainingParams params;
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
    const auto config = load_or_default(a.config);
    const auto tokenizer = make_configured_tokenizer(config);
    const auto examples = read_labeled_examples(a.data);
    err << "training '" << a.label << "' on " << examples.size() << " example(s)\n";
    TrainingReport report;
    const auto model = train_classifier(examples, *tokenizer, a.params, a.label, &report);
    model.save(a.model_out);
    for (std::size_t e = 0; e < report.epoch_loss.size(); ++e) {
        err << "epoch " << e + 1 << " loss " << report.epoch_loss[e] << '\n';
    }
    out << "accuracy " << format_number(report.accuracy) << '\n';
    return kExitOk;
}

struct BuildSetArgs {
    std::string input, lexicon, output, extra, config;
    std::size_t min_distinct = 3;
};

int cmd_build_training_set(const BuildSetArgs& a, std::ostream& out, std::ostream& err) {
    const auto config = load_or_default(a.config);
    const auto tokenizer = make_configured_tokenizer(config);
    const auto lexicon = Lexicon::load(a.lexicon, fs::path(a.lexicon).stem().string());
    std::vector<Document> docs;
    for (const auto& rel : list_shards(a.input)) {
        auto shard = read_shard(fs::path(a.input) / rel, config.parse_mode);
        docs.insert(docs.end(), std::make_move_iterator(shard.begin()), std::make_move_iterator(shard.end()));
    }
    std::vector<std::string> extra;
    if (!a.extra.empty()) {
        for (auto& ex : read_labeled_examples(a.extra)) extra.push_back(std::move(ex.text));
    }
    const auto examples = build_training_set(docs, lexicon, a.min_distinct, *tokenizer, extra);
    write_labeled_examples(a.output, examples);
    std::size_t positives = 0;
    for (const auto& e : examples) positives += e.label ? 1 : 0;
    err << "wrote " << examples.size() << " example(s) to " << a.output << '\n';
    out << "positives " << positives << "\nnegatives " << examples.size() - positives << '\n';
    return kExitOk;
}

struct MixArgs {
    std::string input, policy, output, config;
    std::vector<std::string> attrs;
    std::size_t workers = 1;
    CLI::Option* workers_opt = nullptr;
};

int cmd_mix(const MixArgs& a, std::ostream& out, std::ostream& err) {
    const auto config = load_or_default(a.config);
    const auto tokenizer = make_configured_tokenizer(config);
    PolicySpec policy;
    MixOptions options;
    if (!a.policy.empty()) {
        options.config_text = read_file(a.policy);
        policy = parse_policy_json(options.config_text);
    } else if (!a.config.empty()) {
        policy = effective_policy(config);
        options.config_text = config_to_json(config);
    } else {
        throw ConfigError("mix needs --policy or --config");
    }
    options.parse_mode = config.parse_mode;
    options.workers = resolve_workers(workers_flag(a.workers_opt, a.workers), config);
    options.timestamp = reproducible_timestamp();
    std::vector<fs::path> attrs(a.attrs.begin(), a.attrs.end());
    err << "mixing " << a.input << " with " << attrs.size() << " attribute dir(s)\n";
    const auto report = mix(a.input, attrs, policy, a.output, *tokenizer, options);
    out << report.to_json() << '\n';
    return kExitOk;
}

struct StatsArgs {
    std::string input, config, metric = "word_count";
    std::size_t bins = 0;
    std::size_t workers = 1;
    CLI::Option* workers_opt = nullptr;
};

json histogram_json(const std::vector<double>& values, std::size_t bins) {
    json arr = json::array();
    for (const auto& b : histogram(values, bins)) {
        arr.push_back({{"lower", b.lower},
                       {"upper", b.upper},
                       {"frequency", b.frequency},
                       {"cumulative", b.cumulative},
                       {"proportion", b.proportion},
                       {"cumulative_proportion", b.cumulative_proportion}});
    }
    return arr;
}

int cmd_stats(const StatsArgs& a, std::ostream& out, std::ostream&) {
    const auto config = load_or_default(a.config);
    const auto tokenizer = make_configured_tokenizer(config);
    const std::size_t workers = resolve_workers(workers_flag(a.workers_opt, a.workers), config);
    const auto m = measure_corpus(a.input, *tokenizer, workers, config.parse_mode);
    const auto& ints = a.metric == "word_count" ? m.word_counts : m.median_word_lengths;
    const std::vector<double> values(ints.begin(), ints.end());
    const Summary s = summarize(values);

    json j;
    j["metric"] = a.metric;
    j["tokenizer"] = to_string(tokenizer->mode());
    j["count"] = s.count;
    j["mean"] = optional_number(s.mean);
    j["std"] = optional_number(s.std);
    j["min"] = optional_number(s.min);
    j["max"] = optional_number(s.max);
    json pct = json::object();
    for (const auto& [p, v] : s.percentiles) pct[format_number(p)] = v;
    j["percentiles"] = s.count == 0 ? json(nullptr) : pct;
    if (a.metric == "median_word_length") {
        json counts = json::array();
        for (const auto& [value, n] : value_counts(ints)) {
            counts.push_back({{"value", value},
                              {"count", n},
                              {"proportion", 100.0 * static_cast<double>(n) / static_cast<double>(s.count)}});
        }
        j["value_counts"] = std::move(counts);
    }
    if (a.bins > 0) j["histogram"] = histogram_json(values, a.bins);
    if (m.parse_skipped > 0) j["parse_skipped"] = m.parse_skipped;
    out << j.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thai web-corpus cleaning: tag, dedupe, train filters, mix, stats", "sieve"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sieve 0.1.0");

    TagArgs tag;
    auto* tag_cmd = app.add_subcommand("tag", "Write attribute sidecars for a shard directory");
    tag_cmd->add_option("--input", tag.input, "Document shard directory")->required();
    tag_cmd->add_option("--output", tag.output, "Attribute root; one sub-directory per tagger")->required();
    tag_cmd->add_option("--taggers", tag.taggers, "Comma list of lang,c4,gopher,pii,classify:NAME")->required();
    tag_cmd->add_option("--config", tag.config, "Pipeline config JSON");
    tag.workers_opt = tag_cmd->add_option("--workers", tag.workers, "Worker threads")->check(CLI::PositiveNumber);

    DedupeArgs dd;
    auto* dd_cmd = app.add_subcommand("dedupe", "Flag URL or exact-text duplicates with a Bloom filter");
    dd_cmd->add_option("--input", dd.input, "Document shard directory")->required();
    dd.mode_opt = dd_cmd->add_option("--mode", dd.mode, "url or doc")->check(CLI::IsMember({"url", "doc", "doc_text"}));
    dd.fpr_opt = dd_cmd->add_option("--fpr", dd.fpr, "Target false-positive rate");
    dd.expected_opt = dd_cmd->add_option("--expected-items", dd.expected_items, "Expected distinct keys");
    dd.salt_opt = dd_cmd->add_option("--salt", dd.salt, "Hash seed for a fresh filter");
    dd_cmd->add_option("--bloom-in", dd.bloom_in, "Resume from a saved filter");
    dd_cmd->add_option("--bloom-out", dd.bloom_out, "Save the filter after the pass");
    dd_cmd->add_option("--output", dd.output, "Attribute root (sidecars go to dedup_<mode>/)")->capture_default_str();
    dd_cmd->add_option("--config", dd.config, "Pipeline config JSON");

    TrainArgs tr;
    auto* tr_cmd = app.add_subcommand("train-filter", "Train a hashed n-gram content classifier");
    tr_cmd->add_option("--data", tr.data, "Labeled JSONL (text, label)")->required();
    tr_cmd->add_option("--label", tr.label, "Classifier name, e.g. gambling")->required();
    tr_cmd->add_option("--out", tr.model_out, "Model output path")->required();
    tr_cmd->add_option("--epochs", tr.params.epochs)->capture_default_str()->check(CLI::PositiveNumber);
    tr_cmd->add_option("--lr", tr.params.learning_rate)->capture_default_str();
    tr_cmd->add_option("--l2", tr.params.l2)->capture_default_str();
    tr_cmd->add_option("--seed", tr.params.seed)->capture_default_str();
    tr_cmd->add_option("--dim", tr.params.dim, "Feature dimension (power of two)")->capture_default_str();
    tr_cmd->add_option("--ngram-max", tr.params.ngram_max)->capture_default_str();
    tr_cmd->add_option("--config", tr.config, "Pipeline config JSON (tokenizer)");

    BuildSetArgs bs;
    auto* bs_cmd = app.add_subcommand("build-training-set", "Label documents by lexicon matches");
    bs_cmd->add_option("--input", bs.input, "Document shard directory")->required();
    bs_cmd->add_option("--lexicon", bs.lexicon, "Class lexicon file")->required();
    bs_cmd->add_option("--out", bs.output, "Labeled JSONL output")->required();
    bs_cmd->add_option("--min-distinct", bs.min_distinct)->capture_default_str();
    bs_cmd->add_option("--extra-positives", bs.extra, "JSONL of externally labeled positive texts");
    bs_cmd->add_option("--config", bs.config, "Pipeline config JSON (tokenizer)");

    MixArgs mx;
    auto* mx_cmd = app.add_subcommand("mix", "Apply a filter policy and write the cleaned corpus");
    mx_cmd->add_option("--input", mx.input, "Document shard directory")->required();
    mx_cmd->add_option("--attrs", mx.attrs, "Attribute directories")->required()->delimiter(',');
    mx_cmd->add_option("--policy", mx.policy, "Policy JSON (defaults to the config's policy)");
    mx_cmd->add_option("--output", mx.output, "Output directory")->required();
    mx_cmd->add_option("--config", mx.config, "Pipeline config JSON");
    mx.workers_opt = mx_cmd->add_option("--workers", mx.workers)->check(CLI::PositiveNumber);

    StatsArgs st;
    auto* st_cmd = app.add_subcommand("stats", "Descriptive statistics of word counts or word lengths");
    st_cmd->add_option("--input", st.input, "Document shard directory")->required();
    st_cmd->add_option("--config", st.config, "Pipeline config JSON (tokenizer)");
    st_cmd->add_option("--metric", st.metric)
        ->capture_default_str()
        ->check(CLI::IsMember({"word_count", "median_word_length"}));
    st_cmd->add_option("--bins", st.bins, "Equal-width histogram bins");
    st.workers_opt = st_cmd->add_option("--workers", st.workers)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*tag_cmd) return cmd_tag(tag, out, err);
        if (*dd_cmd) return cmd_dedupe(dd, out, err);
        if (*tr_cmd) return cmd_train(tr, out, err);
        if (*bs_cmd) return cmd_build_training_set(bs, out, err);
        if (*mx_cmd) return cmd_mix(mx, out, err);
        if (*st_cmd) return cmd_stats(st, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const TrainingError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace sieve::cli
