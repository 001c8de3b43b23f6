#include "sieve/pipeline.hpp"

#include <set>

#include "sieve/error.hpp"
#include "sieve/gopher.hpp"
#include "sieve/parallel.hpp"
#include "sieve/taggers.hpp"

namespace sieve {

namespace fs = std::filesystem;

std::string TaggerSpec::directory() const {
    switch (kind) {
        case TaggerKind::Language: return "lang";
        case TaggerKind::C4: return "c4";
        case TaggerKind::Gopher: return "gopher";
        case TaggerKind::Pii: return "pii";
        case TaggerKind::Classify: return "classify_" + classifier;
    }
    return {};
}

TaggerSpec parse_tagger(std::string_view name) {
    if (name == "lang") return {TaggerKind::Language, {}};
    if (name == "c4") return {TaggerKind::C4, {}};
    if (name == "gopher") return {TaggerKind::Gopher, {}};
    if (name == "pii") return {TaggerKind::Pii, {}};
    constexpr std::string_view prefix = "classify:";
    if (name.starts_with(prefix) && name.size() > prefix.size()) {
        return {TaggerKind::Classify, std::string(name.substr(prefix.size()))};
    }
    throw ConfigError("unknown tagger '" + std::string(name) +
                      "' (expected lang, c4, gopher, pii or classify:NAME)");
}

std::vector<TaggerSpec> parse_tagger_list(std::string_view list) {
    std::vector<TaggerSpec> out;
    std::set<std::string> seen;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string_view item =
            list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (item.empty()) throw ConfigError("empty entry in tagger list");
        auto spec = parse_tagger(item);
        if (!seen.insert(spec.directory()).second) {
            throw ConfigError("tagger '" + std::string(item) + "' listed twice");
        }
        out.push_back(std::move(spec));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::shared_ptr<const Tokenizer> make_configured_tokenizer(const PipelineConfig& config) {
    return make_tokenizer(config.tokenizer, config.dictionary);
}

TagResources load_tag_resources(const PipelineConfig& config, const std::vector<TaggerSpec>& taggers) {
    TagResources r;
    r.tokenizer = make_configured_tokenizer(config);
    for (const auto& t : taggers) {
        switch (t.kind) {
            case TaggerKind::C4:
                if (config.naughty_words.empty()) throw ConfigError("the c4 tagger needs lexicons.naughty");
                r.naughty = Lexicon::load(config.naughty_words, "naughty");
                break;
            case TaggerKind::Gopher:
                if (config.stopwords.empty()) throw ConfigError("the gopher tagger needs lexicons.stopwords");
                r.stopwords = Lexicon::load(config.stopwords, "stopwords");
                if (!config.truncation_phrases.empty()) {
                    r.truncation_markers = PhraseList::load(config.truncation_phrases);
                }
                break;
            case TaggerKind::Classify: {
                const ClassifierConfig* found = nullptr;
                for (const auto& c : config.classifiers) {
                    if (c.name == t.classifier) found = &c;
                }
                if (!found) throw ConfigError("no classifier named '" + t.classifier + "' in config");
                auto model = LinearTextModel::load(found->model, found->dim);
                r.models.emplace(t.classifier, std::move(model));
                break;
            }
            case TaggerKind::Language:
            case TaggerKind::Pii:
                break;
        }
    }
    return r;
}

AttributeRecord run_tagger(const TaggerSpec& tagger, const Document& doc,
                           std::span<const TokenSpan> tokens, const TagResources& resources) {
    AttributeRecord record(doc.id);
    auto add_all = [&record](std::vector<SpanAttribute> attrs) {
        for (auto& a : attrs) record.add(std::move(a));
    };
    switch (tagger.kind) {
        case TaggerKind::Language:
            record.add(tag_language(doc));
            break;
        case TaggerKind::C4:
            add_all(tag_c4(doc, tokens, resources.naughty));
            break;
        case TaggerKind::Gopher:
            add_all(tag_gopher(doc, tokens, resources.stopwords, resources.truncation_markers));
            break;
        case TaggerKind::Pii:
            add_all(tag_pii(doc, resources.pii));
            break;
        case TaggerKind::Classify: {
            const auto it = resources.models.find(tagger.classifier);
            if (it == resources.models.end()) {
                throw ConfigError("classifier '" + tagger.classifier + "' is not loaded");
            }
            const auto& model = it->second;
            std::vector<std::string_view> views;
            views.reserve(tokens.size());
            for (const auto& t : tokens) views.push_back(t.view(doc.text));
            const double p = model.predict(featurize_tokens(views, model.dim(), model.ngram_max()));
            record.add(SpanAttribute::whole_document(classifier_attribute_name(tagger.classifier),
                                                     doc.text, p));
            break;
        }
    }
    return record;
}

namespace {

bool needs_tokens(const std::vector<TaggerSpec>& taggers) {
    for (const auto& t : taggers) {
        if (t.kind == TaggerKind::C4 || t.kind == TaggerKind::Gopher || t.kind == TaggerKind::Classify) {
            return true;
        }
    }
    return false;
}

}  // namespace

TagSummary tag_directory(const fs::path& input_dir, const fs::path& output_dir,
                         const std::vector<TaggerSpec>& taggers, const TagResources& resources,
                         std::size_t workers, ParseMode parse_mode) {
    std::error_code ec;
    if (!fs::is_directory(input_dir, ec)) throw IoError("input directory not found: " + input_dir.string());
    const auto shards = list_shards(input_dir);
    const bool tokenize = needs_tokens(taggers);

    struct ShardResult {
        std::uint64_t documents = 0;
        std::uint64_t skipped = 0;
    };
    std::vector<ShardResult> results(shards.size());
    parallel_for(shards.size(), workers, [&](std::size_t i) {
        const auto& rel = shards[i];
        ShardReader reader(input_dir / rel, parse_mode);
        std::vector<std::vector<AttributeRecord>> out(taggers.size());
        std::vector<TokenSpan> tokens;
        while (auto doc = reader.next()) {
            if (tokenize) tokens = resources.tokenizer->tokenize_spans(doc->text);
            for (std::size_t t = 0; t < taggers.size(); ++t) {
                out[t].push_back(run_tagger(taggers[t], *doc, tokens, resources));
            }
            ++results[i].documents;
        }
        results[i].skipped = reader.skipped();
        for (std::size_t t = 0; t < taggers.size(); ++t) {
            write_attributes(output_dir / taggers[t].directory() / rel, out[t]);
        }
    });

    TagSummary summary;
    summary.shards = shards.size();
    for (const auto& r : results) {
        summary.documents += r.documents;
        summary.parse_skipped += r.skipped;
    }
    for (const auto& t : taggers) summary.per_tagger[t.directory()] = summary.documents;
    return summary;
}

CorpusMeasurements measure_corpus(const fs::path& input_dir, const Tokenizer& tokenizer,
                                  std::size_t workers, ParseMode parse_mode) {
    std::error_code ec;
    if (!fs::is_directory(input_dir, ec)) throw IoError("input directory not found: " + input_dir.string());
    const auto shards = list_shards(input_dir);
    std::vector<CorpusMeasurements> parts(shards.size());
    parallel_for(shards.size(), workers, [&](std::size_t i) {
        ShardReader reader(input_dir / shards[i], parse_mode);
        auto& part = parts[i];
        while (auto doc = reader.next()) {
            const auto tokens = tokenizer.tokenize(doc->text);
            part.word_counts.push_back(static_cast<std::int64_t>(tokens.size()));
            part.median_word_lengths.push_back(
                static_cast<std::int64_t>(gopher::median_token_length(tokens)));
        }
        part.parse_skipped = reader.skipped();
    });
    CorpusMeasurements all;
    for (auto& p : parts) {
        all.word_counts.insert(all.word_counts.end(), p.word_counts.begin(), p.word_counts.end());
        all.median_word_lengths.insert(all.median_word_lengths.end(), p.median_word_lengths.begin(),
                                       p.median_word_lengths.end());
        all.parse_skipped += p.parse_skipped;
    }
    return all;
}

}  // namespace sieve
