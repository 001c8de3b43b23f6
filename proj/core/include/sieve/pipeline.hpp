#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sieve/config.hpp"
#include "sieve/lexicon.hpp"
#include "sieve/linear_model.hpp"
#include "sieve/pii.hpp"
#include "sieve/shard_io.hpp"
#include "sieve/tokenizer.hpp"

namespace sieve {

enum class TaggerKind { Language, C4, Gopher, Pii, Classify };

struct TaggerSpec {
    TaggerKind kind = TaggerKind::Language;
    std::string classifier;  // set for Classify

    // Sidecar directory name: lang, c4, gopher, pii or classify_NAME.
    std::string directory() const;
    bool operator==(const TaggerSpec&) const = default;
};

// Parses "lang", "c4", "gopher", "pii" or "classify:NAME"; ConfigError otherwise.
TaggerSpec parse_tagger(std::string_view name);
// Comma-separated list; duplicates are rejected.
std::vector<TaggerSpec> parse_tagger_list(std::string_view list);

// Loaded lexicons, models and the tokenizer the taggers share.
struct TagResources {
    std::shared_ptr<const Tokenizer> tokenizer;
    Lexicon naughty;
    Lexicon stopwords;
    PhraseList truncation_markers;
    PiiRules pii;
    std::map<std::string, LinearTextModel, std::less<>> models;
};

// Loads only what `taggers` need. Throws ConfigError for missing inputs.
TagResources load_tag_resources(const PipelineConfig& config, const std::vector<TaggerSpec>& taggers);

std::shared_ptr<const Tokenizer> make_configured_tokenizer(const PipelineConfig& config);

// Attribute record for one tagger over one document. `tokens` is the
// configured tokenizer's output for doc.text.
AttributeRecord run_tagger(const TaggerSpec& tagger, const Document& doc,
                           std::span<const TokenSpan> tokens, const TagResources& resources);

struct TagSummary {
    std::uint64_t shards = 0;
    std::uint64_t documents = 0;
    std::uint64_t parse_skipped = 0;
    // Documents tagged, per tagger directory name.
    std::map<std::string, std::uint64_t> per_tagger;
};

// Tags every shard under `input_dir`, writing `output_dir/<tagger>/<shard>`.
TagSummary tag_directory(const std::filesystem::path& input_dir,
                         const std::filesystem::path& output_dir,
                         const std::vector<TaggerSpec>& taggers, const TagResources& resources,
                         std::size_t workers, ParseMode parse_mode = ParseMode::Strict);

// Per-document statistics inputs, in canonical shard and line order.
struct CorpusMeasurements {
    std::vector<std::int64_t> word_counts;
    std::vector<std::int64_t> median_word_lengths;
    std::uint64_t parse_skipped = 0;
};

CorpusMeasurements measure_corpus(const std::filesystem::path& input_dir, const Tokenizer& tokenizer,
                                  std::size_t workers, ParseMode parse_mode = ParseMode::Strict);

}  // namespace sieve
