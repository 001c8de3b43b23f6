#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sieve/dedup.hpp"
#include "sieve/gopher.hpp"
#include "sieve/linear_model.hpp"
#include "sieve/policy.hpp"
#include "sieve/shard_io.hpp"
#include "sieve/tokenizer.hpp"

namespace sieve {

// Which Thai-share score the default quality stage gates on.
enum class ThaiFractionMetric { WordsWithThai, ConsonantCharRatio };

const char* to_string(ThaiFractionMetric metric) noexcept;
ThaiFractionMetric parse_thai_fraction_metric(std::string_view name);

struct DedupConfig {
    DedupMode mode = DedupMode::Url;
    std::uint64_t expected_items = 1'000'000;
    double fpr = 0.01;
    std::uint64_t salt = 0;
    std::filesystem::path bloom_in;
    std::filesystem::path bloom_out;

    bool operator==(const DedupConfig&) const = default;
};

struct ClassifierConfig {
    std::string name;
    std::filesystem::path model;
    double threshold = 0.5;
    // Feature dimension the model must have been trained with.
    std::uint32_t dim = kDefaultFeatureDim;

    bool operator==(const ClassifierConfig&) const = default;
};

// Everything a run needs besides its input and output directories. Empty
// paths mean "not configured".
struct PipelineConfig {
    TokenizerMode tokenizer = TokenizerMode::Simple;
    std::filesystem::path dictionary;

    std::filesystem::path stopwords;
    std::filesystem::path naughty_words;
    std::filesystem::path adult_words;
    std::filesystem::path gambling_words;
    std::filesystem::path truncation_phrases;

    GopherThresholds gopher;
    ThaiFractionMetric thai_fraction_metric = ThaiFractionMetric::WordsWithThai;
    double min_thai_ratio = 0.5;

    DedupConfig dedup;
    std::vector<ClassifierConfig> classifiers;

    // Explicit stages; default_policy() is used when absent.
    std::optional<PolicySpec> policy;
    std::optional<std::size_t> workers;
    ParseMode parse_mode = ParseMode::Strict;

    // Throws ConfigError when a referenced file is missing or a value is out
    // of range.
    void validate() const;

    bool operator==(const PipelineConfig&) const = default;
};

// Relative paths inside the JSON are resolved against `base_dir`.
PipelineConfig parse_config_json(std::string_view json_text,
                                 const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const PipelineConfig& config);

// language -> quality -> corrupt_unicode -> dedup -> content -> pii.
PolicySpec default_policy(const PipelineConfig& config);
PolicySpec effective_policy(const PipelineConfig& config);

// Command-line flag, then config, then SIEVE_WORKERS, then 1.
std::size_t resolve_workers(std::optional<std::size_t> flag, const PipelineConfig& config);

// Shortest text that parses back to the same double.
std::string format_number(double value);

}  // namespace sieve
