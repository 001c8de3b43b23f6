#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sieve/document.hpp"
#include "sieve/lexicon.hpp"
#include "sieve/tokenizer.hpp"

namespace sieve {

inline constexpr std::uint32_t kDefaultFeatureDim = 1U << 20;
inline constexpr std::uint32_t kDefaultNgramMax = 2;

// Sorted (bucket, value) pairs with unique buckets.
using SparseVector = std::vector<std::pair<std::uint32_t, float>>;

// Hashed bag of token n-grams (1..ngram_max) into [0, dim). N-grams are
// hashed as their tokens joined by a single space, which is unambiguous
// because tokens never contain whitespace. Bucket counts are scaled to unit
// L2 norm. `dim` must be a power of two.
SparseVector featurize(std::string_view text, const Tokenizer& tokenizer, std::uint32_t dim,
                       std::uint32_t ngram_max);
SparseVector featurize_tokens(std::span<const std::string_view> tokens, std::uint32_t dim,
                              std::uint32_t ngram_max);

struct TrainingParams {
    int epochs = 5;
    double learning_rate = 1.0;
    double l2 = 1e-6;
    std::uint64_t seed = 0;
    std::uint32_t dim = kDefaultFeatureDim;
    std::uint32_t ngram_max = kDefaultNgramMax;
};

struct LabeledExample {
    std::string text;
    bool label = false;
};

// Binary logistic classifier over hashed n-gram features.
class LinearTextModel {
public:
    // Zero weights; throws ConfigError unless dim is a power of two and
    // ngram_max >= 1.
    LinearTextModel(std::string label_name, std::uint32_t dim = kDefaultFeatureDim,
                    std::uint32_t ngram_max = kDefaultNgramMax);

    const std::string& label_name() const noexcept { return label_name_; }
    std::uint32_t dim() const noexcept { return dim_; }
    std::uint32_t ngram_max() const noexcept { return ngram_max_; }
    float bias() const noexcept { return bias_; }
    std::span<const float> weights() const noexcept { return weights_; }
    std::span<float> mutable_weights() noexcept { return weights_; }
    void set_bias(float b) noexcept { bias_ = b; }

    double logit(const SparseVector& features) const noexcept;
    // Probability of the positive class, strictly inside (0, 1).
    double predict(const SparseVector& features) const noexcept;
    double predict(std::string_view text, const Tokenizer& tokenizer) const;

    // Layout, little-endian: "LTXM", u32 version, u32 label length, label
    // bytes, u32 dim, u32 ngram_max, f32 bias, dim x f32 weights.
    void save(const std::filesystem::path& path) const;
    // Throws FormatError on a malformed file and ConfigError when
    // `expected_dim` is given and differs from the stored dimension.
    static LinearTextModel load(const std::filesystem::path& path,
                                std::optional<std::uint32_t> expected_dim = std::nullopt);

    bool operator==(const LinearTextModel&) const = default;

private:
    std::string label_name_;
    std::uint32_t dim_;
    std::uint32_t ngram_max_;
    float bias_ = 0.0F;
    std::vector<float> weights_;
};

struct TrainingReport {
    // Mean log loss over the training set after each epoch.
    std::vector<double> epoch_loss;
    double accuracy = 0.0;
    std::size_t positives = 0;
    std::size_t negatives = 0;
};

// Stochastic gradient descent on logistic loss. Example order is shuffled
// each epoch from `params.seed`; the learning rate decays linearly to zero
// over the run. Throws TrainingError without at least one example of each
// class.
LinearTextModel train_classifier(std::span<const LabeledExample> examples,
                                 const Tokenizer& tokenizer, const TrainingParams& params,
                                 std::string label_name, TrainingReport* report = nullptr);

double training_accuracy(const LinearTextModel& model, std::span<const LabeledExample> examples,
                         const Tokenizer& tokenizer, double threshold = 0.5);

// True iff the text holds at least `min_distinct` distinct lexicon tokens.
bool label_by_lexicon(std::string_view text, const Lexicon& lexicon, std::size_t min_distinct,
                      const Tokenizer& tokenizer);

// Labels `docs` with label_by_lexicon and appends `extra_positives`
// (externally labeled texts) as positives.
std::vector<LabeledExample> build_training_set(std::span<const Document> docs,
                                               const Lexicon& lexicon, std::size_t min_distinct,
                                               const Tokenizer& tokenizer,
                                               std::span<const std::string> extra_positives = {});

// JSONL with keys `text` and `label` (0/1 or boolean).
std::vector<LabeledExample> read_labeled_examples(const std::filesystem::path& path);
void write_labeled_examples(const std::filesystem::path& path,
                            std::span<const LabeledExample> examples);

}  // namespace sieve
