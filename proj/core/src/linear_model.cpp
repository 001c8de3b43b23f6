#include "sieve/linear_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>

#include <json.hpp>

#include "sieve/error.hpp"
#include "sieve/hashing.hpp"
#include "sieve/shard_io.hpp"

namespace sieve {

namespace {

constexpr char kMagic[4] = {'L', 'T', 'X', 'M'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint64_t kFeatureSeed = 0x5eed5eedULL;

double sigmoid(double z) noexcept {
    double p = 0.0;
    if (z >= 0) {
        p = 1.0 / (1.0 + std::exp(-z));
    } else {
        const double e = std::exp(z);
        p = e / (1.0 + e);
    }
    constexpr double lo = std::numeric_limits<double>::denorm_min();
    const double hi = std::nextafter(1.0, 0.0);
    return std::clamp(p, lo, hi);
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f32(std::string& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

std::uint32_t get_u32(const std::string& in, std::size_t& pos, const std::filesystem::path& path) {
    if (pos + 4 > in.size()) throw FormatError(path.string() + ": truncated model file");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    }
    pos += 4;
    return v;
}

float get_f32(const std::string& in, std::size_t& pos, const std::filesystem::path& path) {
    return std::bit_cast<float>(get_u32(in, pos, path));
}

bool is_power_of_two(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

SparseVector featurize_tokens(std::span<const std::string_view> tokens, std::uint32_t dim,
                              std::uint32_t ngram_max) {
    SparseVector raw;
    raw.reserve(tokens.size() * ngram_max);
    const std::uint32_t mask = dim - 1;
    std::string gram;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        gram.assign(tokens[i]);
        raw.emplace_back(static_cast<std::uint32_t>(hash64(gram, kFeatureSeed) & mask), 1.0F);
        for (std::uint32_t n = 2; n <= ngram_max && i + n <= tokens.size(); ++n) {
            gram.push_back(' ');
            gram.append(tokens[i + n - 1]);
            raw.emplace_back(static_cast<std::uint32_t>(hash64(gram, kFeatureSeed) & mask), 1.0F);
        }
    }
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector out;
    out.reserve(raw.size());
    for (const auto& [bucket, count] : raw) {
        if (!out.empty() && out.back().first == bucket) {
            out.back().second += count;
        } else {
            out.emplace_back(bucket, count);
        }
    }
    // Unit L2 norm, so document length does not scale the logit.
    double norm = 0.0;
    for (const auto& [bucket, count] : out) norm += static_cast<double>(count) * count;
    if (norm > 0.0) {
        const double inv = 1.0 / std::sqrt(norm);
        for (auto& [bucket, count] : out) count = static_cast<float>(count * inv);
    }
    return out;
}

SparseVector featurize(std::string_view text, const Tokenizer& tokenizer, std::uint32_t dim,
                       std::uint32_t ngram_max) {
    if (!is_power_of_two(dim)) throw ConfigError("feature dimension must be a power of two");
    const auto tokens = tokenizer.tokenize(text);
    return featurize_tokens(tokens, dim, ngram_max);
}

LinearTextModel::LinearTextModel(std::string label_name, std::uint32_t dim,
                                 std::uint32_t ngram_max)
    : label_name_(std::move(label_name)), dim_(dim), ngram_max_(ngram_max) {
    if (!is_power_of_two(dim)) {
        throw ConfigError("feature dimension must be a power of two, got " + std::to_string(dim));
    }
    if (ngram_max < 1) throw ConfigError("ngram_max must be >= 1");
    weights_.assign(dim, 0.0F);
}

double LinearTextModel::logit(const SparseVector& features) const noexcept {
    double z = bias_;
    for (const auto& [bucket, count] : features) {
        z += static_cast<double>(weights_[bucket]) * static_cast<double>(count);
    }
    return z;
}

double LinearTextModel::predict(const SparseVector& features) const noexcept {
    return sigmoid(logit(features));
}

double LinearTextModel::predict(std::string_view text, const Tokenizer& tokenizer) const {
    return predict(featurize(text, tokenizer, dim_, ngram_max_));
}

void LinearTextModel::save(const std::filesystem::path& path) const {
    std::string out;
    out.reserve(24 + label_name_.size() + 4 * weights_.size());
    out.append(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(label_name_.size()));
    out += label_name_;
    put_u32(out, dim_);
    put_u32(out, ngram_max_);
    put_f32(out, bias_);
    for (float w : weights_) put_f32(out, w);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot create " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed: " + path.string());
}

LinearTextModel LinearTextModel::load(const std::filesystem::path& path,
                                      std::optional<std::uint32_t> expected_dim) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open model " + path.string());
    const std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (in.size() < 4 || in.compare(0, 4, kMagic, 4) != 0) {
        throw FormatError(path.string() + ": bad model magic");
    }
    std::size_t pos = 4;
    const auto version = get_u32(in, pos, path);
    if (version != kVersion) {
        throw FormatError(path.string() + ": unsupported model version " + std::to_string(version));
    }
    const auto label_len = get_u32(in, pos, path);
    if (pos + label_len > in.size()) throw FormatError(path.string() + ": truncated model label");
    std::string label = in.substr(pos, label_len);
    pos += label_len;
    const auto dim = get_u32(in, pos, path);
    const auto ngram_max = get_u32(in, pos, path);
    if (!is_power_of_two(dim) || ngram_max < 1) {
        throw FormatError(path.string() + ": invalid model header");
    }
    if (expected_dim && *expected_dim != dim) {
        throw ConfigError(path.string() + ": model feature dimension " + std::to_string(dim) +
                          " does not match configured dimension " + std::to_string(*expected_dim));
    }
    const float bias = get_f32(in, pos, path);
    if (in.size() - pos != 4ULL * dim) {
        throw FormatError(path.string() + ": weight array has wrong length");
    }
    LinearTextModel model(std::move(label), dim, ngram_max);
    model.bias_ = bias;
    for (std::uint32_t i = 0; i < dim; ++i) model.weights_[i] = get_f32(in, pos, path);
    return model;
}

// ---------------------------------------------------------------------------
// Training

namespace {

double log_loss(double p, bool label) {
    constexpr double eps = 1e-15;
    return label ? -std::log(std::max(p, eps)) : -std::log(std::max(1.0 - p, eps));
}

double mean_loss(const LinearTextModel& model, std::span<const SparseVector> features,
                 std::span<const LabeledExample> examples) {
    double total = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        total += log_loss(model.predict(features[i]), examples[i].label);
    }
    return total / static_cast<double>(features.size());
}

}  // namespace

LinearTextModel train_classifier(std::span<const LabeledExample> examples,
                                 const Tokenizer& tokenizer, const TrainingParams& params,
                                 std::string label_name, TrainingReport* report) {
    const auto positives = static_cast<std::size_t>(
        std::count_if(examples.begin(), examples.end(), [](const auto& e) { return e.label; }));
    const std::size_t negatives = examples.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw TrainingError("training set needs at least one positive and one negative example (" +
                            std::to_string(positives) + " positive, " + std::to_string(negatives) +
                            " negative)");
    }
    if (params.epochs < 1) throw TrainingError("epochs must be >= 1");
    if (!(params.learning_rate > 0.0)) throw TrainingError("learning rate must be positive");

    LinearTextModel model(std::move(label_name), params.dim, params.ngram_max);
    std::vector<SparseVector> features;
    features.reserve(examples.size());
    for (const auto& e : examples) {
        features.push_back(featurize(e.text, tokenizer, params.dim, params.ngram_max));
    }

    std::vector<std::size_t> order(examples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(params.seed);

    auto weights = model.mutable_weights();
    double bias = model.bias();
    const double total_steps = static_cast<double>(params.epochs) * static_cast<double>(order.size());
    double step = 0.0;
    TrainingReport local;

    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        // Fisher-Yates with raw engine output keeps the order identical
        // across standard library implementations.
        for (std::size_t i = order.size(); i-- > 1;) {
            std::swap(order[i], order[rng() % (i + 1)]);
        }
        for (const std::size_t idx : order) {
            const double lr = params.learning_rate * (1.0 - step / total_steps);
            step += 1.0;
            const auto& x = features[idx];
            double z = bias;
            for (const auto& [bucket, count] : x) z += static_cast<double>(weights[bucket]) * count;
            const double g = sigmoid(z) - (examples[idx].label ? 1.0 : 0.0);
            for (const auto& [bucket, count] : x) {
                const double w = weights[bucket];
                weights[bucket] = static_cast<float>(w - lr * (g * count + params.l2 * w));
            }
            bias -= lr * g;
        }
        model.set_bias(static_cast<float>(bias));
        local.epoch_loss.push_back(mean_loss(model, features, examples));
    }

    std::size_t correct = 0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        if ((model.predict(features[i]) >= 0.5) == examples[i].label) ++correct;
    }
    local.accuracy = static_cast<double>(correct) / static_cast<double>(features.size());
    local.positives = positives;
    local.negatives = negatives;
    if (report) *report = std::move(local);
    return model;
}

double training_accuracy(const LinearTextModel& model, std::span<const LabeledExample> examples,
                         const Tokenizer& tokenizer, double threshold) {
    if (examples.empty()) return 0.0;
    std::size_t correct = 0;
    for (const auto& e : examples) {
        if ((model.predict(e.text, tokenizer) >= threshold) == e.label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(examples.size());
}

bool label_by_lexicon(std::string_view text, const Lexicon& lexicon, std::size_t min_distinct,
                      const Tokenizer& tokenizer) {
    StringSet hits;
    for (auto t : tokenizer.tokenize(text)) {
        if (lexicon.contains(t)) {
            hits.emplace(t);
            if (hits.size() >= min_distinct) return true;
        }
    }
    return hits.size() >= min_distinct;
}

std::vector<LabeledExample> build_training_set(std::span<const Document> docs,
                                               const Lexicon& lexicon, std::size_t min_distinct,
                                               const Tokenizer& tokenizer,
                                               std::span<const std::string> extra_positives) {
    std::vector<LabeledExample> out;
    out.reserve(docs.size() + extra_positives.size());
    for (const auto& d : docs) {
        out.push_back({d.text, label_by_lexicon(d.text, lexicon, min_distinct, tokenizer)});
    }
    for (const auto& t : extra_positives) out.push_back({t, true});
    return out;
}

std::vector<LabeledExample> read_labeled_examples(const std::filesystem::path& path) {
    using json = nlohmann::json;
    LineReader lines(path);
    std::vector<LabeledExample> out;
    std::string line;
    while (lines.next(line)) {
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(path.string(), lines.line_number(), e.what());
        }
        const auto text = j.find("text");
        const auto label = j.find("label");
        if (!j.is_object() || text == j.end() || !text->is_string() || label == j.end()) {
            throw SchemaError(path.string() + ":" + std::to_string(lines.line_number()) +
                              ": labeled example needs 'text' and 'label'");
        }
        bool value = false;
        if (label->is_boolean()) {
            value = label->get<bool>();
        } else if (label->is_number_integer() &&
                   (label->get<long long>() == 0 || label->get<long long>() == 1)) {
            value = label->get<long long>() == 1;
        } else {
            throw SchemaError(path.string() + ":" + std::to_string(lines.line_number()) +
                              ": label must be 0, 1, true or false");
        }
        out.push_back({text->get<std::string>(), value});
    }
    return out;
}

void write_labeled_examples(const std::filesystem::path& path,
                            std::span<const LabeledExample> examples) {
    using json = nlohmann::ordered_json;
    LineWriter writer(path);
    for (const auto& e : examples) {
        json j;
        j["text"] = e.text;
        j["label"] = e.label ? 1 : 0;
        writer.write(j.dump());
    }
    writer.close();
}

}  // namespace sieve
