#include <benchmark/benchmark.h>

#include "sieve/bloom_filter.hpp"
#include "sieve/config.hpp"
#include "sieve/gopher.hpp"
#include "sieve/lexicon.hpp"
#include "sieve/linear_model.hpp"
#include "sieve/pipeline.hpp"
#include "sieve/taggers.hpp"
#include "synthetic_corpus.hpp"

namespace {

using namespace sieve;

const std::vector<std::string>& documents() {
    static const std::vector<std::string> docs = [] {
        static const auto vocab = testing::Vocabulary::from_data_dir();
        testing::TextGenerator gen(vocab, 1);
        std::vector<std::string> out;
        for (int i = 0; i < 256; ++i) out.push_back(gen.document(300));
        return out;
    }();
    return docs;
}

std::size_t total_bytes() {
    std::size_t n = 0;
    for (const auto& d : documents()) n += d.size();
    return n;
}

const PipelineConfig& config() {
    static const auto c = load_config(testing::config_dir() / "pipeline.json");
    return c;
}

// Thai text without spaces forces the dictionary search on every run.
void BM_DictionaryTokenizer(benchmark::State& state) {
    const auto tokenizer = make_configured_tokenizer(config());
    std::vector<std::string> joined;
    for (const auto& d : documents()) {
        std::string s;
        for (char c : d) {
            if (c != ' ') s.push_back(c);
        }
        joined.push_back(std::move(s));
    }
    std::size_t bytes = 0;
    for (auto _ : state) {
        for (const auto& d : joined) {
            benchmark::DoNotOptimize(tokenizer->tokenize_spans(d));
            bytes += d.size();
        }
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_DictionaryTokenizer);

void BM_WhitespaceTokenizer(benchmark::State& state) {
    WhitespaceTokenizer ws;
    for (auto _ : state) {
        for (const auto& d : documents()) benchmark::DoNotOptimize(ws.tokenize_spans(d));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * total_bytes()));
}
BENCHMARK(BM_WhitespaceTokenizer);

void BM_GopherScores(benchmark::State& state) {
    WhitespaceTokenizer ws;
    const auto stop = Lexicon::load(config().stopwords, "stopwords");
    const auto markers = PhraseList::load(config().truncation_phrases);
    std::vector<std::vector<std::string_view>> tokens;
    for (const auto& d : documents()) tokens.push_back(ws.tokenize(d));
    for (auto _ : state) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            benchmark::DoNotOptimize(compute_gopher_scores(documents()[i], tokens[i], stop, markers));
        }
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * total_bytes()));
}
BENCHMARK(BM_GopherScores);

void BM_BloomTestAndInsert(benchmark::State& state) {
    std::vector<std::string> keys;
    for (int i = 0; i < 100000; ++i) keys.push_back("https://example.th/article/" + std::to_string(i));
    for (auto _ : state) {
        auto filter = BloomFilter::with_capacity(keys.size(), 0.01);
        for (const auto& k : keys) benchmark::DoNotOptimize(filter.test_and_insert(k));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * keys.size()));
}
BENCHMARK(BM_BloomTestAndInsert);

void BM_Featurize(benchmark::State& state) {
    WhitespaceTokenizer ws;
    for (auto _ : state) {
        for (const auto& d : documents()) benchmark::DoNotOptimize(featurize(d, ws, kDefaultFeatureDim, 2));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * total_bytes()));
}
BENCHMARK(BM_Featurize);

}  // namespace

BENCHMARK_MAIN();
