#include <gtest/gtest.h>

#include <fstream>

#include "sieve/bloom_filter.hpp"
#include "sieve/error.hpp"
#include "synthetic_corpus.hpp"

namespace sieve {
namespace {

TEST(BloomSizing, ThousandItemsAtOnePercent) {
    const auto s = BloomFilter::optimal_sizing(1000, 0.01);
    EXPECT_EQ(s.bit_count, 9586U);
    EXPECT_EQ(s.hash_count, 7U);
}

TEST(BloomSizing, TinyFilterIsRaisedToMinimum) {
    const auto s = BloomFilter::optimal_sizing(1, 0.5);
    EXPECT_EQ(s.bit_count, 8U);
    EXPECT_EQ(s.hash_count, 1U);
}

TEST(BloomSizing, RejectsBadParameters) {
    EXPECT_THROW(BloomFilter::optimal_sizing(1000, 1.0), ParameterError);
    EXPECT_THROW(BloomFilter::optimal_sizing(1000, 0.0), ParameterError);
    EXPECT_THROW(BloomFilter::optimal_sizing(0, 0.01), ParameterError);
    EXPECT_THROW(BloomFilter(4, 1), ParameterError);
    EXPECT_THROW(BloomFilter(64, 0), ParameterError);
    EXPECT_THROW(BloomFilter(64, 33), ParameterError);
}

TEST(BloomFilter, NoFalseNegatives) {
    auto f = BloomFilter::with_capacity(5000, 0.01, 17);
    for (int i = 0; i < 5000; ++i) f.insert("key-" + std::to_string(i));
    for (int i = 0; i < 5000; ++i) EXPECT_TRUE(f.contains("key-" + std::to_string(i)));
    EXPECT_EQ(f.item_count(), 5000U);
}

TEST(BloomFilter, FalsePositiveRateNearTarget) {
    for (double p : {0.01, 0.001}) {
        auto f = BloomFilter::with_capacity(20000, p);
        for (int i = 0; i < 20000; ++i) f.insert("member/" + std::to_string(i));
        int hits = 0;
        const int probes = 200000;
        for (int i = 0; i < probes; ++i) hits += f.contains("other/" + std::to_string(i)) ? 1 : 0;
        EXPECT_LE(static_cast<double>(hits) / probes, 1.5 * p) << "p=" << p;
    }
}

TEST(BloomFilter, TestAndInsert) {
    BloomFilter f(1024, 3);
    EXPECT_FALSE(f.test_and_insert("a"));
    EXPECT_TRUE(f.test_and_insert("a"));
}

TEST(BloomFilter, BitsOnlyGrow) {
    BloomFilter f(4096, 4);
    std::uint64_t last = 0;
    for (int i = 0; i < 500; ++i) {
        f.insert(std::to_string(i));
        EXPECT_GE(f.bits_set(), last);
        last = f.bits_set();
    }
}

TEST(BloomFilter, SaltChangesProbes) {
    BloomFilter a(4096, 4, 1);
    BloomFilter b(4096, 4, 2);
    a.insert("x");
    b.insert("x");
    EXPECT_NE(a, b);
}

TEST(BloomFilter, SaveLoadRoundTrip) {
    testing::TempDir dir;
    auto f = BloomFilter::with_capacity(1000, 0.01, 42);
    for (int i = 0; i < 700; ++i) f.insert(std::to_string(i * 7));
    f.save(dir / "f.bloom");
    const auto g = BloomFilter::load(dir / "f.bloom");
    EXPECT_EQ(f, g);
    EXPECT_EQ(g.salt(), 42U);
    for (int i = 0; i < 700; ++i) EXPECT_TRUE(g.contains(std::to_string(i * 7)));
}

TEST(BloomFilter, EmptyFilterRoundTrip) {
    testing::TempDir dir;
    BloomFilter f(8, 1);
    f.save(dir / "e.bloom");
    EXPECT_EQ(BloomFilter::load(dir / "e.bloom"), f);
}

TEST(BloomFilter, TruncatedFileIsFormatError) {
    testing::TempDir dir;
    BloomFilter f(4096, 3);
    f.save(dir / "f.bloom");
    const auto bytes = testing::read_text_file(dir / "f.bloom");
    for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{20}, bytes.size() - 1}) {
        std::ofstream(dir / "t.bloom", std::ios::binary).write(bytes.data(), static_cast<std::streamsize>(cut));
        EXPECT_THROW(BloomFilter::load(dir / "t.bloom"), FormatError) << cut;
    }
    auto bad = bytes;
    bad[0] = 'X';
    std::ofstream(dir / "m.bloom", std::ios::binary).write(bad.data(), static_cast<std::streamsize>(bad.size()));
    EXPECT_THROW(BloomFilter::load(dir / "m.bloom"), FormatError);
}

}  // namespace
}  // namespace sieve
