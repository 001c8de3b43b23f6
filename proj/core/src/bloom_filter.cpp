#include "sieve/bloom_filter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>

#include "sieve/error.hpp"
#include "sieve/hashing.hpp"

namespace sieve {

namespace {

constexpr char kMagic[4] = {'B', 'L', 'M', 'F'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 4 + 8 + 4 + 8 + 8;

template <typename T>
void put_le(std::string& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF));
    }
}

template <typename T>
T get_le(const std::string& in, std::size_t& pos) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    }
    pos += sizeof(T);
    return static_cast<T>(v);
}

}  // namespace

BloomFilter::BloomFilter(std::uint64_t bit_count, std::uint32_t hash_count, std::uint64_t salt)
    : bit_count_(bit_count), hash_count_(hash_count), salt_(salt) {
    if (bit_count < kMinBits) {
        throw ParameterError("bloom filter needs at least 8 bits, got " + std::to_string(bit_count));
    }
    if (hash_count < 1 || hash_count > kMaxHashes) {
        throw ParameterError("bloom filter hash count must be in [1, 32], got " +
                             std::to_string(hash_count));
    }
    words_.assign((bit_count + 63) / 64, 0);
}

BloomFilter::Sizing BloomFilter::optimal_sizing(std::uint64_t expected_items, double target_fpr) {
    if (expected_items == 0) throw ParameterError("expected_items must be >= 1");
    if (!(target_fpr > 0.0 && target_fpr < 1.0)) {
        throw ParameterError("target false-positive rate must lie in (0, 1)");
    }
    const double n = static_cast<double>(expected_items);
    const double ln2 = std::log(2.0);
    const double raw_bits = std::ceil(-n * std::log(target_fpr) / (ln2 * ln2));
    const double raw_hashes = std::round(raw_bits / n * ln2);
    Sizing s;
    s.bit_count = std::max<std::uint64_t>(kMinBits, static_cast<std::uint64_t>(raw_bits));
    s.hash_count = static_cast<std::uint32_t>(
        std::clamp<double>(raw_hashes, 1.0, static_cast<double>(kMaxHashes)));
    return s;
}

BloomFilter BloomFilter::with_capacity(std::uint64_t expected_items, double target_fpr,
                                       std::uint64_t salt) {
    const auto s = optimal_sizing(expected_items, target_fpr);
    return BloomFilter(s.bit_count, s.hash_count, salt);
}

template <typename Fn>
void BloomFilter::for_each_probe(std::string_view key, Fn&& fn) const {
    const Hash128 h = murmur3_128(key, salt_);
    const std::uint64_t h1 = h.low % bit_count_;
    std::uint64_t h2 = h.high % bit_count_;
    if (h2 == 0) h2 = 1;
    std::uint64_t pos = h1;
    for (std::uint32_t i = 0; i < hash_count_; ++i) {
        if (!fn(pos)) return;
        pos += h2;
        if (pos >= bit_count_) pos -= bit_count_;
    }
}

void BloomFilter::insert(std::string_view key) {
    for_each_probe(key, [this](std::uint64_t bit) {
        words_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        return true;
    });
    ++item_count_;
}

bool BloomFilter::contains(std::string_view key) const {
    bool all = true;
    for_each_probe(key, [&](std::uint64_t bit) {
        all = (words_[bit >> 6] >> (bit & 63)) & 1U;
        return all;
    });
    return all;
}

bool BloomFilter::test_and_insert(std::string_view key) {
    bool present = true;
    for_each_probe(key, [&](std::uint64_t bit) {
        auto& word = words_[bit >> 6];
        const std::uint64_t mask = std::uint64_t{1} << (bit & 63);
        if (!(word & mask)) present = false;
        word |= mask;
        return true;
    });
    ++item_count_;
    return present;
}

std::uint64_t BloomFilter::bits_set() const noexcept {
    std::uint64_t total = 0;
    for (auto w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
}

void BloomFilter::save(const std::filesystem::path& path) const {
    std::string out;
    const std::uint64_t byte_count = (bit_count_ + 7) / 8;
    out.reserve(kHeaderSize + byte_count);
    out.append(kMagic, 4);
    put_le<std::uint32_t>(out, kVersion);
    put_le<std::uint64_t>(out, bit_count_);
    put_le<std::uint32_t>(out, hash_count_);
    put_le<std::uint64_t>(out, salt_);
    put_le<std::uint64_t>(out, item_count_);
    for (std::uint64_t b = 0; b < byte_count; ++b) {
        out.push_back(static_cast<char>((words_[b / 8] >> (8 * (b % 8))) & 0xFF));
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot create " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed: " + path.string());
}

BloomFilter BloomFilter::load(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string());
    const std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (in.size() < kHeaderSize) throw FormatError(path.string() + ": truncated bloom header");
    if (in.compare(0, 4, kMagic, 4) != 0) throw FormatError(path.string() + ": bad bloom magic");
    std::size_t pos = 4;
    const auto version = get_le<std::uint32_t>(in, pos);
    if (version != kVersion) {
        throw FormatError(path.string() + ": unsupported bloom version " + std::to_string(version));
    }
    const auto m = get_le<std::uint64_t>(in, pos);
    const auto k = get_le<std::uint32_t>(in, pos);
    const auto salt = get_le<std::uint64_t>(in, pos);
    const auto items = get_le<std::uint64_t>(in, pos);
    if (m < kMinBits || k < 1 || k > kMaxHashes) {
        throw FormatError(path.string() + ": invalid bloom parameters");
    }
    const std::uint64_t byte_count = (m + 7) / 8;
    if (in.size() != kHeaderSize + byte_count) {
        throw FormatError(path.string() + ": bloom bit array has " +
                          std::to_string(in.size() - kHeaderSize) + " bytes, expected " +
                          std::to_string(byte_count));
    }
    BloomFilter filter(m, k, salt);
    filter.item_count_ = items;
    for (std::uint64_t b = 0; b < byte_count; ++b) {
        filter.words_[b / 8] |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + b]))
                                << (8 * (b % 8));
    }
    return filter;
}

}  // namespace sieve
