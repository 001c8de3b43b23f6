#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

namespace sieve {

// Bit-array membership filter with k probes derived by double hashing
// h_i = (h1 + i * h2) mod m over a 128-bit MurmurHash3 digest of the key.
// No false negatives. Single writer; concurrent readers are safe once
// writes stop.
class BloomFilter {
public:
    static constexpr std::uint32_t kMaxHashes = 32;
    static constexpr std::uint64_t kMinBits = 8;

    // Throws ParameterError unless bit_count >= 8 and 1 <= hash_count <= 32.
    BloomFilter(std::uint64_t bit_count, std::uint32_t hash_count, std::uint64_t salt = 0);

    // Sizes the filter for `expected_items` keys at false-positive rate
    // `target_fpr`: m = ceil(-n ln p / (ln 2)^2) raised to at least 8,
    // k = max(1, round((m / n) ln 2)) using the unclamped m.
    static BloomFilter with_capacity(std::uint64_t expected_items, double target_fpr,
                                     std::uint64_t salt = 0);

    struct Sizing {
        std::uint64_t bit_count;
        std::uint32_t hash_count;
    };
    static Sizing optimal_sizing(std::uint64_t expected_items, double target_fpr);

    void insert(std::string_view key);
    bool contains(std::string_view key) const;
    // Inserts and returns whether the key was (probably) present before.
    bool test_and_insert(std::string_view key);

    std::uint64_t bit_count() const noexcept { return bit_count_; }
    std::uint32_t hash_count() const noexcept { return hash_count_; }
    std::uint64_t salt() const noexcept { return salt_; }
    std::uint64_t item_count() const noexcept { return item_count_; }
    std::uint64_t bits_set() const noexcept;

    // File layout, little-endian: "BLMF", u32 version, u64 m, u32 k,
    // u64 salt, u64 item_count, then ceil(m / 8) bytes of bits (LSB first).
    void save(const std::filesystem::path& path) const;
    // Throws FormatError on bad magic, version or truncated content.
    static BloomFilter load(const std::filesystem::path& path);

    bool operator==(const BloomFilter&) const = default;

private:
    template <typename Fn>
    void for_each_probe(std::string_view key, Fn&& fn) const;

    std::uint64_t bit_count_;
    std::uint32_t hash_count_;
    std::uint64_t salt_;
    std::uint64_t item_count_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace sieve
