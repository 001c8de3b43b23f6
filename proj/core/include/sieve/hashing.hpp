#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sieve {

struct Hash128 {
    std::uint64_t low = 0;
    std::uint64_t high = 0;

    bool operator==(const Hash128&) const = default;
};

// MurmurHash3 x64/128. Stable across platforms and runs for a given seed.
Hash128 murmur3_128(std::string_view bytes, std::uint64_t seed = 0) noexcept;

inline std::uint64_t hash64(std::string_view bytes, std::uint64_t seed = 0) noexcept {
    return murmur3_128(bytes, seed).low;
}

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

}  // namespace sieve
