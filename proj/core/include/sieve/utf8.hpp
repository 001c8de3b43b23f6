#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace sieve::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes the scalar starting at `pos` and advances `pos` past it.
// Ill-formed sequences decode as U+FFFD and advance by one byte.
char32_t decode(std::string_view text, std::size_t& pos) noexcept;

void append(std::string& out, char32_t scalar);

std::string encode(char32_t scalar);

inline bool is_continuation(unsigned char byte) noexcept {
    return (byte & 0xC0) == 0x80;
}

// True if `offset` is 0, text.size(), or the first byte of a scalar.
inline bool is_boundary(std::string_view text, std::size_t offset) noexcept {
    if (offset == 0 || offset == text.size()) return true;
    if (offset > text.size()) return false;
    return !is_continuation(static_cast<unsigned char>(text[offset]));
}

std::size_t count_scalars(std::string_view text) noexcept;

bool is_valid(std::string_view text) noexcept;

// Unicode White_Space over the code points that show up in web text.
bool is_space(char32_t c) noexcept;

}  // namespace sieve::utf8
