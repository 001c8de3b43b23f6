#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace sieve::thai {

// Partition of all scalars; the five Thai classes cover exactly U+0E00..U+0E7F.
enum class ThaiCharClass { Consonant, Vowel, ToneMark, ThaiDigit, OtherThai, NonThai };

constexpr ThaiCharClass classify_char(char32_t c) noexcept {
    if (c < 0x0E00 || c > 0x0E7F) return ThaiCharClass::NonThai;
    if (c >= 0x0E01 && c <= 0x0E2E) return ThaiCharClass::Consonant;
    if ((c >= 0x0E30 && c <= 0x0E3A) || (c >= 0x0E40 && c <= 0x0E45) || c == 0x0E47) {
        return ThaiCharClass::Vowel;
    }
    if (c >= 0x0E48 && c <= 0x0E4B) return ThaiCharClass::ToneMark;
    if (c >= 0x0E50 && c <= 0x0E59) return ThaiCharClass::ThaiDigit;
    return ThaiCharClass::OtherThai;
}

constexpr bool is_thai(char32_t c) noexcept { return c >= 0x0E00 && c <= 0x0E7F; }

// Marks that attach to the preceding base character and never start a word.
constexpr bool is_combining_mark(char32_t c) noexcept {
    return c == 0x0E31 || (c >= 0x0E34 && c <= 0x0E3A) || (c >= 0x0E47 && c <= 0x0E4E);
}

const char* to_string(ThaiCharClass cls) noexcept;

// Per-class scalar tallies for one piece of text.
struct ScriptCounts {
    std::size_t scalars = 0;
    std::size_t thai = 0;
    std::size_t consonants = 0;

    ScriptCounts& operator+=(const ScriptCounts& o) noexcept {
        scalars += o.scalars;
        thai += o.thai;
        consonants += o.consonants;
        return *this;
    }
};

ScriptCounts count_script(std::string_view text) noexcept;

// Thai-block scalars over all scalars; 0.0 for empty text.
double thai_char_ratio(std::string_view text) noexcept;

// Consonant-class scalars over all scalars; 0.0 for empty text.
double thai_consonant_char_ratio(std::string_view text) noexcept;

bool contains_thai(std::string_view token) noexcept;

// Fraction of tokens holding at least one Thai-block scalar; 0.0 when empty.
double fraction_tokens_with_thai(std::span<const std::string_view> tokens) noexcept;

// [start, end) byte range of one line inside its source text.
struct LineRange {
    std::size_t start = 0;
    std::size_t end = 0;
};

// Splits on maximal runs of '\n' and drops empty segments.
std::vector<LineRange> line_ranges(std::string_view text);
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace sieve::thai
