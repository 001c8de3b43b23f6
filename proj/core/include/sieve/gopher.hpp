#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace sieve {

class Lexicon;
class PhraseList;

// Document-quality thresholds, adapted for Thai. A document is rejected
// when a score falls outside the bound; the mixer policy encodes the
// comparison, these values only seed it.
struct GopherThresholds {
    std::size_t min_words = 200;
    std::size_t max_words = 100000;
    double median_len_min = 3;
    double median_len_max = 10;
    double symbol_ratio_max = 0.10;
    double thai_fraction_min = 0.80;
    std::size_t required_words_min = 2;
    double bullet_frac_max = 0.90;
    double ellipsis_frac_max = 0.30;
    double dup_line_frac_max = 0.30;
    double dup_line_char_frac_max = 0.30;
    std::map<int, double> top_ngram_char_frac_max{{2, 0.20}, {3, 0.18}, {4, 0.16}};
    std::map<int, double> dup_ngram_char_frac_max{{5, 0.15}, {6, 0.14}, {7, 0.13},
                                                  {8, 0.12}, {9, 0.11}, {10, 0.10}};

    // Throws ConfigError when an invariant is broken.
    void validate() const;

    bool operator==(const GopherThresholds&) const = default;
};

inline constexpr int kTopNgramMin = 2;
inline constexpr int kTopNgramMax = 4;
inline constexpr int kDupNgramMin = 5;
inline constexpr int kDupNgramMax = 10;

struct GopherScores {
    std::size_t word_count = 0;
    double median_word_length = 0;
    double symbol_to_word_ratio = 0;
    double fraction_words_with_thai = 0;
    double thai_consonant_char_ratio = 0;
    std::size_t required_word_count = 0;
    double bullet_line_fraction = 0;
    double ellipsis_line_fraction = 0;
    double duplicate_line_fraction = 0;
    double duplicate_line_char_fraction = 0;
    // Indexed by n - kTopNgramMin and n - kDupNgramMin.
    std::array<double, kTopNgramMax - kTopNgramMin + 1> top_ngram_char_frac{};
    std::array<double, kDupNgramMax - kDupNgramMin + 1> dup_ngram_char_frac{};
    bool has_truncation_marker = false;
};

// Scores one document given its tokens (as produced by the configured
// tokenizer over `text`).
GopherScores compute_gopher_scores(std::string_view text,
                                   std::span<const std::string_view> tokens,
                                   const Lexicon& stopwords, const PhraseList& truncation_markers);

// Building blocks, exposed for testing.
namespace gopher {

// Lower median of token lengths in scalars; 0 for no tokens.
std::size_t median_token_length(std::span<const std::string_view> tokens);

// Tokens containing "#", "..." or U+2026, over all tokens.
double symbol_to_word_ratio(std::span<const std::string_view> tokens);

bool is_bullet_line(std::string_view line);
bool is_ellipsis_line(std::string_view line);

struct DuplicateLines {
    double line_fraction = 0;
    double char_fraction = 0;
};
DuplicateLines duplicate_lines(std::span<const std::string_view> lines);

// Char mass covered by occurrences of the most frequent n-gram (ties go to
// the earliest first occurrence) over the total token char mass.
// `lengths` are token lengths in scalars and `ids` token identities.
double top_ngram_char_fraction(std::span<const std::uint32_t> ids,
                               std::span<const std::size_t> lengths, int n);

// Char mass of tokens covered by any n-gram occurring at least twice, each
// token counted once, over the total token char mass.
double dup_ngram_char_fraction(std::span<const std::uint32_t> ids,
                               std::span<const std::size_t> lengths, int n);

// Fills every top/dup n-gram fraction in one incremental pass.
void ngram_fractions(std::span<const std::uint32_t> ids, std::span<const std::size_t> lengths,
                     GopherScores& scores);

// Dense ids in first-occurrence order: equal tokens share an id.
std::vector<std::uint32_t> intern_tokens(std::span<const std::string_view> tokens);

}  // namespace gopher

}  // namespace sieve
