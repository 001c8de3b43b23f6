#include <gtest/gtest.h>

#include <random>

#include "sieve/thai_script.hpp"
#include "sieve/utf8.hpp"

namespace sieve::thai {
namespace {

TEST(ClassifyChar, RangeEndpoints) {
    EXPECT_EQ(classify_char(0x0E01), ThaiCharClass::Consonant);
    EXPECT_EQ(classify_char(0x0E2E), ThaiCharClass::Consonant);
    EXPECT_EQ(classify_char(0x0E48), ThaiCharClass::ToneMark);
    EXPECT_EQ(classify_char(0x0E4B), ThaiCharClass::ToneMark);
    EXPECT_EQ(classify_char(0x0E30), ThaiCharClass::Vowel);
    EXPECT_EQ(classify_char(0x0E47), ThaiCharClass::Vowel);
    EXPECT_EQ(classify_char(0x0E45), ThaiCharClass::Vowel);
    EXPECT_EQ(classify_char(0x0E50), ThaiCharClass::ThaiDigit);
    EXPECT_EQ(classify_char(0x0E59), ThaiCharClass::ThaiDigit);
    EXPECT_EQ(classify_char(0x0E00), ThaiCharClass::OtherThai);
    EXPECT_EQ(classify_char(0x0E3F), ThaiCharClass::OtherThai);  // baht sign
    EXPECT_EQ(classify_char(0x0E7F), ThaiCharClass::OtherThai);
    EXPECT_EQ(classify_char(U'A'), ThaiCharClass::NonThai);
    EXPECT_EQ(classify_char(0x0E80), ThaiCharClass::NonThai);
    EXPECT_EQ(classify_char(0x0DFF), ThaiCharClass::NonThai);
}

// Exhaustive over the block plus a random fuzz elsewhere: Thai class iff in
// U+0E00..U+0E7F.
TEST(ClassifyChar, Totality) {
    for (char32_t c = 0; c <= 0x1000; ++c) {
        const bool thai_class = classify_char(c) != ThaiCharClass::NonThai;
        EXPECT_EQ(thai_class, c >= 0x0E00 && c <= 0x0E7F) << std::hex << static_cast<unsigned>(c);
    }
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::uint32_t> d(0, 0x10FFFF);
    for (int i = 0; i < 100000; ++i) {
        const char32_t c = d(rng);
        EXPECT_EQ(classify_char(c) != ThaiCharClass::NonThai, is_thai(c));
    }
}

TEST(ThaiCharRatio, Examples) {
    EXPECT_DOUBLE_EQ(thai_char_ratio("กขคง"), 1.0);
    EXPECT_DOUBLE_EQ(thai_char_ratio("abcd"), 0.0);
    EXPECT_DOUBLE_EQ(thai_char_ratio("กข12"), 0.5);
    EXPECT_DOUBLE_EQ(thai_char_ratio(""), 0.0);
}

TEST(ThaiConsonantRatio, Examples) {
    EXPECT_DOUBLE_EQ(thai_consonant_char_ratio("กกกก"), 1.0);
    EXPECT_DOUBLE_EQ(thai_consonant_char_ratio("กาก!"), 0.5);
    EXPECT_DOUBLE_EQ(thai_consonant_char_ratio(""), 0.0);
}

TEST(CountScript, AdditiveOverConcatenation) {
    std::mt19937 rng(5);
    const char32_t alphabet[] = {U'a', U'ก', U'า', U'่', U'๑', U' ', U'€'};
    std::uniform_int_distribution<int> len(0, 20), pick(0, 6);
    for (int iter = 0; iter < 300; ++iter) {
        std::string a, b;
        for (int i = len(rng); i > 0; --i) utf8::append(a, alphabet[pick(rng)]);
        for (int i = len(rng); i > 0; --i) utf8::append(b, alphabet[pick(rng)]);
        const auto ca = count_script(a);
        const auto cb = count_script(b);
        const auto cab = count_script(a + b);
        EXPECT_EQ(cab.scalars, ca.scalars + cb.scalars);
        EXPECT_EQ(cab.thai, ca.thai + cb.thai);
        EXPECT_EQ(cab.consonants, ca.consonants + cb.consonants);
        if (!a.empty() && !b.empty()) {
            const double r = thai_char_ratio(a + b);
            EXPECT_GE(r, std::min(thai_char_ratio(a), thai_char_ratio(b)) - 1e-12);
            EXPECT_LE(r, std::max(thai_char_ratio(a), thai_char_ratio(b)) + 1e-12);
        }
    }
}

TEST(FractionTokensWithThai, Examples) {
    const std::vector<std::string_view> all{"กา", "ไป"};
    const std::vector<std::string_view> half{"abc", "กา"};
    const std::vector<std::string_view> none;
    EXPECT_DOUBLE_EQ(fraction_tokens_with_thai(all), 1.0);
    EXPECT_DOUBLE_EQ(fraction_tokens_with_thai(half), 0.5);
    EXPECT_DOUBLE_EQ(fraction_tokens_with_thai(none), 0.0);
}

TEST(SplitLines, Examples) {
    using V = std::vector<std::string_view>;
    EXPECT_EQ(split_lines("a\nb"), (V{"a", "b"}));
    EXPECT_EQ(split_lines("a\n\n\nb"), (V{"a", "b"}));
    EXPECT_EQ(split_lines("\n"), V{});
    EXPECT_EQ(split_lines(""), V{});
    EXPECT_EQ(split_lines("\nx\n"), V{"x"});
}

TEST(SplitLines, NoNewlinesOrEmptyLines) {
    std::mt19937 rng(9);
    const char pool[] = {'a', '\n', 'b', ' ', '\n'};
    std::uniform_int_distribution<int> len(0, 30), pick(0, 4);
    for (int iter = 0; iter < 500; ++iter) {
        std::string s;
        for (int i = len(rng); i > 0; --i) s.push_back(pool[pick(rng)]);
        for (auto line : split_lines(s)) {
            EXPECT_FALSE(line.empty());
            EXPECT_EQ(line.find('\n'), std::string_view::npos);
        }
    }
}

}  // namespace
}  // namespace sieve::thai
