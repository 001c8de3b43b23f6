#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sieve/error.hpp"
#include "sieve/gopher.hpp"
#include "sieve/lexicon.hpp"
#include "sieve/taggers.hpp"
#include "sieve/tokenizer.hpp"
#include "synthetic_corpus.hpp"

namespace sieve {
namespace {

using Views = std::vector<std::string_view>;

GopherScores score(std::string_view text, const std::vector<std::string>& stop = {"ที่"},
                   const std::vector<std::string>& phrases = {"read more"}) {
    WhitespaceTokenizer ws;
    const auto tokens = ws.tokenize(text);
    return compute_gopher_scores(text, tokens, Lexicon("stop", stop), PhraseList(phrases));
}

TEST(Gopher, MedianOfEqualLengths) {
    const Views tokens = {"กข", "คง", "จฉ"};
    EXPECT_EQ(gopher::median_token_length(tokens), 2U);
}

TEST(Gopher, MedianIsLowerMiddle) {
    const Views tokens = {"a", "bbbb", "cc", "ddd"};
    EXPECT_EQ(gopher::median_token_length(tokens), 2U);
    EXPECT_EQ(gopher::median_token_length(Views{}), 0U);
}

TEST(Gopher, SymbolRatio) {
    Views tokens(17, "คำ");
    tokens.insert(tokens.end(), {"#", "#", "#"});
    EXPECT_DOUBLE_EQ(gopher::symbol_to_word_ratio(tokens), 0.15);
    EXPECT_DOUBLE_EQ(gopher::symbol_to_word_ratio(Views{"ok...", "…", "x"}), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(gopher::symbol_to_word_ratio(Views{}), 0.0);
}

TEST(Gopher, DuplicateLinesAbac) {
    const Views lines = {"A", "B", "A", "C"};
    const auto d = gopher::duplicate_lines(lines);
    EXPECT_DOUBLE_EQ(d.line_fraction, 0.25);
    EXPECT_DOUBLE_EQ(d.char_fraction, 0.25);
}

TEST(Gopher, EllipsisLines) {
    std::string text;
    for (int i = 0; i < 10; ++i) {
        text += "คำ คำ คำ";
        if (i % 10 < 4) text += "…";
        text += "\n";
    }
    EXPECT_DOUBLE_EQ(score(text).ellipsis_line_fraction, 0.4);
    EXPECT_TRUE(gopher::is_ellipsis_line("abc...  "));
    EXPECT_FALSE(gopher::is_ellipsis_line("abc.."));
    EXPECT_FALSE(gopher::is_ellipsis_line("...abc"));
}

TEST(Gopher, BulletLines) {
    EXPECT_TRUE(gopher::is_bullet_line("• item"));
    EXPECT_TRUE(gopher::is_bullet_line("   - item"));
    EXPECT_TRUE(gopher::is_bullet_line("\xE3\x80\x80* item"));
    EXPECT_FALSE(gopher::is_bullet_line("item - x"));
    EXPECT_FALSE(gopher::is_bullet_line(""));
}

TEST(Gopher, EmptyTextScoresZero) {
    const auto s = score("");
    EXPECT_EQ(s.word_count, 0U);
    EXPECT_EQ(s.median_word_length, 0.0);
    EXPECT_EQ(s.bullet_line_fraction, 0.0);
    for (double v : s.top_ngram_char_frac) EXPECT_EQ(v, 0.0);
    for (double v : s.dup_ngram_char_frac) EXPECT_EQ(v, 0.0);
}

TEST(Gopher, TopBigramCoverage) {
    // "a b" occurs twice; masses: a=1 b=1 c=1, covered a b a b = 4 of 5.
    const auto s = score("a b c a b");
    EXPECT_DOUBLE_EQ(s.top_ngram_char_frac[0], 4.0 / 5.0);
}

TEST(Gopher, OverlappingOccurrencesCountCharsOnce) {
    // "a a" occurs three times in "a a a a" but covers each token once.
    EXPECT_DOUBLE_EQ(score("a a a a").top_ngram_char_frac[0], 1.0);
    EXPECT_DOUBLE_EQ(score("a a a a a a a a a a a a").dup_ngram_char_frac[0], 1.0);
}

TEST(Gopher, DuplicateNgramsNeedTwoOccurrences) {
    EXPECT_DOUBLE_EQ(score("a b c d e f g h i j").dup_ngram_char_frac[0], 0.0);
    // "a b c d e" repeats: 10 of 11 chars covered.
    EXPECT_DOUBLE_EQ(score("a b c d e x a b c d e").dup_ngram_char_frac[0], 10.0 / 11.0);
}

TEST(Gopher, RequiredWordsAreDistinct) {
    EXPECT_EQ(score("ที่ ที่ และ", {"ที่", "และ", "ของ"}).required_word_count, 2U);
}

TEST(Gopher, TruncationIsCaseInsensitive) {
    EXPECT_TRUE(score("ข่าว Read More").has_truncation_marker);
    EXPECT_FALSE(score("ข่าว read").has_truncation_marker);
}

TEST(Gopher, AttributesFollowNameOrder) {
    const std::string text = "กิน ข้าว";
    const auto attrs = gopher_attributes(text, score(text));
    const auto names = gopher_attribute_names();
    ASSERT_EQ(attrs.size(), names.size());
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        EXPECT_EQ(attrs[i].name(), names[i]);
        ASSERT_EQ(attrs[i].spans().size(), 1U);
        EXPECT_EQ(attrs[i].spans()[0].end, text.size());
    }
}

TEST(Gopher, MoreDuplicateLinesNeverLowerTheFraction) {
    std::string text = "x1\nx2\nx3\nx4\nx5\nx6";
    double last = score(text).duplicate_line_fraction;
    for (int i = 0; i < 20; ++i) {
        text += "\nx1";
        const double now = score(text).duplicate_line_fraction;
        EXPECT_GE(now, last);
        last = now;
    }
}

TEST(Gopher, MatchesBruteForceOracle) {
    const std::vector<std::string> stop = {"ที่", "และ", "ของ"};
    const std::vector<std::string> phrases = {"read more", "อ่านต่อ"};
    const std::set<std::string> stop_set(stop.begin(), stop.end());
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 400; ++trial) {
        const auto text = testing::messy_text(rng);
        SCOPED_TRACE(text);
        const auto s = score(text, stop, phrases);
        const auto o = oracle::gopher(text, stop_set, phrases);
        constexpr double tol = 1e-12;
        EXPECT_EQ(s.word_count, o.word_count);
        EXPECT_EQ(s.median_word_length, static_cast<double>(o.median_word_length));
        EXPECT_NEAR(s.symbol_to_word_ratio, o.symbol_ratio.value(), tol);
        EXPECT_NEAR(s.fraction_words_with_thai, o.words_with_thai.value(), tol);
        EXPECT_NEAR(s.thai_consonant_char_ratio, o.consonant_ratio.value(), tol);
        EXPECT_EQ(s.required_word_count, o.required_words);
        EXPECT_NEAR(s.bullet_line_fraction, o.bullet_lines.value(), tol);
        EXPECT_NEAR(s.ellipsis_line_fraction, o.ellipsis_lines.value(), tol);
        EXPECT_NEAR(s.duplicate_line_fraction, o.duplicate_lines.value(), tol);
        EXPECT_NEAR(s.duplicate_line_char_fraction, o.duplicate_line_chars.value(), tol);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(s.top_ngram_char_frac[i], o.top_ngram[i].value(), tol);
        for (int i = 0; i < 6; ++i) EXPECT_NEAR(s.dup_ngram_char_frac[i], o.dup_ngram[i].value(), tol);
        EXPECT_EQ(s.has_truncation_marker, o.truncation);
    }
}

TEST(Gopher, FractionsStayInUnitInterval) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = score(testing::messy_text(rng));
        for (double v : {s.symbol_to_word_ratio, s.fraction_words_with_thai, s.thai_consonant_char_ratio,
                         s.bullet_line_fraction, s.ellipsis_line_fraction, s.duplicate_line_fraction,
                         s.duplicate_line_char_fraction}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
        for (double v : s.top_ngram_char_frac) EXPECT_LE(v, 1.0);
        for (double v : s.dup_ngram_char_frac) EXPECT_LE(v, 1.0);
    }
}

TEST(GopherThresholds, DefaultsValidate) {
    EXPECT_NO_THROW(GopherThresholds{}.validate());
    GopherThresholds t;
    t.median_len_min = 20;
    EXPECT_THROW(t.validate(), ConfigError);
}

}  // namespace
}  // namespace sieve
