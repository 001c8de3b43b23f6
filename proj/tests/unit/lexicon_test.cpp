#include <gtest/gtest.h>

#include "sieve/error.hpp"
#include "sieve/lexicon.hpp"
#include "sieve/tokenizer.hpp"
#include "synthetic_corpus.hpp"

namespace sieve {
namespace {

TEST(Lexicon, ExactMatchOnly) {
    const std::vector<std::string> terms{"หวย", "พนัน"};
    Lexicon lex("gambling", terms);
    EXPECT_TRUE(lex.contains("หวย"));
    EXPECT_FALSE(lex.contains("หวยดี"));
    EXPECT_EQ(lex.size(), 2U);
}

TEST(Lexicon, RejectsEmptyAndWhitespaceTerms) {
    EXPECT_THROW(Lexicon("x", std::vector<std::string>{}), ConfigError);
    EXPECT_THROW(Lexicon("x", std::vector<std::string>{"two words"}), ConfigError);
}

TEST(Lexicon, BundledListsLoadAndSegmentAsSingleTokens) {
    const auto dict = std::make_shared<Dictionary>(Dictionary::load(testing::data_dir() / "dict/thai_words.txt"));
    DictionaryTokenizer tok(dict);
    for (const char* name : {"stopwords_th", "naughty_th", "adult_th", "gambling_th"}) {
        const auto lex = Lexicon::load(testing::data_dir() / "lexicons" / (std::string(name) + ".txt"), name);
        EXPECT_FALSE(lex.empty()) << name;
        for (const auto& term : lex.terms()) {
            EXPECT_EQ(tok.tokenize(term).size(), 1U) << name << ": " << term;
        }
    }
}

TEST(PhraseList, CaseInsensitiveSubstring) {
    PhraseList p({"Read More", "อ่านต่อ"});
    EXPECT_TRUE(p.matches("... READ MORE here"));
    EXPECT_TRUE(p.matches("ข่าวนี้อ่านต่อได้ที่"));
    EXPECT_FALSE(p.matches("reading"));
}

TEST(FindAllCi, NonOverlapping) {
    EXPECT_EQ(find_all_ci("aaaa", "aa"), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(find_all_ci("JavaScript javascript", "javascript"), (std::vector<std::size_t>{0, 11}));
    EXPECT_TRUE(find_all_ci("abc", "").empty());
}

}  // namespace
}  // namespace sieve
