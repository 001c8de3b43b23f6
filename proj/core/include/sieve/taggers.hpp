#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sieve/document.hpp"
#include "sieve/gopher.hpp"
#include "sieve/lexicon.hpp"
#include "sieve/tokenizer.hpp"

namespace sieve {

// Attribute names emitted by the built-in taggers.
namespace attr {
inline constexpr std::string_view kThaiRatio = "lang.thai_ratio";

inline constexpr std::string_view kCurlyBrace = "c4.has_curly_brace";
inline constexpr std::string_view kLoremIpsum = "c4.has_lorem_ipsum";
inline constexpr std::string_view kJavascript = "c4.has_javascript";
inline constexpr std::string_view kNaughtyWord = "c4.has_naughty_word";
inline constexpr std::string_view kTooFewWords = "c4.lines_with_too_few_words";
inline constexpr std::string_view kLineCount = "c4.line_count";
inline constexpr std::string_view kCorruptUnicode = "c4.corrupt_unicode";

inline constexpr std::string_view kUrlDuplicate = "dedup.url_duplicate";
inline constexpr std::string_view kDocDuplicate = "dedup.doc_duplicate";

inline constexpr std::string_view kPiiEmail = "pii.email";
inline constexpr std::string_view kPiiPhone = "pii.phone_th";
inline constexpr std::string_view kPiiIp = "pii.ip";
}  // namespace attr

// Names in emission order for each built-in tagger.
std::vector<std::string> language_attribute_names();
std::vector<std::string> c4_attribute_names();
std::vector<std::string> gopher_attribute_names();
std::vector<std::string> pii_attribute_names();
std::vector<std::string> dedup_attribute_names();
std::string classifier_attribute_name(std::string_view label);

// Span-list attributes resolve to their span count in policy predicates;
// every other attribute is a whole-document score.
bool is_span_attribute(std::string_view name);

// Line counts below this many tokens are flagged by the C4 short-line rule.
inline constexpr std::size_t kMinWordsPerLine = 3;

SpanAttribute tag_language(const Document& doc);

// `tokens` must be the configured tokenizer's output over doc.text.
std::vector<SpanAttribute> tag_c4(const Document& doc, std::span<const TokenSpan> tokens,
                                  const Lexicon& naughty);
std::vector<SpanAttribute> tag_c4(const Document& doc, const Lexicon& naughty,
                                  const Tokenizer& tokenizer);

std::vector<SpanAttribute> tag_gopher(const Document& doc, std::span<const TokenSpan> tokens,
                                      const Lexicon& stopwords,
                                      const PhraseList& truncation_markers);
std::vector<SpanAttribute> tag_gopher(const Document& doc, const Tokenizer& tokenizer,
                                      const Lexicon& stopwords,
                                      const PhraseList& truncation_markers);

// Whole-document attributes for precomputed scores, in emission order.
std::vector<SpanAttribute> gopher_attributes(std::string_view text, const GopherScores& scores);

}  // namespace sieve
