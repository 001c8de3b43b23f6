#include "sieve/taggers.hpp"

#include "sieve/thai_script.hpp"

namespace sieve {

std::vector<std::string> language_attribute_names() { return {std::string(attr::kThaiRatio)}; }

std::vector<std::string> c4_attribute_names() {
    return {std::string(attr::kCurlyBrace),  std::string(attr::kLoremIpsum),
            std::string(attr::kJavascript),  std::string(attr::kNaughtyWord),
            std::string(attr::kTooFewWords), std::string(attr::kLineCount),
            std::string(attr::kCorruptUnicode)};
}

std::vector<std::string> gopher_attribute_names() {
    std::vector<std::string> names = {
        "gopher.word_count",
        "gopher.median_word_length",
        "gopher.symbol_to_word_ratio",
        "gopher.fraction_words_with_thai",
        "gopher.thai_consonant_char_ratio",
        "gopher.required_word_count",
        "gopher.bullet_line_fraction",
        "gopher.ellipsis_line_fraction",
        "gopher.duplicate_line_fraction",
        "gopher.duplicate_line_char_fraction",
    };
    for (int n = kTopNgramMin; n <= kTopNgramMax; ++n) {
        names.push_back("gopher.top_ngram_char_frac_" + std::to_string(n));
    }
    for (int n = kDupNgramMin; n <= kDupNgramMax; ++n) {
        names.push_back("gopher.dup_ngram_char_frac_" + std::to_string(n));
    }
    names.emplace_back("gopher.has_truncation_marker");
    return names;
}

std::vector<std::string> pii_attribute_names() {
    return {std::string(attr::kPiiEmail), std::string(attr::kPiiPhone), std::string(attr::kPiiIp)};
}

std::vector<std::string> dedup_attribute_names() {
    return {std::string(attr::kUrlDuplicate), std::string(attr::kDocDuplicate)};
}

std::string classifier_attribute_name(std::string_view label) {
    return "classify." + std::string(label);
}

bool is_span_attribute(std::string_view name) {
    return name == attr::kCurlyBrace || name == attr::kLoremIpsum || name == attr::kJavascript ||
           name == attr::kNaughtyWord || name == attr::kTooFewWords ||
           name == attr::kCorruptUnicode || name.starts_with("pii.");
}

SpanAttribute tag_language(const Document& doc) {
    return SpanAttribute::whole_document(std::string(attr::kThaiRatio), doc.text,
                                         thai::thai_char_ratio(doc.text));
}

namespace {

constexpr std::string_view kReplacementUtf8 = "\xEF\xBF\xBD";

std::vector<Span> substring_spans(std::string_view text, std::string_view needle_lower) {
    std::vector<Span> spans;
    for (auto at : find_all_ci(text, needle_lower)) {
        spans.push_back({at, at + needle_lower.size(), 1.0});
    }
    return spans;
}

std::vector<Span> corrupt_runs(std::string_view text) {
    std::vector<Span> spans;
    std::size_t pos = text.find(kReplacementUtf8);
    while (pos != std::string_view::npos) {
        std::size_t end = pos;
        while (text.substr(end, kReplacementUtf8.size()) == kReplacementUtf8) {
            end += kReplacementUtf8.size();
        }
        spans.push_back({pos, end, 1.0});
        pos = text.find(kReplacementUtf8, end);
    }
    return spans;
}

}  // namespace

std::vector<SpanAttribute> tag_c4(const Document& doc, std::span<const TokenSpan> tokens,
                                  const Lexicon& naughty) {
    const std::string_view text = doc.text;
    std::vector<SpanAttribute> out;
    out.reserve(7);

    std::vector<Span> braces;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '{' || text[i] == '}') braces.push_back({i, i + 1, 1.0});
    }
    out.emplace_back(std::string(attr::kCurlyBrace), std::move(braces));
    out.emplace_back(std::string(attr::kLoremIpsum), substring_spans(text, "lorem ipsum"));
    out.emplace_back(std::string(attr::kJavascript), substring_spans(text, "javascript"));

    std::vector<Span> naughty_spans;
    for (const auto& t : tokens) {
        const auto word = t.view(text);
        if (naughty.contains(word) || naughty.contains(ascii_lower(word))) {
            naughty_spans.push_back({t.start, t.end, 1.0});
        }
    }
    out.emplace_back(std::string(attr::kNaughtyWord), std::move(naughty_spans));

    // Tokens never straddle '\n', so each token belongs to exactly one line.
    const auto lines = thai::line_ranges(text);
    std::vector<Span> short_lines;
    std::size_t t = 0;
    for (const auto& line : lines) {
        while (t < tokens.size() && tokens[t].start < line.start) ++t;
        std::size_t count = 0;
        while (t < tokens.size() && tokens[t].end <= line.end) {
            ++count;
            ++t;
        }
        if (count < kMinWordsPerLine) {
            short_lines.push_back({line.start, line.end, static_cast<double>(count)});
        }
    }
    out.emplace_back(std::string(attr::kTooFewWords), std::move(short_lines));
    out.push_back(SpanAttribute::whole_document(std::string(attr::kLineCount), text,
                                                static_cast<double>(lines.size())));
    out.emplace_back(std::string(attr::kCorruptUnicode), corrupt_runs(text));
    return out;
}

std::vector<SpanAttribute> tag_c4(const Document& doc, const Lexicon& naughty,
                                  const Tokenizer& tokenizer) {
    const auto tokens = tokenizer.tokenize_spans(doc.text);
    return tag_c4(doc, tokens, naughty);
}

std::vector<SpanAttribute> gopher_attributes(std::string_view text, const GopherScores& s) {
    const auto names = gopher_attribute_names();
    std::vector<double> values = {
        static_cast<double>(s.word_count),
        s.median_word_length,
        s.symbol_to_word_ratio,
        s.fraction_words_with_thai,
        s.thai_consonant_char_ratio,
        static_cast<double>(s.required_word_count),
        s.bullet_line_fraction,
        s.ellipsis_line_fraction,
        s.duplicate_line_fraction,
        s.duplicate_line_char_fraction,
    };
    values.insert(values.end(), s.top_ngram_char_frac.begin(), s.top_ngram_char_frac.end());
    values.insert(values.end(), s.dup_ngram_char_frac.begin(), s.dup_ngram_char_frac.end());
    values.push_back(s.has_truncation_marker ? 1.0 : 0.0);

    std::vector<SpanAttribute> out;
    out.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        out.push_back(SpanAttribute::whole_document(names[i], text, values[i]));
    }
    return out;
}

std::vector<SpanAttribute> tag_gopher(const Document& doc, std::span<const TokenSpan> tokens,
                                      const Lexicon& stopwords,
                                      const PhraseList& truncation_markers) {
    std::vector<std::string_view> words;
    words.reserve(tokens.size());
    for (const auto& t : tokens) words.push_back(t.view(doc.text));
    return gopher_attributes(doc.text,
                             compute_gopher_scores(doc.text, words, stopwords, truncation_markers));
}

std::vector<SpanAttribute> tag_gopher(const Document& doc, const Tokenizer& tokenizer,
                                      const Lexicon& stopwords,
                                      const PhraseList& truncation_markers) {
    const auto tokens = tokenizer.tokenize_spans(doc.text);
    return tag_gopher(doc, tokens, stopwords, truncation_markers);
}

}  // namespace sieve
