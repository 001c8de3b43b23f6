#include "sieve/gopher.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "sieve/error.hpp"
#include "sieve/lexicon.hpp"
#include "sieve/thai_script.hpp"
#include "sieve/utf8.hpp"

namespace sieve {

void GopherThresholds::validate() const {
    auto fraction = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ConfigError(std::string("gopher threshold ") + name + " must lie in [0, 1]");
        }
    };
    if (min_words >= max_words) throw ConfigError("gopher min_words must be < max_words");
    if (median_len_min > median_len_max) {
        throw ConfigError("gopher median_len_min must be <= median_len_max");
    }
    fraction(symbol_ratio_max, "symbol_ratio_max");
    fraction(thai_fraction_min, "thai_fraction_min");
    fraction(bullet_frac_max, "bullet_frac_max");
    fraction(ellipsis_frac_max, "ellipsis_frac_max");
    fraction(dup_line_frac_max, "dup_line_frac_max");
    fraction(dup_line_char_frac_max, "dup_line_char_frac_max");
    auto check_keys = [&](const std::map<int, double>& m, int lo, int hi, const char* name) {
        if (m.size() != static_cast<std::size_t>(hi - lo + 1)) {
            throw ConfigError(std::string("gopher ") + name + " must have exactly the keys " +
                              std::to_string(lo) + ".." + std::to_string(hi));
        }
        for (const auto& [n, v] : m) {
            if (n < lo || n > hi) {
                throw ConfigError(std::string("gopher ") + name + " has unexpected key " +
                                  std::to_string(n));
            }
            fraction(v, name);
        }
    };
    check_keys(top_ngram_char_frac_max, kTopNgramMin, kTopNgramMax, "top_ngram_char_frac_max");
    check_keys(dup_ngram_char_frac_max, kDupNgramMin, kDupNgramMax, "dup_ngram_char_frac_max");
}

namespace gopher {

namespace {

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string_view trim_leading_space(std::string_view line) {
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t next = pos;
        if (!utf8::is_space(utf8::decode(line, next))) break;
        pos = next;
    }
    return line.substr(pos);
}

std::string_view trim_trailing_space(std::string_view line) {
    // Walk forward remembering the end of the last non-space scalar.
    std::size_t last = 0;
    for (std::size_t pos = 0; pos < line.size();) {
        if (!utf8::is_space(utf8::decode(line, pos))) last = pos;
    }
    return line.substr(0, last);
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }
bool ends_with(std::string_view s, std::string_view p) {
    return s.size() >= p.size() && s.substr(s.size() - p.size()) == p;
}

constexpr std::string_view kEllipsis = "\xE2\x80\xA6";  // U+2026
constexpr std::array<std::string_view, 5> kBullets = {"\xE2\x80\xA2", "\xE2\x80\xA3",
                                                      "\xE2\x96\xAA", "-", "*"};

// Ids of the n-grams starting at every position, derived from (n-1)-gram ids.
void extend_ngram_ids(std::vector<std::uint32_t>& prev, std::span<const std::uint32_t> tokens,
                      int n) {
    const std::size_t count = tokens.size() + 1 - static_cast<std::size_t>(n);
    std::unordered_map<std::uint64_t, std::uint32_t> intern;
    intern.reserve(count * 2);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t key = (static_cast<std::uint64_t>(prev[i]) << 32) | tokens[i + n - 1];
        auto [it, inserted] = intern.try_emplace(key, static_cast<std::uint32_t>(intern.size()));
        prev[i] = it->second;
    }
    prev.resize(count);
}

std::size_t total_mass(std::span<const std::size_t> lengths) {
    std::size_t total = 0;
    for (auto l : lengths) total += l;
    return total;
}

std::vector<std::uint32_t> ngram_ids(std::span<const std::uint32_t> ids, int n) {
    std::vector<std::uint32_t> cur(ids.begin(), ids.end());
    for (int k = 2; k <= n; ++k) extend_ngram_ids(cur, ids, k);
    return cur;
}

// Char mass of the union of windows [i, i+n) over positions where `hit` holds.
template <typename Pred>
std::size_t covered_mass(std::span<const std::size_t> lengths, std::size_t positions, int n,
                         Pred hit) {
    std::size_t mass = 0;
    std::size_t covered_until = 0;
    for (std::size_t i = 0; i < positions; ++i) {
        if (!hit(i)) continue;
        const std::size_t from = std::max(i, covered_until);
        const std::size_t to = i + static_cast<std::size_t>(n);
        for (std::size_t t = from; t < to; ++t) mass += lengths[t];
        covered_until = std::max(covered_until, to);
    }
    return mass;
}

}  // namespace

std::vector<std::uint32_t> intern_tokens(std::span<const std::string_view> tokens) {
    std::unordered_map<std::string_view, std::uint32_t> intern;
    intern.reserve(tokens.size());
    std::vector<std::uint32_t> ids;
    ids.reserve(tokens.size());
    for (auto t : tokens) {
        auto [it, inserted] = intern.try_emplace(t, static_cast<std::uint32_t>(intern.size()));
        ids.push_back(it->second);
    }
    return ids;
}

std::size_t median_token_length(std::span<const std::string_view> tokens) {
    if (tokens.empty()) return 0;
    std::vector<std::size_t> lengths;
    lengths.reserve(tokens.size());
    for (auto t : tokens) lengths.push_back(utf8::count_scalars(t));
    const std::size_t mid = (lengths.size() - 1) / 2;
    std::nth_element(lengths.begin(), lengths.begin() + static_cast<std::ptrdiff_t>(mid),
                     lengths.end());
    return lengths[mid];
}

double symbol_to_word_ratio(std::span<const std::string_view> tokens) {
    std::size_t with_symbol = 0;
    for (auto t : tokens) {
        if (t.find('#') != std::string_view::npos || t.find("...") != std::string_view::npos ||
            t.find(kEllipsis) != std::string_view::npos) {
            ++with_symbol;
        }
    }
    return ratio(with_symbol, tokens.size());
}

bool is_bullet_line(std::string_view line) {
    const auto body = trim_leading_space(line);
    return std::any_of(kBullets.begin(), kBullets.end(),
                       [&](std::string_view b) { return starts_with(body, b); });
}

bool is_ellipsis_line(std::string_view line) {
    const auto body = trim_trailing_space(line);
    return ends_with(body, "...") || ends_with(body, kEllipsis);
}

DuplicateLines duplicate_lines(std::span<const std::string_view> lines) {
    std::unordered_map<std::string_view, std::size_t> seen;
    seen.reserve(lines.size());
    std::size_t dup_lines = 0;
    std::size_t dup_chars = 0;
    std::size_t total_chars = 0;
    for (auto line : lines) {
        const std::size_t chars = utf8::count_scalars(line);
        total_chars += chars;
        if (++seen[line] > 1) {
            ++dup_lines;
            dup_chars += chars;
        }
    }
    return {ratio(dup_lines, lines.size()), ratio(dup_chars, total_chars)};
}

namespace {

double top_from_grams(std::span<const std::uint32_t> grams, std::span<const std::size_t> lengths,
                      int n, std::size_t total) {
    std::vector<std::uint32_t> counts(grams.size(), 0);
    for (auto g : grams) ++counts[g];
    // Ids are assigned in first-occurrence order, so the lowest id among the
    // most frequent n-grams is the earliest one.
    std::uint32_t best = 0;
    for (std::uint32_t g = 1; g < counts.size(); ++g) {
        if (counts[g] > counts[best]) best = g;
    }
    const std::size_t mass =
        covered_mass(lengths, grams.size(), n, [&](std::size_t i) { return grams[i] == best; });
    return ratio(mass, total);
}

double dup_from_grams(std::span<const std::uint32_t> grams, std::span<const std::size_t> lengths,
                      int n, std::size_t total) {
    std::vector<std::uint32_t> counts(grams.size(), 0);
    for (auto g : grams) ++counts[g];
    const std::size_t mass =
        covered_mass(lengths, grams.size(), n, [&](std::size_t i) { return counts[grams[i]] >= 2; });
    return ratio(mass, total);
}

}  // namespace

double top_ngram_char_fraction(std::span<const std::uint32_t> ids,
                               std::span<const std::size_t> lengths, int n) {
    const std::size_t total = total_mass(lengths);
    if (total == 0 || ids.size() < static_cast<std::size_t>(n)) return 0.0;
    return top_from_grams(ngram_ids(ids, n), lengths, n, total);
}

double dup_ngram_char_fraction(std::span<const std::uint32_t> ids,
                               std::span<const std::size_t> lengths, int n) {
    const std::size_t total = total_mass(lengths);
    if (total == 0 || ids.size() < static_cast<std::size_t>(n)) return 0.0;
    return dup_from_grams(ngram_ids(ids, n), lengths, n, total);
}

void ngram_fractions(std::span<const std::uint32_t> ids, std::span<const std::size_t> lengths,
                     GopherScores& scores) {
    scores.top_ngram_char_frac.fill(0.0);
    scores.dup_ngram_char_frac.fill(0.0);
    const std::size_t total = total_mass(lengths);
    if (total == 0) return;
    std::vector<std::uint32_t> grams(ids.begin(), ids.end());
    for (int n = 2; n <= kDupNgramMax; ++n) {
        if (ids.size() < static_cast<std::size_t>(n)) return;
        extend_ngram_ids(grams, ids, n);
        if (n <= kTopNgramMax) {
            scores.top_ngram_char_frac[n - kTopNgramMin] = top_from_grams(grams, lengths, n, total);
        }
        if (n >= kDupNgramMin) {
            scores.dup_ngram_char_frac[n - kDupNgramMin] = dup_from_grams(grams, lengths, n, total);
        }
    }
}

}  // namespace gopher

GopherScores compute_gopher_scores(std::string_view text,
                                   std::span<const std::string_view> tokens,
                                   const Lexicon& stopwords, const PhraseList& truncation_markers) {
    using namespace gopher;
    GopherScores s;
    s.word_count = tokens.size();
    s.median_word_length = static_cast<double>(median_token_length(tokens));
    s.symbol_to_word_ratio = symbol_to_word_ratio(tokens);
    s.fraction_words_with_thai = thai::fraction_tokens_with_thai(tokens);
    s.thai_consonant_char_ratio = thai::thai_consonant_char_ratio(text);

    StringSet present;
    for (auto t : tokens) {
        if (stopwords.contains(t)) present.emplace(t);
    }
    s.required_word_count = present.size();

    const auto lines = thai::split_lines(text);
    std::size_t bullets = 0;
    std::size_t ellipses = 0;
    for (auto line : lines) {
        if (is_bullet_line(line)) ++bullets;
        if (is_ellipsis_line(line)) ++ellipses;
    }
    s.bullet_line_fraction = ratio(bullets, lines.size());
    s.ellipsis_line_fraction = ratio(ellipses, lines.size());
    const auto dups = duplicate_lines(lines);
    s.duplicate_line_fraction = dups.line_fraction;
    s.duplicate_line_char_fraction = dups.char_fraction;

    const auto ids = intern_tokens(tokens);
    std::vector<std::size_t> lengths;
    lengths.reserve(tokens.size());
    for (auto t : tokens) lengths.push_back(utf8::count_scalars(t));
    ngram_fractions(ids, lengths, s);
    s.has_truncation_marker = truncation_markers.matches(text);
    return s;
}

}  // namespace sieve
