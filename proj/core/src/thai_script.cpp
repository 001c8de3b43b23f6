#include "sieve/thai_script.hpp"

#include "sieve/utf8.hpp"

namespace sieve::thai {

const char* to_string(ThaiCharClass cls) noexcept {
    switch (cls) {
        case ThaiCharClass::Consonant: return "consonant";
        case ThaiCharClass::Vowel: return "vowel";
        case ThaiCharClass::ToneMark: return "tone_mark";
        case ThaiCharClass::ThaiDigit: return "thai_digit";
        case ThaiCharClass::OtherThai: return "other_thai";
        case ThaiCharClass::NonThai: return "non_thai";
    }
    return "unknown";
}

ScriptCounts count_script(std::string_view text) noexcept {
    ScriptCounts counts;
    for (std::size_t pos = 0; pos < text.size();) {
        const char32_t c = utf8::decode(text, pos);
        ++counts.scalars;
        if (is_thai(c)) {
            ++counts.thai;
            if (classify_char(c) == ThaiCharClass::Consonant) ++counts.consonants;
        }
    }
    return counts;
}

double thai_char_ratio(std::string_view text) noexcept {
    const auto c = count_script(text);
    return c.scalars == 0 ? 0.0 : static_cast<double>(c.thai) / static_cast<double>(c.scalars);
}

double thai_consonant_char_ratio(std::string_view text) noexcept {
    const auto c = count_script(text);
    return c.scalars == 0 ? 0.0
                          : static_cast<double>(c.consonants) / static_cast<double>(c.scalars);
}

bool contains_thai(std::string_view token) noexcept {
    for (std::size_t pos = 0; pos < token.size();) {
        if (is_thai(utf8::decode(token, pos))) return true;
    }
    return false;
}

double fraction_tokens_with_thai(std::span<const std::string_view> tokens) noexcept {
    if (tokens.empty()) return 0.0;
    std::size_t with_thai = 0;
    for (auto t : tokens) {
        if (contains_thai(t)) ++with_thai;
    }
    return static_cast<double>(with_thai) / static_cast<double>(tokens.size());
}

std::vector<LineRange> line_ranges(std::string_view text) {
    std::vector<LineRange> out;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t nl = text.find('\n', start);
        const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        if (end > start) out.push_back({start, end});
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    for (const auto& r : line_ranges(text)) out.push_back(text.substr(r.start, r.end - r.start));
    return out;
}

}  // namespace sieve::thai
