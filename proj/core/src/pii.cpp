#include "sieve/pii.hpp"

#include <algorithm>
#include <string>

#include "sieve/taggers.hpp"

namespace sieve {

namespace {

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
bool is_alpha(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) noexcept { return is_digit(c) || is_alpha(c); }

bool is_local_char(char c) noexcept {
    return is_alnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}
bool is_domain_char(char c) noexcept { return is_alnum(c) || c == '.' || c == '-'; }

bool overlaps(const Span& s, const std::vector<Span>& taken) {
    return std::any_of(taken.begin(), taken.end(),
                       [&](const Span& t) { return s.start < t.end && t.start < s.end; });
}

// Validates a domain such as "mail.example.co": non-empty labels, at least
// one dot, alphabetic final label of length >= 2.
bool valid_domain(std::string_view d) {
    if (d.empty() || d.find('.') == std::string_view::npos) return false;
    std::size_t start = 0;
    for (;;) {
        const std::size_t dot = d.find('.', start);
        const std::string_view label = d.substr(start, dot == std::string_view::npos ? dot : dot - start);
        if (label.empty() || label.front() == '-' || label.back() == '-') return false;
        if (dot == std::string_view::npos) {
            return label.size() >= 2 && std::all_of(label.begin(), label.end(), is_alpha);
        }
        start = dot + 1;
    }
}

}  // namespace

std::vector<Span> PiiRules::find_emails(std::string_view text) const {
    std::vector<Span> out;
    std::size_t resume = 0;
    for (std::size_t at = text.find('@'); at != std::string_view::npos; at = text.find('@', at + 1)) {
        if (at < resume) continue;
        std::size_t begin = at;
        while (begin > resume && is_local_char(text[begin - 1])) --begin;
        while (begin < at && (text[begin] == '.')) ++begin;
        if (begin == at) continue;
        std::size_t end = at + 1;
        while (end < text.size() && is_domain_char(text[end])) ++end;
        while (end > at + 1 && (text[end - 1] == '.' || text[end - 1] == '-')) --end;
        if (!valid_domain(text.substr(at + 1, end - at - 1))) continue;
        out.push_back({begin, end, 1.0});
        resume = end;
    }
    return out;
}

std::vector<Span> PiiRules::find_phones(std::string_view text) const {
    std::vector<Span> out;
    const std::size_t n = text.size();
    std::vector<std::size_t> digits;
    for (std::size_t i = 0; i < n; ++i) {
        const char c = text[i];
        if (c != '0' && c != '+') continue;
        if (i > 0 && (is_alnum(text[i - 1]) || text[i - 1] == '+')) continue;

        std::size_t pos = i;
        if (c == '+') {
            if (text.substr(i, 3) != "+66") continue;
            pos = i + 3;
            if (pos < n && (text[pos] == ' ' || text[pos] == '-')) ++pos;
        } else {
            pos = i + 1;
        }
        // Collect the national digits, allowing one separator between digits.
        digits.clear();
        while (digits.size() < 11) {
            if (pos < n && is_digit(text[pos])) {
                digits.push_back(pos++);
                continue;
            }
            if (!digits.empty() && pos + 1 < n && (text[pos] == ' ' || text[pos] == '-') &&
                is_digit(text[pos + 1])) {
                ++pos;
                continue;
            }
            break;
        }
        if (digits.empty()) continue;

        auto accept = [&](std::size_t count) -> bool {
            if (digits.size() < count) return false;
            const char lead = text[digits[0]];
            const bool shape = count == 9 ? (lead == '6' || lead == '8' || lead == '9')
                                          : (lead >= '2' && lead <= '7');
            if (!shape) return false;
            const std::size_t end = digits[count - 1] + 1;
            // The digit run must stop here: no adjacent alnum, no "-<digit>",
            // and a following digit is only allowed after a space.
            if (end < n && is_alnum(text[end])) return false;
            if (end + 1 < n && text[end] == '-' && is_digit(text[end + 1])) return false;
            out.push_back({i, end, 1.0});
            return true;
        };
        if (accept(9) || accept(8)) i = out.back().end - 1;
    }
    return out;
}

std::vector<Span> PiiRules::find_ips(std::string_view text) const {
    std::vector<Span> out;
    const std::size_t n = text.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_digit(text[i])) continue;
        if (i > 0 && (is_alnum(text[i - 1]) || text[i - 1] == '.')) continue;
        std::size_t pos = i;
        bool ok = true;
        for (int octet = 0; octet < 4 && ok; ++octet) {
            if (octet > 0) {
                if (pos < n && text[pos] == '.') {
                    ++pos;
                } else {
                    ok = false;
                    break;
                }
            }
            int value = 0;
            int len = 0;
            while (pos < n && is_digit(text[pos]) && len < 4) {
                value = value * 10 + (text[pos] - '0');
                ++pos;
                ++len;
            }
            ok = len >= 1 && len <= 3 && value <= 255;
        }
        if (!ok) continue;
        if (pos < n && is_alnum(text[pos])) continue;
        if (pos + 1 < n && text[pos] == '.' && is_digit(text[pos + 1])) continue;
        out.push_back({i, pos, 1.0});
        i = pos - 1;
    }
    return out;
}

std::vector<SpanAttribute> tag_pii(const Document& doc, const PiiRules& rules) {
    const std::string_view text = doc.text;
    std::vector<Span> emails = rules.email ? rules.find_emails(text) : std::vector<Span>{};
    std::vector<Span> taken = emails;

    std::vector<Span> phones;
    if (rules.phone) {
        for (const auto& s : rules.find_phones(text)) {
            if (!overlaps(s, taken)) phones.push_back(s);
        }
    }
    taken.insert(taken.end(), phones.begin(), phones.end());

    std::vector<Span> ips;
    if (rules.ip) {
        for (const auto& s : rules.find_ips(text)) {
            if (!overlaps(s, taken)) ips.push_back(s);
        }
    }

    std::vector<SpanAttribute> out;
    out.emplace_back(std::string(attr::kPiiEmail), std::move(emails));
    out.emplace_back(std::string(attr::kPiiPhone), std::move(phones));
    out.emplace_back(std::string(attr::kPiiIp), std::move(ips));
    return out;
}

}  // namespace sieve
