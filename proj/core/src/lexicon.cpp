#include "sieve/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "sieve/error.hpp"
#include "sieve/utf8.hpp"

namespace sieve {

namespace {

bool has_whitespace(std::string_view term) {
    for (std::size_t pos = 0; pos < term.size();) {
        if (utf8::is_space(utf8::decode(term, pos))) return true;
    }
    return false;
}

char lower(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::vector<std::string> read_list_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read list file " + path.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t b = 0;
        std::size_t e = line.size();
        while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
        while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t' || line[e - 1] == '\r')) --e;
        if (b == e || line[b] == '#') continue;
        out.emplace_back(line.substr(b, e - b));
    }
    return out;
}

Lexicon::Lexicon(std::string name, std::span<const std::string> terms) : name_(std::move(name)) {
    if (terms.empty()) throw ConfigError("lexicon '" + name_ + "' has no terms");
    for (const auto& t : terms) {
        if (t.empty() || has_whitespace(t)) {
            throw ConfigError("lexicon '" + name_ + "': term '" + t + "' is empty or has whitespace");
        }
        if (terms_.insert(t).second) ordered_.push_back(t);
    }
}

Lexicon Lexicon::load(const std::filesystem::path& path, std::string name) {
    const auto terms = read_list_file(path);
    return Lexicon(std::move(name), terms);
}

PhraseList::PhraseList(std::vector<std::string> phrases) {
    for (auto& p : phrases) {
        if (!p.empty()) phrases_.push_back(ascii_lower(p));
    }
}

PhraseList PhraseList::load(const std::filesystem::path& path) {
    return PhraseList(read_list_file(path));
}

bool PhraseList::matches(std::string_view text) const {
    return std::any_of(phrases_.begin(), phrases_.end(), [&](const std::string& p) {
        return !find_all_ci(text, p).empty();
    });
}

std::string ascii_lower(std::string_view text) {
    std::string out(text);
    for (auto& c : out) c = lower(c);
    return out;
}

std::vector<std::size_t> find_all_ci(std::string_view haystack, std::string_view needle) {
    std::vector<std::size_t> out;
    if (needle.empty() || needle.size() > haystack.size()) return out;
    const char first = needle.front();
    for (std::size_t i = 0; i + needle.size() <= haystack.size();) {
        if (lower(haystack[i]) != first) {
            ++i;
            continue;
        }
        bool hit = true;
        for (std::size_t k = 1; k < needle.size(); ++k) {
            if (lower(haystack[i + k]) != needle[k]) {
                hit = false;
                break;
            }
        }
        if (hit) {
            out.push_back(i);
            i += needle.size();
        } else {
            ++i;
        }
    }
    return out;
}

}  // namespace sieve
