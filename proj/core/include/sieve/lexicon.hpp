#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sieve {

struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
    }
};

using StringSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

// Named set of single-token terms (stopwords, offensive or gambling words).
// Lookup is exact match against tokenizer output.
class Lexicon {
public:
    Lexicon() = default;
    // Throws ConfigError on an empty term list or a term containing whitespace.
    Lexicon(std::string name, std::span<const std::string> terms);

    // UTF-8, one term per line, '#' comment lines ignored.
    static Lexicon load(const std::filesystem::path& path, std::string name);

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    bool contains(std::string_view token) const { return terms_.contains(token); }
    const std::vector<std::string>& terms() const noexcept { return ordered_; }

private:
    std::string name_;
    StringSet terms_;
    std::vector<std::string> ordered_;
};

// Ordered list of literal phrases matched as substrings, ASCII
// case-insensitively. Phrases may contain spaces.
class PhraseList {
public:
    PhraseList() = default;
    explicit PhraseList(std::vector<std::string> phrases);

    static PhraseList load(const std::filesystem::path& path);

    const std::vector<std::string>& phrases() const noexcept { return phrases_; }
    bool empty() const noexcept { return phrases_.empty(); }

    bool matches(std::string_view text) const;

private:
    std::vector<std::string> phrases_;
};

// Lines of a UTF-8 list file with '#' comments and blank lines dropped.
std::vector<std::string> read_list_file(const std::filesystem::path& path);

// ASCII-only lowercase; other bytes pass through untouched.
std::string ascii_lower(std::string_view text);

// Byte offsets of every non-overlapping ASCII-case-insensitive occurrence
// of `needle` (which must already be lowercase).
std::vector<std::size_t> find_all_ci(std::string_view haystack, std::string_view needle);

}  // namespace sieve
