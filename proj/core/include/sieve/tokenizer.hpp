#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sieve {

// Byte range of one token. Tokens are non-empty, sorted and disjoint;
// everything between them is whitespace.
struct TokenSpan {
    std::size_t start = 0;
    std::size_t end = 0;

    std::string_view view(std::string_view text) const noexcept {
        return text.substr(start, end - start);
    }
    bool operator==(const TokenSpan&) const = default;
};

enum class TokenizerMode { Simple, Whitespace };

const char* to_string(TokenizerMode mode) noexcept;
// Throws ConfigError for anything but "simple" / "whitespace".
TokenizerMode parse_tokenizer_mode(std::string_view name);

// Word segmentation strategy. Implementations are immutable after
// construction and safe to share across threads.
class Tokenizer {
public:
    virtual ~Tokenizer() = default;

    virtual std::vector<TokenSpan> tokenize_spans(std::string_view text) const = 0;
    virtual TokenizerMode mode() const noexcept = 0;

    std::vector<std::string_view> tokenize(std::string_view text) const;
    std::size_t count(std::string_view text) const { return tokenize_spans(text).size(); }
};

class WhitespaceTokenizer final : public Tokenizer {
public:
    std::vector<TokenSpan> tokenize_spans(std::string_view text) const override;
    TokenizerMode mode() const noexcept override { return TokenizerMode::Whitespace; }
};

// Prefix trie over Thai words keyed by scalar value.
class Dictionary {
public:
    Dictionary() = default;
    explicit Dictionary(std::span<const std::string> words);

    // One term per line; blank lines and lines starting with '#' are
    // ignored. Throws ConfigError if the file cannot be read.
    static Dictionary load(const std::filesystem::path& path);

    void insert(std::string_view word);
    bool contains(std::string_view word) const;
    std::size_t size() const noexcept { return word_count_; }

    // Ends (exclusive scalar indices) of every dictionary word that starts
    // at `begin` in `scalars`, shortest first.
    void match_prefixes(std::span<const char32_t> scalars, std::size_t begin,
                        std::vector<std::size_t>& ends) const;

private:
    static std::uint64_t edge_key(std::uint32_t node, char32_t c) noexcept {
        return (static_cast<std::uint64_t>(node) << 21) | static_cast<std::uint64_t>(c);
    }

    std::unordered_map<std::uint64_t, std::uint32_t> edges_;
    std::vector<bool> terminal_ = std::vector<bool>(1, false);
    std::size_t word_count_ = 0;
};

// Splits on whitespace and on Thai/non-Thai script transitions, then
// segments each Thai run by dictionary maximal matching: the segmentation
// with the fewest out-of-dictionary characters, then the fewest tokens.
// Unknown characters become single-character tokens (with any attached
// combining marks).
class DictionaryTokenizer final : public Tokenizer {
public:
    explicit DictionaryTokenizer(std::shared_ptr<const Dictionary> dictionary);

    std::vector<TokenSpan> tokenize_spans(std::string_view text) const override;
    TokenizerMode mode() const noexcept override { return TokenizerMode::Simple; }

    const Dictionary& dictionary() const noexcept { return *dictionary_; }

private:
    void segment_thai(std::string_view text, std::size_t begin, std::size_t end,
                      std::vector<TokenSpan>& out) const;

    std::shared_ptr<const Dictionary> dictionary_;
};

// `dictionary` is required for TokenizerMode::Simple.
std::shared_ptr<const Tokenizer> make_tokenizer(TokenizerMode mode,
                                                const std::filesystem::path& dictionary = {});

}  // namespace sieve
