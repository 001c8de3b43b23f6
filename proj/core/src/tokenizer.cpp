#include "sieve/tokenizer.hpp"

#include <fstream>

#include "sieve/error.hpp"
#include "sieve/thai_script.hpp"
#include "sieve/utf8.hpp"

namespace sieve {

const char* to_string(TokenizerMode mode) noexcept {
    return mode == TokenizerMode::Simple ? "simple" : "whitespace";
}

TokenizerMode parse_tokenizer_mode(std::string_view name) {
    if (name == "simple") return TokenizerMode::Simple;
    if (name == "whitespace") return TokenizerMode::Whitespace;
    throw ConfigError("unknown tokenizer mode '" + std::string(name) +
                      "' (expected simple or whitespace)");
}

std::vector<std::string_view> Tokenizer::tokenize(std::string_view text) const {
    const auto spans = tokenize_spans(text);
    std::vector<std::string_view> out;
    out.reserve(spans.size());
    for (const auto& s : spans) out.push_back(s.view(text));
    return out;
}

std::vector<TokenSpan> WhitespaceTokenizer::tokenize_spans(std::string_view text) const {
    std::vector<TokenSpan> out;
    std::size_t pos = 0;
    std::size_t token_start = 0;
    bool in_token = false;
    while (pos < text.size()) {
        const std::size_t at = pos;
        const char32_t c = utf8::decode(text, pos);
        if (utf8::is_space(c)) {
            if (in_token) out.push_back({token_start, at});
            in_token = false;
        } else if (!in_token) {
            token_start = at;
            in_token = true;
        }
    }
    if (in_token) out.push_back({token_start, text.size()});
    return out;
}

// ---------------------------------------------------------------------------
// Dictionary

Dictionary::Dictionary(std::span<const std::string> words) {
    for (const auto& w : words) insert(w);
}

Dictionary Dictionary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read dictionary file " + path.string());
    Dictionary dict;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t b = 0;
        std::size_t e = line.size();
        while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
        while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t' || line[e - 1] == '\r')) --e;
        if (b == e || line[b] == '#') continue;
        dict.insert(std::string_view(line).substr(b, e - b));
    }
    return dict;
}

void Dictionary::insert(std::string_view word) {
    if (word.empty()) return;
    std::uint32_t node = 0;
    for (std::size_t pos = 0; pos < word.size();) {
        const char32_t c = utf8::decode(word, pos);
        const auto key = edge_key(node, c);
        auto it = edges_.find(key);
        if (it == edges_.end()) {
            const auto next = static_cast<std::uint32_t>(terminal_.size());
            terminal_.push_back(false);
            edges_.emplace(key, next);
            node = next;
        } else {
            node = it->second;
        }
    }
    if (!terminal_[node]) {
        terminal_[node] = true;
        ++word_count_;
    }
}

bool Dictionary::contains(std::string_view word) const {
    if (word.empty()) return false;
    std::uint32_t node = 0;
    for (std::size_t pos = 0; pos < word.size();) {
        auto it = edges_.find(edge_key(node, utf8::decode(word, pos)));
        if (it == edges_.end()) return false;
        node = it->second;
    }
    return terminal_[node];
}

void Dictionary::match_prefixes(std::span<const char32_t> scalars, std::size_t begin,
                                std::vector<std::size_t>& ends) const {
    ends.clear();
    std::uint32_t node = 0;
    for (std::size_t i = begin; i < scalars.size(); ++i) {
        auto it = edges_.find(edge_key(node, scalars[i]));
        if (it == edges_.end()) return;
        node = it->second;
        if (terminal_[node]) ends.push_back(i + 1);
    }
}

// ---------------------------------------------------------------------------
// DictionaryTokenizer

DictionaryTokenizer::DictionaryTokenizer(std::shared_ptr<const Dictionary> dictionary)
    : dictionary_(std::move(dictionary)) {
    if (!dictionary_) throw ConfigError("simple tokenizer requires a dictionary");
}

namespace {

struct Cost {
    std::uint32_t unknown = 0;
    std::uint32_t tokens = 0;

    bool operator<(const Cost& o) const noexcept {
        return unknown != o.unknown ? unknown < o.unknown : tokens < o.tokens;
    }
};

struct Scratch {
    std::vector<char32_t> scalars;
    std::vector<std::size_t> offsets;
    std::vector<bool> boundary;
    std::vector<Cost> best;
    std::vector<std::size_t> next;
    std::vector<std::size_t> ends;
};

}  // namespace

void DictionaryTokenizer::segment_thai(std::string_view text, std::size_t begin, std::size_t end,
                                       std::vector<TokenSpan>& out) const {
    thread_local Scratch s;
    s.scalars.clear();
    s.offsets.clear();
    for (std::size_t pos = begin; pos < end;) {
        s.offsets.push_back(pos);
        s.scalars.push_back(utf8::decode(text, pos));
    }
    const std::size_t n = s.scalars.size();
    s.offsets.push_back(end);

    s.boundary.assign(n + 1, true);
    for (std::size_t i = 1; i < n; ++i) s.boundary[i] = !thai::is_combining_mark(s.scalars[i]);

    s.best.assign(n + 1, Cost{});
    s.next.assign(n + 1, n);
    for (std::size_t i = n; i-- > 0;) {
        if (!s.boundary[i]) continue;
        std::size_t unit_end = i + 1;
        while (!s.boundary[unit_end]) ++unit_end;

        Cost best{s.best[unit_end].unknown + 1, s.best[unit_end].tokens + 1};
        std::size_t best_next = unit_end;
        dictionary_->match_prefixes(s.scalars, i, s.ends);
        // Longest first so that equal-cost ties keep the longer word.
        for (auto it = s.ends.rbegin(); it != s.ends.rend(); ++it) {
            const std::size_t j = *it;
            if (!s.boundary[j]) continue;
            const Cost c{s.best[j].unknown, s.best[j].tokens + 1};
            if (c < best || (!(best < c) && j > best_next)) {
                best = c;
                best_next = j;
            }
        }
        s.best[i] = best;
        s.next[i] = best_next;
    }
    for (std::size_t i = 0; i < n; i = s.next[i]) {
        out.push_back({s.offsets[i], s.offsets[s.next[i]]});
    }
}

std::vector<TokenSpan> DictionaryTokenizer::tokenize_spans(std::string_view text) const {
    std::vector<TokenSpan> out;
    std::size_t pos = 0;
    std::size_t run_start = 0;
    enum class Run { None, Thai, Other } run = Run::None;

    auto flush = [&](std::size_t run_end) {
        if (run == Run::Thai) {
            segment_thai(text, run_start, run_end, out);
        } else if (run == Run::Other) {
            out.push_back({run_start, run_end});
        }
        run = Run::None;
    };

    while (pos < text.size()) {
        const std::size_t at = pos;
        const char32_t c = utf8::decode(text, pos);
        if (utf8::is_space(c)) {
            flush(at);
            continue;
        }
        const Run kind = thai::is_thai(c) ? Run::Thai : Run::Other;
        if (kind != run) {
            flush(at);
            run = kind;
            run_start = at;
        }
    }
    flush(text.size());
    return out;
}

std::shared_ptr<const Tokenizer> make_tokenizer(TokenizerMode mode,
                                                const std::filesystem::path& dictionary) {
    if (mode == TokenizerMode::Whitespace) return std::make_shared<WhitespaceTokenizer>();
    if (dictionary.empty()) throw ConfigError("simple tokenizer requires a dictionary path");
    if (!std::filesystem::exists(dictionary)) {
        throw ConfigError("dictionary file not found: " + dictionary.string());
    }
    return std::make_shared<DictionaryTokenizer>(
        std::make_shared<const Dictionary>(Dictionary::load(dictionary)));
}

}  // namespace sieve
