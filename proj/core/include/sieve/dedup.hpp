#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sieve/bloom_filter.hpp"
#include "sieve/document.hpp"
#include "sieve/shard_io.hpp"

namespace sieve {

enum class DedupMode { Url, DocText };

const char* to_string(DedupMode mode) noexcept;
// Accepts "url", "doc" and "doc_text".
DedupMode parse_dedup_mode(std::string_view name);

// Attribute written by a pass in the given mode.
std::string_view dedup_attribute_name(DedupMode mode) noexcept;

// Lowercases scheme and host and strips trailing slashes from the path.
// Query strings and fragments are kept verbatim.
std::string normalize_url(std::string_view url);

// Key a document contributes to the filter; nullopt for an empty url in
// Url mode (such documents are never inserted and never flagged).
std::optional<std::string> dedup_key(const Document& doc, DedupMode mode);

// First-occurrence duplicate marking over a stream of documents. The first
// document carrying a key scores 0.0 and is inserted; later ones score 1.0.
class DedupPass {
public:
    DedupPass(BloomFilter& filter, DedupMode mode, std::uint64_t expected_items);

    AttributeRecord mark(const Document& doc);
    std::vector<AttributeRecord> mark(std::span<const Document> docs);

    std::uint64_t documents() const noexcept { return documents_; }
    std::uint64_t duplicates() const noexcept { return duplicates_; }
    std::uint64_t skipped_empty() const noexcept { return skipped_empty_; }
    // Inserts performed after the filter passed its expected capacity.
    std::uint64_t capacity_warnings() const noexcept { return capacity_warnings_; }

private:
    BloomFilter& filter_;
    DedupMode mode_;
    std::uint64_t expected_items_;
    std::uint64_t documents_ = 0;
    std::uint64_t duplicates_ = 0;
    std::uint64_t skipped_empty_ = 0;
    std::uint64_t capacity_warnings_ = 0;
};

struct DedupSummary {
    std::uint64_t shards = 0;
    std::uint64_t documents = 0;
    std::uint64_t duplicates = 0;
    std::uint64_t skipped_empty = 0;
    std::uint64_t capacity_warnings = 0;
    std::uint64_t parse_skipped = 0;
};

// Runs a pass over every shard of `input_dir` in list_shards() order and
// writes one sidecar per shard under `output_dir` at the same relative path.
DedupSummary dedup_directory(const std::filesystem::path& input_dir,
                             const std::filesystem::path& output_dir, DedupMode mode,
                             BloomFilter& filter, std::uint64_t expected_items,
                             ParseMode parse_mode = ParseMode::Strict);

}  // namespace sieve
