#include "sieve/dedup.hpp"

#include "sieve/error.hpp"
#include "sieve/lexicon.hpp"
#include "sieve/taggers.hpp"

namespace sieve {

const char* to_string(DedupMode mode) noexcept { return mode == DedupMode::Url ? "url" : "doc"; }

DedupMode parse_dedup_mode(std::string_view name) {
    if (name == "url") return DedupMode::Url;
    if (name == "doc" || name == "doc_text") return DedupMode::DocText;
    throw ConfigError("unknown dedup mode '" + std::string(name) + "' (expected url or doc)");
}

std::string_view dedup_attribute_name(DedupMode mode) noexcept {
    return mode == DedupMode::Url ? attr::kUrlDuplicate : attr::kDocDuplicate;
}

std::string normalize_url(std::string_view url) {
    std::string out;
    out.reserve(url.size());
    std::string_view rest = url;
    if (const auto sep = url.find("://"); sep != std::string_view::npos) {
        const auto host_end = url.find_first_of("/?#", sep + 3);
        const auto authority_end = host_end == std::string_view::npos ? url.size() : host_end;
        out += ascii_lower(url.substr(0, authority_end));
        rest = url.substr(authority_end);
    }
    const auto path_end = rest.find_first_of("?#");
    std::string_view path = rest.substr(0, path_end);
    const std::string_view tail = path_end == std::string_view::npos ? "" : rest.substr(path_end);
    while (!path.empty() && path.back() == '/') path.remove_suffix(1);
    out += path;
    out += tail;
    return out;
}

std::optional<std::string> dedup_key(const Document& doc, DedupMode mode) {
    if (mode == DedupMode::DocText) return doc.text;
    if (doc.url.empty()) return std::nullopt;
    return normalize_url(doc.url);
}

DedupPass::DedupPass(BloomFilter& filter, DedupMode mode, std::uint64_t expected_items)
    : filter_(filter), mode_(mode), expected_items_(expected_items) {}

AttributeRecord DedupPass::mark(const Document& doc) {
    ++documents_;
    double score = 0.0;
    if (auto key = dedup_key(doc, mode_)) {
        if (filter_.contains(*key)) {
            score = 1.0;
            ++duplicates_;
        } else {
            filter_.insert(*key);
            if (filter_.item_count() > expected_items_) ++capacity_warnings_;
        }
    } else {
        ++skipped_empty_;
    }
    AttributeRecord record(doc.id);
    record.add(SpanAttribute::whole_document(std::string(dedup_attribute_name(mode_)), doc.text,
                                             score));
    return record;
}

std::vector<AttributeRecord> DedupPass::mark(std::span<const Document> docs) {
    std::vector<AttributeRecord> out;
    out.reserve(docs.size());
    for (const auto& d : docs) out.push_back(mark(d));
    return out;
}

DedupSummary dedup_directory(const std::filesystem::path& input_dir,
                             const std::filesystem::path& output_dir, DedupMode mode,
                             BloomFilter& filter, std::uint64_t expected_items,
                             ParseMode parse_mode) {
    DedupPass pass(filter, mode, expected_items);
    DedupSummary summary;
    for (const auto& rel : list_shards(input_dir)) {
        std::size_t skipped = 0;
        const auto docs = read_shard(input_dir / rel, parse_mode, &skipped);
        write_attributes(output_dir / rel, pass.mark(docs));
        summary.parse_skipped += skipped;
        ++summary.shards;
    }
    summary.documents = pass.documents();
    summary.duplicates = pass.duplicates();
    summary.skipped_empty = pass.skipped_empty();
    summary.capacity_warnings = pass.capacity_warnings();
    return summary;
}

}  // namespace sieve
