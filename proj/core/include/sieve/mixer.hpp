#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sieve/policy.hpp"
#include "sieve/shard_io.hpp"
#include "sieve/tokenizer.hpp"

namespace sieve {

struct StageReport {
    std::string name;
    StageAction action = StageAction::Drop;
    std::uint64_t documents_in = 0;
    std::uint64_t documents_dropped = 0;
    std::uint64_t tokens_in = 0;
    std::uint64_t tokens_dropped = 0;
    std::uint64_t spans_masked = 0;

    bool operator==(const StageReport&) const = default;
};

struct MixReport {
    std::string timestamp;
    std::string config_sha256;
    std::string tokenizer;
    std::uint64_t shards = 0;
    std::uint64_t documents_in = 0;
    std::uint64_t tokens_in = 0;
    std::uint64_t documents_out = 0;
    std::uint64_t tokens_out = 0;
    std::uint64_t parse_skipped = 0;
    std::vector<StageReport> stages;

    // Adds another shard's counts; stage lists must line up.
    void merge(const MixReport& other);
    std::string to_json() const;
};

struct MixOptions {
    ParseMode parse_mode = ParseMode::Strict;
    std::size_t workers = 1;
    // ISO-8601; the current UTC time when empty.
    std::string timestamp;
    // Hashed into config_sha256; the policy's JSON form when empty.
    std::string config_text;
};

std::size_t count_tokens(std::string_view text, const Tokenizer& tokenizer);

// Applies `policy` to every shard of `doc_dir` using the sidecars at the same
// relative path under each of `attr_dirs`, writes surviving documents to
// `out_dir` (mirroring shard paths) plus `out_dir/report.json`.
MixReport mix(const std::filesystem::path& doc_dir,
              const std::vector<std::filesystem::path>& attr_dirs, const PolicySpec& policy,
              const std::filesystem::path& out_dir, const Tokenizer& tokenizer,
              const MixOptions& options = {});

std::string utc_timestamp_now();
// SOURCE_DATE_EPOCH when set, else the current time.
std::string reproducible_timestamp();

}  // namespace sieve
