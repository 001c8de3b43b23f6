#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sieve/document.hpp"

namespace sieve {

enum class ParseMode { Strict, Lenient };

// True for `.jsonl` and `.jsonl.gz` paths.
bool is_shard_path(const std::filesystem::path& path);
bool is_gzip_path(const std::filesystem::path& path);

// Line-oriented reader over a plain or gzip-compressed file. Blank lines
// are skipped but still counted in line_number().
class LineReader {
public:
    explicit LineReader(const std::filesystem::path& path);
    ~LineReader();
    LineReader(LineReader&&) noexcept;
    LineReader& operator=(LineReader&&) noexcept;
    LineReader(const LineReader&) = delete;
    LineReader& operator=(const LineReader&) = delete;

    bool next(std::string& line);
    std::size_t line_number() const noexcept { return line_number_; }
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::filesystem::path path_;
    std::size_t line_number_ = 0;
};

// Writes newline-terminated lines, gzip-compressed when the path says so.
// Parent directories are created on open.
class LineWriter {
public:
    explicit LineWriter(const std::filesystem::path& path);
    ~LineWriter();
    LineWriter(LineWriter&&) noexcept;
    LineWriter& operator=(LineWriter&&) noexcept;
    LineWriter(const LineWriter&) = delete;
    LineWriter& operator=(const LineWriter&) = delete;

    void write(std::string_view line);
    // Flushes and reports write errors; the destructor closes silently.
    void close();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::filesystem::path path_;
};

// Streams documents from one shard. In lenient mode malformed lines are
// skipped and counted; strict mode rethrows the ParseError/SchemaError.
class ShardReader {
public:
    explicit ShardReader(const std::filesystem::path& path, ParseMode mode = ParseMode::Strict);

    std::optional<Document> next();
    std::size_t skipped() const noexcept { return skipped_; }
    std::size_t line_number() const noexcept { return lines_.line_number(); }

private:
    LineReader lines_;
    ParseMode mode_;
    std::size_t skipped_ = 0;
    std::string buffer_;
};

std::vector<Document> read_shard(const std::filesystem::path& path,
                                 ParseMode mode = ParseMode::Strict,
                                 std::size_t* skipped = nullptr);
void write_shard(const std::filesystem::path& path, std::span<const Document> docs);

std::vector<AttributeRecord> read_attributes(const std::filesystem::path& path);
void write_attributes(const std::filesystem::path& path, std::span<const AttributeRecord> records);

// Shard files under `dir`, as paths relative to it, sorted lexicographically.
// This is the canonical processing order for every order-sensitive stage.
std::vector<std::filesystem::path> list_shards(const std::filesystem::path& dir);

}  // namespace sieve
