#include "sieve/shard_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include <zlib.h>

#include "sieve/error.hpp"

namespace sieve {

namespace fs = std::filesystem;

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(),
                       [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

bool is_gzip_path(const fs::path& path) { return ends_with(path.filename().string(), ".jsonl.gz"); }

bool is_shard_path(const fs::path& path) {
    const auto name = path.filename().string();
    return ends_with(name, ".jsonl") || ends_with(name, ".jsonl.gz");
}

// ---------------------------------------------------------------------------
// LineReader

struct LineReader::Impl {
    std::FILE* file = nullptr;
    gzFile gz = nullptr;
    std::vector<char> chunk = std::vector<char>(1 << 16);

    ~Impl() {
        if (file) std::fclose(file);
        if (gz) gzclose(gz);
    }

    // Returns false at EOF; throws on gzip corruption.
    bool read_line(std::string& out, const fs::path& path) {
        out.clear();
        bool got_any = false;
        for (;;) {
            char* r = nullptr;
            if (gz) {
                r = gzgets(gz, chunk.data(), static_cast<int>(chunk.size()));
                if (!r) {
                    int err = 0;
                    const char* msg = gzerror(gz, &err);
                    if (err != Z_OK) throw IoError(path.string() + ": gzip error: " + msg);
                }
            } else {
                r = std::fgets(chunk.data(), static_cast<int>(chunk.size()), file);
                if (!r && std::ferror(file)) throw IoError(path.string() + ": read error");
            }
            if (!r) return got_any;
            got_any = true;
            const std::size_t len = std::strlen(chunk.data());
            if (len > 0 && chunk[len - 1] == '\n') {
                out.append(chunk.data(), len - 1);
                return true;
            }
            out.append(chunk.data(), len);
        }
    }
};

LineReader::LineReader(const fs::path& path) : impl_(std::make_unique<Impl>()), path_(path) {
    if (is_gzip_path(path)) {
        impl_->gz = gzopen(path.c_str(), "rb");
        if (!impl_->gz) throw IoError("cannot open " + path.string());
        gzbuffer(impl_->gz, 1 << 17);
    } else {
        impl_->file = std::fopen(path.c_str(), "rb");
        if (!impl_->file) throw IoError("cannot open " + path.string());
    }
}

LineReader::~LineReader() = default;
LineReader::LineReader(LineReader&&) noexcept = default;
LineReader& LineReader::operator=(LineReader&&) noexcept = default;

bool LineReader::next(std::string& line) {
    while (impl_->read_line(line, path_)) {
        ++line_number_;
        if (!is_blank(line)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// LineWriter

struct LineWriter::Impl {
    std::FILE* file = nullptr;
    gzFile gz = nullptr;

    ~Impl() {
        if (file) std::fclose(file);
        if (gz) gzclose(gz);
    }
};

LineWriter::LineWriter(const fs::path& path) : impl_(std::make_unique<Impl>()), path_(path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    if (is_gzip_path(path)) {
        impl_->gz = gzopen(path.c_str(), "wb6");
        if (!impl_->gz) throw IoError("cannot create " + path.string());
        gzbuffer(impl_->gz, 1 << 17);
    } else {
        impl_->file = std::fopen(path.c_str(), "wb");
        if (!impl_->file) throw IoError("cannot create " + path.string());
    }
}

LineWriter::~LineWriter() = default;
LineWriter::LineWriter(LineWriter&&) noexcept = default;
LineWriter& LineWriter::operator=(LineWriter&&) noexcept = default;

void LineWriter::write(std::string_view line) {
    if (impl_->gz) {
        if (!line.empty() &&
            gzwrite(impl_->gz, line.data(), static_cast<unsigned>(line.size())) == 0) {
            throw IoError(path_.string() + ": gzip write failed");
        }
        if (gzputc(impl_->gz, '\n') == -1) throw IoError(path_.string() + ": gzip write failed");
    } else if (impl_->file) {
        if (std::fwrite(line.data(), 1, line.size(), impl_->file) != line.size() ||
            std::fputc('\n', impl_->file) == EOF) {
            throw IoError(path_.string() + ": write failed");
        }
    } else {
        throw IoError(path_.string() + ": write after close");
    }
}

void LineWriter::close() {
    if (impl_->gz) {
        const int rc = gzclose(impl_->gz);
        impl_->gz = nullptr;
        if (rc != Z_OK) throw IoError(path_.string() + ": gzip close failed");
    }
    if (impl_->file) {
        const int rc = std::fclose(impl_->file);
        impl_->file = nullptr;
        if (rc != 0) throw IoError(path_.string() + ": close failed");
    }
}

// ---------------------------------------------------------------------------
// Shards

ShardReader::ShardReader(const fs::path& path, ParseMode mode) : lines_(path), mode_(mode) {}

std::optional<Document> ShardReader::next() {
    while (lines_.next(buffer_)) {
        try {
            return parse_document(buffer_, lines_.path().string(), lines_.line_number());
        } catch (const ParseError&) {
            if (mode_ == ParseMode::Strict) throw;
        } catch (const SchemaError&) {
            if (mode_ == ParseMode::Strict) throw;
        }
        ++skipped_;
    }
    return std::nullopt;
}

std::vector<Document> read_shard(const fs::path& path, ParseMode mode, std::size_t* skipped) {
    ShardReader reader(path, mode);
    std::vector<Document> docs;
    while (auto doc = reader.next()) docs.push_back(std::move(*doc));
    if (skipped) *skipped = reader.skipped();
    return docs;
}

void write_shard(const fs::path& path, std::span<const Document> docs) {
    LineWriter writer(path);
    for (const auto& doc : docs) writer.write(serialize_document(doc));
    writer.close();
}

std::vector<AttributeRecord> read_attributes(const fs::path& path) {
    LineReader lines(path);
    std::vector<AttributeRecord> records;
    std::string line;
    while (lines.next(line)) {
        records.push_back(parse_attribute_record(line, path.string(), lines.line_number()));
    }
    return records;
}

void write_attributes(const fs::path& path, std::span<const AttributeRecord> records) {
    // Serialize first so an invalid record never leaves a partial file behind.
    std::vector<std::string> lines;
    lines.reserve(records.size());
    for (const auto& r : records) lines.push_back(serialize_attribute_record(r));
    LineWriter writer(path);
    for (const auto& l : lines) writer.write(l);
    writer.close();
}

std::vector<fs::path> list_shards(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && is_shard_path(entry.path())) {
            out.push_back(fs::relative(entry.path(), dir));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
    return out;
}

}  // namespace sieve
