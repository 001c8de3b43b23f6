#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sieve {

// One web page as it travels through the pipeline.
struct Document {
    std::string id;
    std::string url;
    std::string source;
    std::string created;
    std::string text;

    bool operator==(const Document&) const = default;
};

// A byte range [start, end) over a document's UTF-8 text with a score.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;
    double score = 0.0;

    bool operator==(const Span&) const = default;
};

// Checked constructor: offsets must be ordered, in range and on scalar
// boundaries of `text`. Throws SchemaError otherwise.
Span make_span(std::string_view text, std::size_t start, std::size_t end, double score);

// Single span covering the whole text.
Span whole_document_span(std::string_view text, double score);

// Named tagger verdict. Spans are sorted by start and non-overlapping.
class SpanAttribute {
public:
    SpanAttribute() = default;
    // Unchecked; taggers build spans through make_span(). Serialization
    // runs validate_order() before anything reaches disk.
    SpanAttribute(std::string name, std::vector<Span> spans)
        : name_(std::move(name)), spans_(std::move(spans)) {}

    static SpanAttribute whole_document(std::string name, std::string_view text, double score);

    const std::string& name() const noexcept { return name_; }
    const std::vector<Span>& spans() const noexcept { return spans_; }

    // Score of a whole-document attribute (first span), 0 when empty.
    double score() const noexcept { return spans_.empty() ? 0.0 : spans_.front().score; }
    double max_score() const noexcept;

    // Throws FormatError if a span is reversed or two spans overlap.
    void validate_order() const;
    // Throws SchemaError if any span leaves `text` or splits a scalar.
    void validate_against(std::string_view text) const;

    bool operator==(const SpanAttribute&) const = default;

private:
    std::string name_;
    std::vector<Span> spans_;
};

// Tagger output for one document, in insertion order.
class AttributeRecord {
public:
    AttributeRecord() = default;
    explicit AttributeRecord(std::string id) : id_(std::move(id)) {}

    const std::string& id() const noexcept { return id_; }
    const std::vector<SpanAttribute>& attributes() const noexcept { return attributes_; }

    // Throws SchemaError on a duplicate attribute name.
    void add(SpanAttribute attribute);
    void merge(const AttributeRecord& other);

    const SpanAttribute* find(std::string_view name) const noexcept;

    bool operator==(const AttributeRecord&) const = default;

private:
    std::string id_;
    std::vector<SpanAttribute> attributes_;
};

// Parses one JSON Lines document. `source`/`line_number` only label errors.
Document parse_document(std::string_view line, std::string_view source = "<input>",
                        std::size_t line_number = 1);
std::string serialize_document(const Document& doc);

AttributeRecord parse_attribute_record(std::string_view line, std::string_view source = "<input>",
                                       std::size_t line_number = 1);
// Throws FormatError when a span has start > end or spans overlap.
std::string serialize_attribute_record(const AttributeRecord& record);

}  // namespace sieve
