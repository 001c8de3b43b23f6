#include "sieve/document.hpp"

#include <algorithm>

#include <json.hpp>

#include "sieve/error.hpp"
#include "sieve/utf8.hpp"

namespace sieve {

using json = nlohmann::ordered_json;

Span make_span(std::string_view text, std::size_t start, std::size_t end, double score) {
    if (start > end || end > text.size()) {
        throw SchemaError("span [" + std::to_string(start) + ", " + std::to_string(end) +
                          ") out of range for text of " + std::to_string(text.size()) + " bytes");
    }
    if (!utf8::is_boundary(text, start) || !utf8::is_boundary(text, end)) {
        throw SchemaError("span [" + std::to_string(start) + ", " + std::to_string(end) +
                          ") does not fall on UTF-8 character boundaries");
    }
    return Span{start, end, score};
}

Span whole_document_span(std::string_view text, double score) {
    return Span{0, text.size(), score};
}

SpanAttribute SpanAttribute::whole_document(std::string name, std::string_view text, double score) {
    return SpanAttribute(std::move(name), {whole_document_span(text, score)});
}

double SpanAttribute::max_score() const noexcept {
    double best = 0.0;
    bool first = true;
    for (const auto& s : spans_) {
        if (first || s.score > best) best = s.score;
        first = false;
    }
    return best;
}

void SpanAttribute::validate_order() const {
    std::size_t prev_end = 0;
    for (std::size_t i = 0; i < spans_.size(); ++i) {
        const auto& s = spans_[i];
        if (s.start > s.end) {
            throw FormatError("attribute '" + name_ + "': span " + std::to_string(i) + " has start " +
                              std::to_string(s.start) + " > end " + std::to_string(s.end));
        }
        if (i > 0 && s.start < prev_end) {
            throw FormatError("attribute '" + name_ + "': span " + std::to_string(i) +
                              " overlaps or precedes the previous span");
        }
        prev_end = s.end;
    }
}

void SpanAttribute::validate_against(std::string_view text) const {
    for (const auto& s : spans_) {
        make_span(text, s.start, s.end, s.score);
    }
}

void AttributeRecord::add(SpanAttribute attribute) {
    if (find(attribute.name()) != nullptr) {
        throw SchemaError("duplicate attribute '" + attribute.name() + "' on record '" + id_ + "'");
    }
    attributes_.push_back(std::move(attribute));
}

void AttributeRecord::merge(const AttributeRecord& other) {
    for (const auto& a : other.attributes()) add(a);
}

const SpanAttribute* AttributeRecord::find(std::string_view name) const noexcept {
    for (const auto& a : attributes_) {
        if (a.name() == name) return &a;
    }
    return nullptr;
}

namespace {

json parse_object(std::string_view line, std::string_view source, std::size_t line_number) {
    json j;
    try {
        j = json::parse(line.begin(), line.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(source), line_number, e.what());
    }
    if (!j.is_object()) {
        throw ParseError(std::string(source), line_number, "expected a JSON object");
    }
    return j;
}

std::string required_string(const json& j, const char* key, std::string_view source,
                            std::size_t line_number) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw SchemaError(std::string(source) + ":" + std::to_string(line_number) +
                          ": missing required key '" + key + "'");
    }
    if (!it->is_string()) {
        throw SchemaError(std::string(source) + ":" + std::to_string(line_number) + ": key '" +
                          key + "' must be a string");
    }
    return it->get<std::string>();
}

std::string optional_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    if (it->is_string()) return it->get<std::string>();
    return it->dump();
}

}  // namespace

Document parse_document(std::string_view line, std::string_view source, std::size_t line_number) {
    const json j = parse_object(line, source, line_number);
    Document doc;
    doc.id = required_string(j, "id", source, line_number);
    doc.text = required_string(j, "text", source, line_number);
    if (doc.id.empty()) {
        throw SchemaError(std::string(source) + ":" + std::to_string(line_number) +
                          ": document id must be non-empty");
    }
    doc.url = optional_string(j, "url");
    doc.source = optional_string(j, "source");
    doc.created = optional_string(j, "created");
    return doc;
}

std::string serialize_document(const Document& doc) {
    json j;
    j["id"] = doc.id;
    j["text"] = doc.text;
    if (!doc.url.empty()) j["url"] = doc.url;
    if (!doc.source.empty()) j["source"] = doc.source;
    if (!doc.created.empty()) j["created"] = doc.created;
    return j.dump();
}

AttributeRecord parse_attribute_record(std::string_view line, std::string_view source,
                                       std::size_t line_number) {
    const json j = parse_object(line, source, line_number);
    AttributeRecord record(required_string(j, "id", source, line_number));
    auto attrs = j.find("attributes");
    if (attrs == j.end() || !attrs->is_object()) {
        throw SchemaError(std::string(source) + ":" + std::to_string(line_number) +
                          ": missing object 'attributes'");
    }
    for (const auto& [name, spans_json] : attrs->items()) {
        if (!spans_json.is_array()) {
            throw SchemaError(std::string(source) + ":" + std::to_string(line_number) +
                              ": attribute '" + name + "' must be an array of spans");
        }
        std::vector<Span> spans;
        spans.reserve(spans_json.size());
        for (const auto& triple : spans_json) {
            if (!triple.is_array() || triple.size() != 3 || !triple[0].is_number_unsigned() ||
                !triple[1].is_number_unsigned() || !triple[2].is_number()) {
                throw SchemaError(std::string(source) + ":" + std::to_string(line_number) +
                                  ": attribute '" + name + "' has a malformed span");
            }
            spans.push_back(Span{triple[0].get<std::size_t>(), triple[1].get<std::size_t>(),
                                 triple[2].get<double>()});
        }
        SpanAttribute attribute(name, std::move(spans));
        attribute.validate_order();
        record.add(std::move(attribute));
    }
    return record;
}

std::string serialize_attribute_record(const AttributeRecord& record) {
    json attrs = json::object();
    for (const auto& a : record.attributes()) {
        a.validate_order();
        json spans = json::array();
        for (const auto& s : a.spans()) {
            spans.push_back(json::array({s.start, s.end, s.score}));
        }
        attrs[a.name()] = std::move(spans);
    }
    json j;
    j["id"] = record.id();
    j["attributes"] = std::move(attrs);
    return j.dump();
}

}  // namespace sieve
