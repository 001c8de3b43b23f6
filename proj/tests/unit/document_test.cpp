#include <gtest/gtest.h>

#include <random>

#include "sieve/document.hpp"
#include "sieve/error.hpp"
#include "sieve/utf8.hpp"

namespace sieve {
namespace {

TEST(ParseDocument, MinimalSchema) {
    const auto d = parse_document(R"({"id":"a","text":"สวัสดี"})");
    EXPECT_EQ(d.id, "a");
    EXPECT_EQ(d.text, "สวัสดี");
    EXPECT_EQ(d.url, "");
    EXPECT_EQ(d.source, "");
    EXPECT_EQ(d.created, "");
}

TEST(ParseDocument, IgnoresUnknownKeys) {
    const auto d = parse_document(R"({"id":"b","text":"x","url":"http://e.com","extra":1})");
    EXPECT_EQ(d.url, "http://e.com");
    EXPECT_EQ(d.text, "x");
}

TEST(ParseDocument, MissingIdIsSchemaError) {
    EXPECT_THROW(parse_document(R"({"text":"x"})"), SchemaError);
    EXPECT_THROW(parse_document(R"({"id":"a"})"), SchemaError);
    EXPECT_THROW(parse_document(R"({"id":"","text":"x"})"), SchemaError);
    EXPECT_THROW(parse_document(R"({"id":3,"text":"x"})"), SchemaError);
}

TEST(ParseDocument, MalformedJsonCarriesLineNumber) {
    try {
        parse_document("{not json", "shard.jsonl", 17);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 17U);
        EXPECT_EQ(e.source(), "shard.jsonl");
    }
}

TEST(SerializeDocument, RoundTrip) {
    Document d{"id-1", "http://x.th", "cc", "2024-01-01", "บรรทัด\nสอง \"quoted\""};
    EXPECT_EQ(parse_document(serialize_document(d)), d);
}

TEST(MakeSpan, RejectsOffsetsInsideScalars) {
    const std::string text = "กข";
    EXPECT_NO_THROW(make_span(text, 0, 3, 1.0));
    EXPECT_THROW(make_span(text, 1, 3, 1.0), SchemaError);
    EXPECT_THROW(make_span(text, 0, 7, 1.0), SchemaError);
    EXPECT_THROW(make_span(text, 3, 0, 1.0), SchemaError);
}

// Random valid strings, random offsets: construction succeeds exactly when
// both offsets are scalar boundaries in order.
TEST(MakeSpan, PropertyBoundaryOffsetsOnly) {
    std::mt19937 rng(11);
    const char32_t alphabet[] = {U'a', U'ก', U'่', U'€', U'😀', U' '};
    for (int iter = 0; iter < 500; ++iter) {
        std::string text;
        std::uniform_int_distribution<int> len(0, 12), pick(0, 5);
        for (int i = len(rng); i > 0; --i) utf8::append(text, alphabet[pick(rng)]);
        std::uniform_int_distribution<std::size_t> off(0, text.size() + 1);
        const std::size_t a = off(rng);
        const std::size_t b = off(rng);
        const bool valid = a <= b && b <= text.size() && utf8::is_boundary(text, a) &&
                           utf8::is_boundary(text, b);
        if (valid) {
            const Span s = make_span(text, a, b, 0.5);
            EXPECT_EQ(s.start, a);
            EXPECT_EQ(s.end, b);
        } else {
            EXPECT_THROW(make_span(text, a, b, 0.5), SchemaError);
        }
    }
}

TEST(AttributeRecord, RoundTripsExample) {
    AttributeRecord r("a");
    r.add(SpanAttribute("lang.thai_ratio", {{0, 18, 0.9}}));
    const std::string line = serialize_attribute_record(r);
    EXPECT_EQ(line, R"({"id":"a","attributes":{"lang.thai_ratio":[[0,18,0.9]]}})");
    EXPECT_EQ(parse_attribute_record(line), r);
}

TEST(AttributeRecord, PreservesInsertionOrder) {
    AttributeRecord r("a");
    r.add(SpanAttribute("z.last", {{0, 1, 1.0}}));
    r.add(SpanAttribute("a.first", {{0, 1, 2.0}}));
    const auto back = parse_attribute_record(serialize_attribute_record(r));
    ASSERT_EQ(back.attributes().size(), 2U);
    EXPECT_EQ(back.attributes()[0].name(), "z.last");
    EXPECT_EQ(back.attributes()[1].name(), "a.first");
}

TEST(AttributeRecord, ReversedSpanFailsSerialization) {
    AttributeRecord r("a");
    r.add(SpanAttribute("x", {{5, 2, 1.0}}));
    EXPECT_THROW(serialize_attribute_record(r), FormatError);
}

TEST(AttributeRecord, OverlappingSpansFailSerialization) {
    AttributeRecord r("a");
    r.add(SpanAttribute("x", {{0, 4, 1.0}, {3, 6, 1.0}}));
    EXPECT_THROW(serialize_attribute_record(r), FormatError);
}

TEST(AttributeRecord, DuplicateNameRejected) {
    AttributeRecord r("a");
    r.add(SpanAttribute("x", {}));
    EXPECT_THROW(r.add(SpanAttribute("x", {})), SchemaError);
}

TEST(SpanAttribute, WholeDocumentAndScores) {
    const auto a = SpanAttribute::whole_document("s", "กข", 0.25);
    ASSERT_EQ(a.spans().size(), 1U);
    EXPECT_EQ(a.spans()[0], (Span{0, 6, 0.25}));
    EXPECT_DOUBLE_EQ(a.score(), 0.25);
    SpanAttribute multi("m", {{0, 1, 0.2}, {2, 3, 0.7}});
    EXPECT_DOUBLE_EQ(multi.max_score(), 0.7);
    EXPECT_DOUBLE_EQ(SpanAttribute("e", {}).score(), 0.0);
}

}  // namespace
}  // namespace sieve
