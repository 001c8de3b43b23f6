#include "sieve/mixer.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <set>

#include <json.hpp>

#include "sieve/error.hpp"
#include "sieve/hashing.hpp"
#include "sieve/parallel.hpp"

namespace sieve {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

void MixReport::merge(const MixReport& other) {
    if (stages.size() != other.stages.size()) {
        throw Error("cannot merge mix reports with different stage lists");
    }
    shards += other.shards;
    documents_in += other.documents_in;
    tokens_in += other.tokens_in;
    documents_out += other.documents_out;
    tokens_out += other.tokens_out;
    parse_skipped += other.parse_skipped;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        auto& s = stages[i];
        const auto& o = other.stages[i];
        s.documents_in += o.documents_in;
        s.documents_dropped += o.documents_dropped;
        s.tokens_in += o.tokens_in;
        s.tokens_dropped += o.tokens_dropped;
        s.spans_masked += o.spans_masked;
    }
}

std::string MixReport::to_json() const {
    json j;
    j["timestamp"] = timestamp;
    j["config_sha256"] = config_sha256;
    j["tokenizer"] = tokenizer;
    j["shards"] = shards;
    j["documents_in"] = documents_in;
    j["tokens_in"] = tokens_in;
    j["documents_out"] = documents_out;
    j["tokens_out"] = tokens_out;
    j["parse_skipped"] = parse_skipped;
    json st = json::array();
    for (const auto& s : stages) {
        st.push_back({{"name", s.name},
                      {"action", to_string(s.action)},
                      {"documents_in", s.documents_in},
                      {"documents_dropped", s.documents_dropped},
                      {"tokens_in", s.tokens_in},
                      {"tokens_dropped", s.tokens_dropped},
                      {"spans_masked", s.spans_masked}});
    }
    j["stages"] = std::move(st);
    return j.dump(2);
}

std::size_t count_tokens(std::string_view text, const Tokenizer& tokenizer) {
    return tokenizer.count(text);
}

std::string utc_timestamp_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string reproducible_timestamp() {
    const char* env = std::getenv("SOURCE_DATE_EPOCH");
    if (!env || !*env) return utc_timestamp_now();
    char* end = nullptr;
    const long long secs = std::strtoll(env, &end, 10);
    if (*end != '\0' || secs < 0) return utc_timestamp_now();
    const auto t = static_cast<std::time_t>(secs);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

struct Edit {
    std::size_t start;
    std::size_t end;
    const std::string* replacement;
};

std::string render(std::string_view original, const std::vector<Edit>& edits) {
    std::string out;
    out.reserve(original.size());
    std::size_t pos = 0;
    for (const auto& e : edits) {
        out.append(original.substr(pos, e.start - pos));
        out.append(*e.replacement);
        pos = e.end;
    }
    out.append(original.substr(pos));
    return out;
}

// Adds the spans of `attribute` as edits, skipping empty spans and spans
// that touch bytes an earlier edit already replaced. Returns how many were
// applied.
std::size_t add_edits(std::vector<Edit>& edits, const SpanAttribute& attribute,
                      std::string_view text, const std::string& replacement) {
    attribute.validate_against(text);
    std::size_t applied = 0;
    for (const auto& s : attribute.spans()) {
        if (s.start == s.end) continue;
        auto it = std::lower_bound(edits.begin(), edits.end(), s.start,
                                   [](const Edit& e, std::size_t v) { return e.end <= v; });
        if (it != edits.end() && it->start < s.end) continue;
        edits.insert(it, Edit{s.start, s.end, &replacement});
        ++applied;
    }
    return applied;
}

std::set<std::string> sidecar_attribute_names(const std::vector<fs::path>& attr_dirs,
                                              const std::vector<fs::path>& shards, bool& found) {
    std::set<std::string> names;
    found = false;
    for (const auto& dir : attr_dirs) {
        for (const auto& rel : shards) {
            const fs::path p = dir / rel;
            std::error_code ec;
            if (!fs::is_regular_file(p, ec)) continue;
            LineReader reader(p);
            std::string line;
            if (!reader.next(line)) continue;
            const auto record = parse_attribute_record(line, p.string(), reader.line_number());
            for (const auto& a : record.attributes()) names.insert(a.name());
            found = true;
            break;
        }
    }
    return names;
}

struct ShardJob {
    const fs::path& doc_dir;
    const std::vector<fs::path>& attr_dirs;
    const FilterPolicy& policy;
    const fs::path& out_dir;
    const Tokenizer& tokenizer;
    ParseMode parse_mode;
};

MixReport mix_shard(const ShardJob& job, const fs::path& rel) {
    MixReport report;
    report.shards = 1;
    for (const auto& st : job.policy.stages) report.stages.push_back({st.name, st.action});

    const fs::path doc_path = job.doc_dir / rel;
    std::vector<std::string> raw;
    std::vector<Document> docs;
    std::vector<std::size_t> line_numbers;
    {
        LineReader reader(doc_path);
        std::string line;
        while (reader.next(line)) {
            try {
                docs.push_back(parse_document(line, doc_path.string(), reader.line_number()));
            } catch (const ParseError&) {
                if (job.parse_mode == ParseMode::Strict) throw;
                ++report.parse_skipped;
                continue;
            } catch (const SchemaError&) {
                if (job.parse_mode == ParseMode::Strict) throw;
                ++report.parse_skipped;
                continue;
            }
            raw.push_back(line);
            line_numbers.push_back(reader.line_number());
        }
    }

    std::vector<AttributeRecord> records(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) records[i] = AttributeRecord(docs[i].id);
    for (const auto& dir : job.attr_dirs) {
        const fs::path attr_path = dir / rel;
        std::error_code ec;
        if (!fs::is_regular_file(attr_path, ec)) {
            throw IoError("missing attribute file " + attr_path.string());
        }
        const auto sidecar = read_attributes(attr_path);
        if (sidecar.size() != docs.size()) {
            throw AlignmentError(doc_path.string() + ": " + attr_path.string() + " has " +
                                 std::to_string(sidecar.size()) + " records for " +
                                 std::to_string(docs.size()) + " documents");
        }
        for (std::size_t i = 0; i < docs.size(); ++i) {
            if (sidecar[i].id() != docs[i].id) {
                throw AlignmentError(doc_path.string() + ":" + std::to_string(line_numbers[i]) +
                                     ": document id '" + docs[i].id + "' but " +
                                     attr_path.string() + " has '" + sidecar[i].id() + "'");
            }
            records[i].merge(sidecar[i]);
        }
    }

    LineWriter writer(job.out_dir / rel);
    std::vector<Edit> edits;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const Document& doc = docs[i];
        const AttributeRecord& record = records[i];
        edits.clear();
        std::string text;
        bool edited = false;
        std::uint64_t tokens = count_tokens(doc.text, job.tokenizer);
        report.documents_in += 1;
        report.tokens_in += tokens;

        const AttributeLookup lookup = [&record](const AttributeRef& ref) {
            return resolve_attribute(record, ref);
        };
        bool dropped = false;
        for (std::size_t s = 0; s < job.policy.stages.size(); ++s) {
            const auto& stage = job.policy.stages[s];
            auto& sr = report.stages[s];
            sr.documents_in += 1;
            sr.tokens_in += tokens;
            if (stage.action == StageAction::Drop) {
                if (!stage.keep.evaluate(lookup)) {
                    sr.documents_dropped += 1;
                    sr.tokens_dropped += tokens;
                    dropped = true;
                    break;
                }
                continue;
            }
            std::size_t applied = 0;
            for (const auto& name : stage.mask_attributes) {
                const SpanAttribute* a = record.find(name);
                if (!a) {
                    throw SchemaError("document '" + doc.id + "' has no attribute '" + name + "'");
                }
                applied += add_edits(edits, *a, doc.text, stage.replacement);
            }
            if (applied > 0) {
                sr.spans_masked += applied;
                text = render(doc.text, edits);
                edited = true;
                tokens = count_tokens(text, job.tokenizer);
            }
        }
        if (dropped) continue;

        report.documents_out += 1;
        report.tokens_out += tokens;
        if (!edited) {
            writer.write(raw[i]);
            continue;
        }
        auto j = json::parse(raw[i]);
        j["text"] = text;
        writer.write(j.dump(-1, ' ', false, json::error_handler_t::replace));
    }
    writer.close();
    return report;
}

}  // namespace

MixReport mix(const fs::path& doc_dir, const std::vector<fs::path>& attr_dirs,
              const PolicySpec& spec, const fs::path& out_dir, const Tokenizer& tokenizer,
              const MixOptions& options) {
    std::error_code ec;
    if (!fs::is_directory(doc_dir, ec)) throw IoError("input directory not found: " + doc_dir.string());
    for (const auto& dir : attr_dirs) {
        if (!fs::is_directory(dir, ec)) throw IoError("attribute directory not found: " + dir.string());
    }
    const auto shards = list_shards(doc_dir);

    bool found = false;
    auto available = sidecar_attribute_names(attr_dirs, shards, found);
    if (!found) {
        // Nothing to check names against (no sidecar records at all); let the
        // policy through and rely on per-document lookups.
        for (const auto& st : spec.stages) {
            if (st.action == StageAction::Drop) {
                for (const auto& r : Predicate::parse(st.keep, st.name).references()) {
                    available.insert(r.attribute);
                }
            }
            available.insert(st.attributes.begin(), st.attributes.end());
        }
    }
    const FilterPolicy policy = compile_policy(spec, available);

    const ShardJob job{doc_dir, attr_dirs, policy, out_dir, tokenizer, options.parse_mode};
    std::vector<MixReport> parts(shards.size());
    parallel_for(shards.size(), options.workers,
                 [&](std::size_t i) { parts[i] = mix_shard(job, shards[i]); });

    MixReport report;
    for (const auto& st : policy.stages) report.stages.push_back({st.name, st.action});
    for (const auto& part : parts) report.merge(part);
    report.timestamp = options.timestamp.empty() ? utc_timestamp_now() : options.timestamp;
    report.config_sha256 =
        sha256_hex(options.config_text.empty() ? policy_to_json(spec) : options.config_text);
    report.tokenizer = to_string(tokenizer.mode());

    fs::create_directories(out_dir);
    LineWriter out(out_dir / "report.json");
    out.write(report.to_json());
    out.close();
    return report;
}

}  // namespace sieve
