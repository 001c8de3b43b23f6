#include "sieve/policy.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <variant>

#include <json.hpp>

#include "sieve/taggers.hpp"

namespace sieve {

using json = nlohmann::ordered_json;

const char* to_string(StageAction action) noexcept {
    return action == StageAction::Drop ? "drop" : "mask";
}

namespace {

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

constexpr std::string_view kMaxScoreSuffix = ".max_score";

AttributeRef make_ref(std::string_view name) {
    if (name.size() > kMaxScoreSuffix.size() && name.ends_with(kMaxScoreSuffix)) {
        return {std::string(name.substr(0, name.size() - kMaxScoreSuffix.size())), true};
    }
    return {std::string(name), false};
}

}  // namespace

UnknownAttributeError::UnknownAttributeError(std::vector<std::string> names)
    : ConfigError("policy references unknown attributes: " + join(names)),
      names_(std::move(names)) {}

// ---------------------------------------------------------------------------
// Predicate parsing

enum class CompareOp { Less, LessEqual, Greater, GreaterEqual, Equal };

struct Predicate::Node {
    struct Compare {
        std::size_t ref;
        CompareOp op;
        double literal;
    };
    struct Binary {
        bool is_and;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };
    struct Negate {
        std::shared_ptr<const Node> operand;
    };
    std::variant<Compare, Binary, Negate> value;
};

namespace {

enum class TokKind { Ident, Number, Op, LParen, RParen, And, Or, Not, End };

struct Tok {
    TokKind kind;
    std::string text;
    std::size_t pos;
    double number = 0.0;
    CompareOp op = CompareOp::Equal;
};

class Parser {
public:
    Parser(std::string_view src, std::string_view stage, std::vector<AttributeRef>& refs)
        : src_(src), stage_(stage), refs_(refs) {
        advance();
    }

    std::shared_ptr<const Predicate::Node> parse() {
        if (cur_.kind == TokKind::End) fail(cur_.pos, "empty predicate");
        auto node = parse_or();
        if (cur_.kind != TokKind::End) fail(cur_.pos, "unexpected '" + cur_.text + "'");
        return node;
    }

private:
    using NodePtr = std::shared_ptr<const Predicate::Node>;

    [[noreturn]] void fail(std::size_t pos, const std::string& what) const {
        throw PolicySyntaxError(std::string(stage_), pos, what);
    }

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            cur_ = {TokKind::End, "<end>", start};
            return;
        }
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                    src_[pos_] == '.' || src_[pos_] == ':' || src_[pos_] == '-')) {
                ++pos_;
            }
            std::string word(src_.substr(start, pos_ - start));
            TokKind kind = TokKind::Ident;
            if (word == "and") kind = TokKind::And;
            if (word == "or") kind = TokKind::Or;
            if (word == "not") kind = TokKind::Not;
            cur_ = {kind, std::move(word), start};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
            const std::string rest(src_.substr(start));
            char* end = nullptr;
            const double v = std::strtod(rest.c_str(), &end);
            if (end == rest.c_str()) fail(start, "malformed number");
            pos_ = start + static_cast<std::size_t>(end - rest.c_str());
            cur_ = {TokKind::Number, std::string(src_.substr(start, pos_ - start)), start, v};
            return;
        }
        if (c == '(') {
            ++pos_;
            cur_ = {TokKind::LParen, "(", start};
            return;
        }
        if (c == ')') {
            ++pos_;
            cur_ = {TokKind::RParen, ")", start};
            return;
        }
        if (c == '<' || c == '>' || c == '=') {
            const bool eq = pos_ + 1 < src_.size() && src_[pos_ + 1] == '=';
            if (c == '=' && !eq) fail(start, "expected '=='");
            pos_ += eq ? 2 : 1;
            CompareOp op = CompareOp::Equal;
            if (c == '<') op = eq ? CompareOp::LessEqual : CompareOp::Less;
            if (c == '>') op = eq ? CompareOp::GreaterEqual : CompareOp::Greater;
            cur_ = {TokKind::Op, std::string(src_.substr(start, pos_ - start)), start, 0.0, op};
            return;
        }
        fail(start, std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_or() {
        auto lhs = parse_and();
        while (cur_.kind == TokKind::Or) {
            advance();
            auto rhs = parse_and();
            lhs = std::make_shared<Predicate::Node>(
                Predicate::Node{Predicate::Node::Binary{false, lhs, rhs}});
        }
        return lhs;
    }

    NodePtr parse_and() {
        auto lhs = parse_not();
        while (cur_.kind == TokKind::And) {
            advance();
            auto rhs = parse_not();
            lhs = std::make_shared<Predicate::Node>(
                Predicate::Node{Predicate::Node::Binary{true, lhs, rhs}});
        }
        return lhs;
    }

    NodePtr parse_not() {
        if (cur_.kind == TokKind::Not) {
            advance();
            return std::make_shared<Predicate::Node>(
                Predicate::Node{Predicate::Node::Negate{parse_not()}});
        }
        return parse_primary();
    }

    NodePtr parse_primary() {
        if (cur_.kind == TokKind::LParen) {
            advance();
            auto inner = parse_or();
            if (cur_.kind != TokKind::RParen) fail(cur_.pos, "expected ')'");
            advance();
            return inner;
        }
        if (cur_.kind != TokKind::Ident) {
            fail(cur_.pos, "expected an attribute name, found '" + cur_.text + "'");
        }
        const std::size_t ref = refs_.size();
        refs_.push_back(make_ref(cur_.text));
        advance();
        if (cur_.kind != TokKind::Op) {
            fail(cur_.pos, "expected a comparison operator, found '" + cur_.text + "'");
        }
        const CompareOp op = cur_.op;
        advance();
        if (cur_.kind != TokKind::Number) {
            fail(cur_.pos, "expected a numeric literal, found '" + cur_.text + "'");
        }
        const double literal = cur_.number;
        advance();
        return std::make_shared<Predicate::Node>(
            Predicate::Node{Predicate::Node::Compare{ref, op, literal}});
    }

    std::string_view src_;
    std::string_view stage_;
    std::vector<AttributeRef>& refs_;
    std::size_t pos_ = 0;
    Tok cur_{TokKind::End, "", 0};
};

bool eval_node(const Predicate::Node& node, const std::vector<AttributeRef>& refs,
               const AttributeLookup& lookup) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Predicate::Node::Compare>) {
                const double v = lookup(refs[n.ref]);
                switch (n.op) {
                    case CompareOp::Less: return v < n.literal;
                    case CompareOp::LessEqual: return v <= n.literal;
                    case CompareOp::Greater: return v > n.literal;
                    case CompareOp::GreaterEqual: return v >= n.literal;
                    case CompareOp::Equal: return v == n.literal;
                }
                return false;
            } else if constexpr (std::is_same_v<T, Predicate::Node::Binary>) {
                const bool lhs = eval_node(*n.lhs, refs, lookup);
                if (n.is_and) return lhs && eval_node(*n.rhs, refs, lookup);
                return lhs || eval_node(*n.rhs, refs, lookup);
            } else {
                return !eval_node(*n.operand, refs, lookup);
            }
        },
        node.value);
}

}  // namespace

Predicate Predicate::parse(std::string_view source, std::string_view stage_name) {
    Predicate p;
    p.source_ = std::string(source);
    Parser parser(p.source_, stage_name, p.refs_);
    p.root_ = parser.parse();
    return p;
}

bool Predicate::evaluate(const AttributeLookup& lookup) const {
    if (!root_) return true;
    return eval_node(*root_, refs_, lookup);
}

// ---------------------------------------------------------------------------
// Policy files

namespace {

StageSpec stage_from_json(const json& j, std::size_t index) {
    if (!j.is_object()) throw ConfigError("policy stage " + std::to_string(index) + " is not an object");
    StageSpec s;
    s.name = j.value("name", "");
    if (s.name.empty()) throw ConfigError("policy stage " + std::to_string(index) + " has no name");
    const std::string action = j.value("action", "drop");
    if (action == "drop") {
        s.action = StageAction::Drop;
        if (!j.contains("keep") || !j["keep"].is_string()) {
            throw ConfigError("drop stage '" + s.name + "' needs a 'keep' predicate string");
        }
        s.keep = j["keep"].get<std::string>();
    } else if (action == "mask") {
        s.action = StageAction::Mask;
        if (!j.contains("attributes") || !j["attributes"].is_array() || j["attributes"].empty()) {
            throw ConfigError("mask stage '" + s.name + "' needs a non-empty 'attributes' array");
        }
        for (const auto& a : j["attributes"]) {
            if (!a.is_string()) throw ConfigError("mask stage '" + s.name + "': attribute names must be strings");
            s.attributes.push_back(a.get<std::string>());
        }
        s.replacement = j.value("replacement", "");
    } else {
        throw ConfigError("stage '" + s.name + "': unknown action '" + action + "'");
    }
    return s;
}

}  // namespace

PolicySpec parse_policy_json(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("policy is not valid JSON: ") + e.what());
    }
    const json* stages = &j;
    if (j.is_object()) {
        if (!j.contains("stages")) throw ConfigError("policy object needs a 'stages' array");
        stages = &j["stages"];
    }
    if (!stages->is_array()) throw ConfigError("policy stages must be an array");
    PolicySpec spec;
    for (std::size_t i = 0; i < stages->size(); ++i) {
        spec.stages.push_back(stage_from_json((*stages)[i], i));
    }
    return spec;
}

PolicySpec load_policy(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read policy file " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_policy_json(text);
}

std::string policy_to_json(const PolicySpec& spec) {
    json stages = json::array();
    for (const auto& s : spec.stages) {
        json j;
        j["name"] = s.name;
        j["action"] = to_string(s.action);
        if (s.action == StageAction::Drop) {
            j["keep"] = s.keep;
        } else {
            j["attributes"] = s.attributes;
            j["replacement"] = s.replacement;
        }
        stages.push_back(std::move(j));
    }
    json out;
    out["stages"] = std::move(stages);
    return out.dump(2);
}

// ---------------------------------------------------------------------------
// Compilation

std::set<std::string> FilterPolicy::referenced_attributes() const {
    std::set<std::string> out;
    for (const auto& s : stages) {
        for (const auto& r : s.keep.references()) out.insert(r.attribute);
        out.insert(s.mask_attributes.begin(), s.mask_attributes.end());
    }
    return out;
}

FilterPolicy compile_policy(const PolicySpec& spec, const std::set<std::string>& available) {
    FilterPolicy policy;
    policy.spec = spec;
    std::set<std::string> names;
    std::vector<std::string> unknown;
    auto check = [&](const std::string& attr) {
        if (!available.contains(attr) &&
            std::find(unknown.begin(), unknown.end(), attr) == unknown.end()) {
            unknown.push_back(attr);
        }
    };
    for (const auto& s : spec.stages) {
        if (!names.insert(s.name).second) {
            throw ConfigError("duplicate policy stage name '" + s.name + "'");
        }
        CompiledStage c;
        c.name = s.name;
        c.action = s.action;
        if (s.action == StageAction::Drop) {
            c.keep = Predicate::parse(s.keep, s.name);
            for (const auto& r : c.keep.references()) check(r.attribute);
        } else {
            c.mask_attributes = s.attributes;
            c.replacement = s.replacement;
            for (const auto& a : s.attributes) check(a);
        }
        policy.stages.push_back(std::move(c));
    }
    if (!unknown.empty()) throw UnknownAttributeError(std::move(unknown));
    return policy;
}

double resolve_attribute(const AttributeRecord& record, const AttributeRef& ref) {
    const SpanAttribute* a = record.find(ref.attribute);
    if (!a) {
        throw SchemaError("document '" + record.id() + "' has no attribute '" + ref.attribute + "'");
    }
    if (ref.max_score) return a->max_score();
    if (is_span_attribute(ref.attribute)) return static_cast<double>(a->spans().size());
    return a->score();
}

}  // namespace sieve
