#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sieve/document.hpp"
#include "sieve/error.hpp"

namespace sieve {

enum class StageAction { Drop, Mask };

const char* to_string(StageAction action) noexcept;

// Declarative stage as written in a policy file.
//   drop: {"name": ..., "action": "drop", "keep": "<predicate>"}
//         documents for which the predicate is false are removed.
//   mask: {"name": ..., "action": "mask", "attributes": [...],
//          "replacement": "..."} splices every span of the listed
//         attributes out of the text, substituting `replacement`.
struct StageSpec {
    std::string name;
    StageAction action = StageAction::Drop;
    std::string keep;
    std::vector<std::string> attributes;
    std::string replacement;

    bool operator==(const StageSpec&) const = default;
};

struct PolicySpec {
    std::vector<StageSpec> stages;

    bool operator==(const PolicySpec&) const = default;
};

// Accepts {"stages": [...]} or a bare array of stages.
PolicySpec parse_policy_json(std::string_view json_text);
PolicySpec load_policy(const std::filesystem::path& path);
std::string policy_to_json(const PolicySpec& spec);

class PolicySyntaxError : public ConfigError {
public:
    PolicySyntaxError(std::string stage, std::size_t position, const std::string& what)
        : ConfigError("stage '" + stage + "': syntax error at position " +
                      std::to_string(position) + ": " + what),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Raised when a policy names attributes that no sidecar provides.
class UnknownAttributeError : public ConfigError {
public:
    explicit UnknownAttributeError(std::vector<std::string> names);
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    std::vector<std::string> names_;
};

// Reference to an attribute value inside a predicate. Span-list attributes
// resolve to their span count, or to their maximum span score when written
// with the `.max_score` suffix; whole-document attributes to their score.
struct AttributeRef {
    std::string attribute;
    bool max_score = false;
};

// Resolves an AttributeRef for the current document. Throws if missing.
using AttributeLookup = std::function<double(const AttributeRef&)>;

// Compiled predicate: `attr OP literal` terms combined with and/or/not and
// parentheses. OP is one of <, <=, >, >=, ==.
class Predicate {
public:
    struct Node;

    Predicate() = default;
    static Predicate parse(std::string_view source, std::string_view stage_name = "<expr>");

    bool evaluate(const AttributeLookup& lookup) const;
    const std::vector<AttributeRef>& references() const noexcept { return refs_; }
    const std::string& source() const noexcept { return source_; }

private:
    std::shared_ptr<const Node> root_;
    std::vector<AttributeRef> refs_;
    std::string source_;
};

struct CompiledStage {
    std::string name;
    StageAction action = StageAction::Drop;
    Predicate keep;
    std::vector<std::string> mask_attributes;
    std::string replacement;
};

struct FilterPolicy {
    PolicySpec spec;
    std::vector<CompiledStage> stages;

    bool empty() const noexcept { return stages.empty(); }
    // Every attribute name (without suffix) a stage reads.
    std::set<std::string> referenced_attributes() const;
};

// Parses every predicate and checks stage names are unique and that every
// referenced attribute is in `available`.
FilterPolicy compile_policy(const PolicySpec& spec, const std::set<std::string>& available);

// Value of `ref` in `record`; throws SchemaError when absent.
double resolve_attribute(const AttributeRecord& record, const AttributeRef& ref);

}  // namespace sieve
