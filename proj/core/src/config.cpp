#include "sieve/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <set>

#include <json.hpp>

#include "sieve/error.hpp"
#include "sieve/taggers.hpp"

namespace sieve {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

const char* to_string(ThaiFractionMetric metric) noexcept {
    return metric == ThaiFractionMetric::WordsWithThai ? "fraction_words_with_thai"
                                                       : "thai_consonant_char_ratio";
}

ThaiFractionMetric parse_thai_fraction_metric(std::string_view name) {
    if (name == "fraction_words_with_thai") return ThaiFractionMetric::WordsWithThai;
    if (name == "thai_consonant_char_ratio") return ThaiFractionMetric::ConsonantCharRatio;
    throw ConfigError("unknown thai_fraction_metric '" + std::string(name) + "'");
}

std::string format_number(double value) {
    if (value == std::trunc(value) && std::fabs(value) < 1e15) {
        return std::to_string(static_cast<long long>(value));
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> known) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || item.key() == k;
        if (!ok) throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
    }
}

const json* section(const json& root, const char* key) {
    if (!root.contains(key)) return nullptr;
    const json& s = root[key];
    if (!s.is_object()) throw ConfigError(std::string("config section '") + key + "' must be an object");
    return &s;
}

template <typename T>
T get(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj[key].get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

fs::path get_path(const json& obj, const char* key, const fs::path& base) {
    const std::string raw = get<std::string>(obj, key, "");
    if (raw.empty()) return {};
    fs::path p(raw);
    if (p.is_relative() && !base.empty()) p = (base / p).lexically_normal();
    return p;
}

std::map<int, double> ngram_map(const json& obj, const char* key, std::map<int, double> fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_object()) throw ConfigError(std::string("gopher.") + key + " must be an object");
    std::map<int, double> out;
    for (const auto& item : obj[key].items()) {
        int n = 0;
        const auto& k = item.key();
        const auto res = std::from_chars(k.data(), k.data() + k.size(), n);
        if (res.ec != std::errc{} || res.ptr != k.data() + k.size()) {
            throw ConfigError(std::string("gopher.") + key + ": key '" + k + "' is not an integer");
        }
        if (!item.value().is_number()) {
            throw ConfigError(std::string("gopher.") + key + ": values must be numbers");
        }
        out[n] = item.value().get<double>();
    }
    return out;
}

json ngram_json(const std::map<int, double>& m) {
    json out = json::object();
    for (const auto& [n, v] : m) out[std::to_string(n)] = v;
    return out;
}

void require_file(const fs::path& p, const char* what) {
    if (p.empty()) return;
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) {
        throw ConfigError(std::string(what) + " file not found: " + p.string());
    }
}

}  // namespace

PipelineConfig parse_config_json(std::string_view json_text, const fs::path& base_dir) {
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(root, "config", {"tokenizer", "lexicons", "gopher", "language", "dedup",
                                    "classifiers", "policy", "workers", "parse_mode"});

    PipelineConfig c;
    if (const json* t = section(root, "tokenizer")) {
        reject_unknown(*t, "tokenizer", {"mode", "dictionary"});
        c.tokenizer = parse_tokenizer_mode(get<std::string>(*t, "mode", "simple"));
        c.dictionary = get_path(*t, "dictionary", base_dir);
    }
    if (const json* l = section(root, "lexicons")) {
        reject_unknown(*l, "lexicons", {"stopwords", "naughty", "adult", "gambling", "truncation_phrases"});
        c.stopwords = get_path(*l, "stopwords", base_dir);
        c.naughty_words = get_path(*l, "naughty", base_dir);
        c.adult_words = get_path(*l, "adult", base_dir);
        c.gambling_words = get_path(*l, "gambling", base_dir);
        c.truncation_phrases = get_path(*l, "truncation_phrases", base_dir);
    }
    if (const json* g = section(root, "gopher")) {
        reject_unknown(*g, "gopher",
                       {"min_words", "max_words", "median_len_min", "median_len_max",
                        "symbol_ratio_max", "thai_fraction_min", "thai_fraction_metric",
                        "required_words_min", "bullet_frac_max", "ellipsis_frac_max",
                        "dup_line_frac_max", "dup_line_char_frac_max", "top_ngram_char_frac_max",
                        "dup_ngram_char_frac_max"});
        auto& t = c.gopher;
        t.min_words = get<std::size_t>(*g, "min_words", t.min_words);
        t.max_words = get<std::size_t>(*g, "max_words", t.max_words);
        t.median_len_min = get<double>(*g, "median_len_min", t.median_len_min);
        t.median_len_max = get<double>(*g, "median_len_max", t.median_len_max);
        t.symbol_ratio_max = get<double>(*g, "symbol_ratio_max", t.symbol_ratio_max);
        t.thai_fraction_min = get<double>(*g, "thai_fraction_min", t.thai_fraction_min);
        t.required_words_min = get<std::size_t>(*g, "required_words_min", t.required_words_min);
        t.bullet_frac_max = get<double>(*g, "bullet_frac_max", t.bullet_frac_max);
        t.ellipsis_frac_max = get<double>(*g, "ellipsis_frac_max", t.ellipsis_frac_max);
        t.dup_line_frac_max = get<double>(*g, "dup_line_frac_max", t.dup_line_frac_max);
        t.dup_line_char_frac_max = get<double>(*g, "dup_line_char_frac_max", t.dup_line_char_frac_max);
        t.top_ngram_char_frac_max = ngram_map(*g, "top_ngram_char_frac_max", t.top_ngram_char_frac_max);
        t.dup_ngram_char_frac_max = ngram_map(*g, "dup_ngram_char_frac_max", t.dup_ngram_char_frac_max);
        c.thai_fraction_metric = parse_thai_fraction_metric(
            get<std::string>(*g, "thai_fraction_metric", to_string(c.thai_fraction_metric)));
    }
    if (const json* l = section(root, "language")) {
        reject_unknown(*l, "language", {"min_thai_ratio"});
        c.min_thai_ratio = get<double>(*l, "min_thai_ratio", c.min_thai_ratio);
    }
    if (const json* d = section(root, "dedup")) {
        reject_unknown(*d, "dedup", {"mode", "expected_items", "fpr", "salt", "bloom_in", "bloom_out"});
        c.dedup.mode = parse_dedup_mode(get<std::string>(*d, "mode", to_string(c.dedup.mode)));
        c.dedup.expected_items = get<std::uint64_t>(*d, "expected_items", c.dedup.expected_items);
        c.dedup.fpr = get<double>(*d, "fpr", c.dedup.fpr);
        c.dedup.salt = get<std::uint64_t>(*d, "salt", c.dedup.salt);
        c.dedup.bloom_in = get_path(*d, "bloom_in", base_dir);
        c.dedup.bloom_out = get_path(*d, "bloom_out", base_dir);
    }
    if (root.contains("classifiers")) {
        const json& arr = root["classifiers"];
        if (!arr.is_array()) throw ConfigError("config 'classifiers' must be an array");
        for (const auto& item : arr) {
            if (!item.is_object()) throw ConfigError("classifier entries must be objects");
            reject_unknown(item, "classifier", {"name", "model", "threshold", "dim"});
            ClassifierConfig cc;
            cc.name = get<std::string>(item, "name", "");
            cc.model = get_path(item, "model", base_dir);
            cc.threshold = get<double>(item, "threshold", cc.threshold);
            cc.dim = get<std::uint32_t>(item, "dim", cc.dim);
            c.classifiers.push_back(std::move(cc));
        }
    }
    if (root.contains("policy")) c.policy = parse_policy_json(root["policy"].dump());
    if (root.contains("workers")) {
        const auto w = get<std::int64_t>(root, "workers", 1);
        if (w < 1) throw ConfigError("config 'workers' must be at least 1");
        c.workers = static_cast<std::size_t>(w);
    }
    const std::string mode = get<std::string>(root, "parse_mode", "strict");
    if (mode == "strict") {
        c.parse_mode = ParseMode::Strict;
    } else if (mode == "lenient") {
        c.parse_mode = ParseMode::Lenient;
    } else {
        throw ConfigError("parse_mode must be 'strict' or 'lenient'");
    }
    // File checks wait for validate(); thresholds can be judged now.
    c.gopher.validate();
    return c;
}

PipelineConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_json(text, path.parent_path());
}

std::string config_to_json(const PipelineConfig& c) {
    json root;
    root["tokenizer"] = {{"mode", to_string(c.tokenizer)}, {"dictionary", c.dictionary.generic_string()}};
    root["lexicons"] = {{"stopwords", c.stopwords.generic_string()},
                        {"naughty", c.naughty_words.generic_string()},
                        {"adult", c.adult_words.generic_string()},
                        {"gambling", c.gambling_words.generic_string()},
                        {"truncation_phrases", c.truncation_phrases.generic_string()}};
    const auto& t = c.gopher;
    json g;
    g["min_words"] = t.min_words;
    g["max_words"] = t.max_words;
    g["median_len_min"] = t.median_len_min;
    g["median_len_max"] = t.median_len_max;
    g["symbol_ratio_max"] = t.symbol_ratio_max;
    g["thai_fraction_min"] = t.thai_fraction_min;
    g["thai_fraction_metric"] = to_string(c.thai_fraction_metric);
    g["required_words_min"] = t.required_words_min;
    g["bullet_frac_max"] = t.bullet_frac_max;
    g["ellipsis_frac_max"] = t.ellipsis_frac_max;
    g["dup_line_frac_max"] = t.dup_line_frac_max;
    g["dup_line_char_frac_max"] = t.dup_line_char_frac_max;
    g["top_ngram_char_frac_max"] = ngram_json(t.top_ngram_char_frac_max);
    g["dup_ngram_char_frac_max"] = ngram_json(t.dup_ngram_char_frac_max);
    root["gopher"] = std::move(g);
    root["language"] = {{"min_thai_ratio", c.min_thai_ratio}};
    root["dedup"] = {{"mode", to_string(c.dedup.mode)},
                     {"expected_items", c.dedup.expected_items},
                     {"fpr", c.dedup.fpr},
                     {"salt", c.dedup.salt},
                     {"bloom_in", c.dedup.bloom_in.generic_string()},
                     {"bloom_out", c.dedup.bloom_out.generic_string()}};
    json classifiers = json::array();
    for (const auto& cc : c.classifiers) {
        classifiers.push_back(
            {{"name", cc.name}, {"model", cc.model.generic_string()}, {"threshold", cc.threshold},
                               {"dim", cc.dim}});
    }
    root["classifiers"] = std::move(classifiers);
    if (c.policy) root["policy"] = json::parse(policy_to_json(*c.policy));
    if (c.workers) root["workers"] = *c.workers;
    root["parse_mode"] = c.parse_mode == ParseMode::Strict ? "strict" : "lenient";
    return root.dump(2);
}

void PipelineConfig::validate() const {
    gopher.validate();
    if (tokenizer == TokenizerMode::Simple && dictionary.empty()) {
        throw ConfigError("the simple tokenizer needs a dictionary path");
    }
    require_file(dictionary, "dictionary");
    require_file(stopwords, "stopword lexicon");
    require_file(naughty_words, "naughty-word lexicon");
    require_file(adult_words, "adult lexicon");
    require_file(gambling_words, "gambling lexicon");
    require_file(truncation_phrases, "truncation phrase");
    require_file(dedup.bloom_in, "bloom filter");
    if (!(min_thai_ratio >= 0.0 && min_thai_ratio <= 1.0)) {
        throw ConfigError("language.min_thai_ratio must lie in [0, 1]");
    }
    if (!(dedup.fpr > 0.0 && dedup.fpr < 1.0)) throw ConfigError("dedup.fpr must lie in (0, 1)");
    if (dedup.expected_items == 0) throw ConfigError("dedup.expected_items must be positive");
    std::set<std::string> names;
    for (const auto& cc : classifiers) {
        if (cc.name.empty()) throw ConfigError("classifier without a name");
        if (!names.insert(cc.name).second) throw ConfigError("duplicate classifier '" + cc.name + "'");
        if (cc.model.empty()) throw ConfigError("classifier '" + cc.name + "' has no model path");
        require_file(cc.model, "classifier model");
        if (!(cc.threshold >= 0.0 && cc.threshold <= 1.0)) {
            throw ConfigError("classifier '" + cc.name + "' threshold must lie in [0, 1]");
        }
    }
    if (workers && *workers < 1) throw ConfigError("workers must be at least 1");
}

PolicySpec default_policy(const PipelineConfig& c) {
    const auto& t = c.gopher;
    auto num = [](double v) { return format_number(v); };
    PolicySpec p;

    p.stages.push_back({"language", StageAction::Drop,
                        std::string(attr::kThaiRatio) + " >= " + num(c.min_thai_ratio), {}, ""});

    std::string q;
    auto term = [&q](const std::string& s) {
        if (!q.empty()) q += " and ";
        q += s;
    };
    for (auto a : {attr::kCurlyBrace, attr::kLoremIpsum, attr::kJavascript, attr::kNaughtyWord}) {
        term(std::string(a) + " == 0");
    }
    term("gopher.word_count >= " + num(static_cast<double>(t.min_words)));
    term("gopher.word_count <= " + num(static_cast<double>(t.max_words)));
    term("gopher.median_word_length >= " + num(t.median_len_min));
    term("gopher.median_word_length <= " + num(t.median_len_max));
    term("gopher.symbol_to_word_ratio <= " + num(t.symbol_ratio_max));
    term(std::string("gopher.") + to_string(c.thai_fraction_metric) + " >= " + num(t.thai_fraction_min));
    term("gopher.required_word_count >= " + num(static_cast<double>(t.required_words_min)));
    term("gopher.bullet_line_fraction <= " + num(t.bullet_frac_max));
    term("gopher.ellipsis_line_fraction <= " + num(t.ellipsis_frac_max));
    term("gopher.duplicate_line_fraction <= " + num(t.dup_line_frac_max));
    term("gopher.duplicate_line_char_fraction <= " + num(t.dup_line_char_frac_max));
    for (const auto& [n, v] : t.top_ngram_char_frac_max) {
        term("gopher.top_ngram_char_frac_" + std::to_string(n) + " <= " + num(v));
    }
    for (const auto& [n, v] : t.dup_ngram_char_frac_max) {
        term("gopher.dup_ngram_char_frac_" + std::to_string(n) + " <= " + num(v));
    }
    term("gopher.has_truncation_marker == 0");
    p.stages.push_back({"quality", StageAction::Drop, q, {}, ""});

    p.stages.push_back({"corrupt_unicode", StageAction::Mask, "",
                        {std::string(attr::kCorruptUnicode)}, ""});
    p.stages.push_back({"dedup_url", StageAction::Drop,
                        std::string(attr::kUrlDuplicate) + " == 0", {}, ""});
    p.stages.push_back({"dedup_doc", StageAction::Drop,
                        std::string(attr::kDocDuplicate) + " == 0", {}, ""});

    if (!c.classifiers.empty()) {
        std::string keep;
        for (const auto& cc : c.classifiers) {
            if (!keep.empty()) keep += " and ";
            keep += classifier_attribute_name(cc.name) + " < " + num(cc.threshold);
        }
        p.stages.push_back({"content", StageAction::Drop, keep, {}, ""});
    }

    p.stages.push_back({"pii", StageAction::Mask, "", pii_attribute_names(), "||||"});
    return p;
}

PolicySpec effective_policy(const PipelineConfig& config) {
    return config.policy ? *config.policy : default_policy(config);
}

std::size_t resolve_workers(std::optional<std::size_t> flag, const PipelineConfig& config) {
    if (flag) {
        if (*flag < 1) throw ConfigError("--workers must be at least 1");
        return *flag;
    }
    if (config.workers) return *config.workers;
    if (const char* env = std::getenv("SIEVE_WORKERS"); env && *env) {
        std::size_t v = 0;
        const std::string_view s(env);
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v < 1) {
            throw ConfigError("SIEVE_WORKERS must be a positive integer, got '" + std::string(s) + "'");
        }
        return v;
    }
    return 1;
}

}  // namespace sieve
