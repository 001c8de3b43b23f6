#include "synthetic_corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>

#include "sieve/hashing.hpp"
#include "sieve/lexicon.hpp"
#include "sieve/shard_io.hpp"
#include "sieve/utf8.hpp"

#ifndef SIEVE_TEST_DATA_DIR
#error "SIEVE_TEST_DATA_DIR must be defined"
#endif
#ifndef SIEVE_TEST_CONFIG_DIR
#error "SIEVE_TEST_CONFIG_DIR must be defined"
#endif

namespace sieve::testing {

namespace fs = std::filesystem;

fs::path data_dir() { return SIEVE_TEST_DATA_DIR; }
fs::path config_dir() { return SIEVE_TEST_CONFIG_DIR; }

Vocabulary Vocabulary::from_data_dir(const fs::path& dir) {
    Vocabulary v;
    v.stopwords = read_list_file(dir / "lexicons/stopwords_th.txt");
    v.gambling = read_list_file(dir / "lexicons/gambling_th.txt");
    v.naughty = read_list_file(dir / "lexicons/naughty_th.txt");
    const auto adult = read_list_file(dir / "lexicons/adult_th.txt");
    const auto truncation = read_list_file(dir / "lexicons/truncation_phrases.txt");

    std::set<std::string> excluded;
    for (const auto* list : std::initializer_list<const std::vector<std::string>*>{&v.stopwords, &v.gambling, &v.naughty, &adult}) {
        excluded.insert(list->begin(), list->end());
    }
    for (auto& w : read_list_file(dir / "dict/thai_words.txt")) {
        if (excluded.contains(w) || utf8::count_scalars(w) < 3) continue;
        if (w.find("ๆ") != std::string::npos) continue;
        const bool marker = std::any_of(truncation.begin(), truncation.end(),
                                        [&](const std::string& t) { return w.find(t) != std::string::npos; });
        if (!marker) v.content.push_back(std::move(w));
    }
    return v;
}

TextGenerator::TextGenerator(const Vocabulary& vocab, std::uint64_t seed) : vocab_(vocab), rng_(seed) {}

const std::string& TextGenerator::pick(const std::vector<std::string>& pool) {
    std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
    return pool[d(rng_)];
}

namespace {

// Separators between consecutive words: a space, or a newline every
// `per_line` words give or take three.
std::vector<char> layout(std::mt19937_64& rng, std::size_t words, std::size_t per_line) {
    std::vector<char> seps;
    if (words == 0) return seps;
    seps.reserve(words - 1);
    const std::size_t lo = per_line > 3 ? per_line - 3 : 1;
    std::uniform_int_distribution<std::size_t> len(lo, per_line + 3);
    std::size_t left = len(rng);
    for (std::size_t i = 0; i + 1 < words; ++i) {
        if (--left == 0) {
            seps.push_back('\n');
            left = len(rng);
        } else {
            seps.push_back(' ');
        }
    }
    return seps;
}

std::string render(const std::vector<std::string>& words, const std::vector<char>& seps) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) out.push_back(seps[i - 1]);
        out += words[i];
    }
    return out;
}

const std::vector<std::string>& english_words() {
    static const std::vector<std::string> words = {
        "the",     "market", "report",  "shows",   "growth", "across", "several", "regions",
        "while",   "prices", "remain",  "stable",  "for",    "most",   "goods",   "analysts",
        "expect",  "demand", "to",      "rise",    "during", "next",   "quarter", "according",
        "survey",  "data",   "from",    "local",   "firms",  "and",    "city",    "officials",
        "weather", "travel", "season",  "visitors", "hotel", "beach",  "food",    "street"};
    return words;
}

}  // namespace

std::string TextGenerator::words(std::size_t count) {
    std::bernoulli_distribution stop(0.2);
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) out.push_back(' ');
        out += stop(rng_) ? pick(vocab_.stopwords) : pick(vocab_.content);
    }
    return out;
}

std::string TextGenerator::document(std::size_t count, std::size_t per_line) {
    return document_with(count, {}, per_line);
}

std::string TextGenerator::document_with(std::size_t count, const std::vector<std::string>& planted,
                                         std::size_t per_line) {
    std::bernoulli_distribution stop(0.2);
    std::vector<std::string> ws;
    ws.reserve(count + planted.size());
    for (std::size_t i = 0; i < count; ++i) ws.push_back(stop(rng_) ? pick(vocab_.stopwords) : pick(vocab_.content));
    for (const auto& p : planted) {
        std::uniform_int_distribution<std::size_t> at(0, ws.size());
        ws.insert(ws.begin() + static_cast<std::ptrdiff_t>(at(rng_)), p);
    }
    return render(ws, layout(rng_, ws.size(), per_line));
}

std::string TextGenerator::english(std::size_t count) {
    std::vector<std::string> ws;
    for (std::size_t i = 0; i < count; ++i) ws.push_back(pick(english_words()));
    return render(ws, layout(rng_, ws.size(), 12));
}

std::string TextGenerator::phone_number() {
    static const char leads[] = {'6', '8', '9'};
    std::uniform_int_distribution<int> digit(0, 9);
    std::uniform_int_distribution<int> lead(0, 2);
    std::string s = "0";
    s.push_back(leads[lead(rng_)]);
    s.push_back(static_cast<char>('0' + digit(rng_)));
    s.push_back('-');
    for (int i = 0; i < 3; ++i) s.push_back(static_cast<char>('0' + digit(rng_)));
    s.push_back('-');
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>('0' + digit(rng_)));
    return s;
}

namespace {

enum class Plant {
    Clean,
    NonThai,
    Short,
    Huge,
    Ellipsis,
    UrlDuplicate,
    TextDuplicate,
    Gambling,
    Corrupt,
    Phone
};

std::vector<std::string> distinct_sample(std::mt19937_64& rng, const std::vector<std::string>& pool,
                                         std::size_t n) {
    std::vector<std::string> copy = pool;
    std::shuffle(copy.begin(), copy.end(), rng);
    copy.resize(std::min(n, copy.size()));
    return copy;
}

// Gambling spam repeats its keywords: `distinct` terms, each 3 to 6 times.
std::vector<std::string> gambling_plant(std::mt19937_64& rng, const std::vector<std::string>& pool,
                                        std::size_t distinct) {
    std::uniform_int_distribution<int> copies(3, 6);
    std::vector<std::string> out;
    for (const auto& term : distinct_sample(rng, pool, distinct)) {
        out.insert(out.end(), static_cast<std::size_t>(copies(rng)), term);
    }
    return out;
}

}  // namespace

PlantedCorpus make_planted_corpus(TextGenerator& gen, const PlantPlan& plan) {
    auto& rng = gen.rng();
    const Vocabulary& vocab = gen.vocabulary();

    std::vector<Plant> head;
    auto add = [&head](Plant p, std::size_t n) { head.insert(head.end(), n, p); };
    add(Plant::NonThai, plan.non_thai);
    add(Plant::Short, plan.short_docs);
    add(Plant::Huge, plan.huge_docs);
    add(Plant::Ellipsis, plan.high_ellipsis);
    add(Plant::Gambling, plan.gambling);
    add(Plant::Corrupt, plan.corrupt_unicode);
    add(Plant::Phone, plan.phone_numbers);
    const std::size_t dups = plan.url_duplicates + plan.text_duplicates;
    const std::size_t planted = head.size() + dups;
    if (planted > plan.total) throw std::invalid_argument("plant plan exceeds corpus size");
    add(Plant::Clean, plan.total - planted);
    std::shuffle(head.begin(), head.end(), rng);

    // Duplicates go into the second half so each has earlier originals.
    std::vector<Plant> classes = std::move(head);
    for (std::size_t i = 0; i < dups; ++i) {
        const Plant p = i < plan.url_duplicates ? Plant::UrlDuplicate : Plant::TextDuplicate;
        std::uniform_int_distribution<std::size_t> at(classes.size() / 2, classes.size());
        classes.insert(classes.begin() + static_cast<std::ptrdiff_t>(at(rng)), p);
    }

    PlantedCorpus corpus;
    std::vector<Document> docs;
    docs.reserve(classes.size());
    std::vector<std::size_t> originals;  // indices of plain clean documents
    std::set<std::size_t> used;
    std::uniform_int_distribution<std::size_t> clean_len(220, 400);
    std::bernoulli_distribution coin(0.5);
    const std::string fffd = "\xEF\xBF\xBD";

    auto pick_original = [&]() -> const Document& {
        std::vector<std::size_t> free;
        for (auto i : originals) {
            if (!used.contains(i)) free.push_back(i);
        }
        if (free.empty()) throw std::logic_error("no clean original left for a duplicate");
        std::uniform_int_distribution<std::size_t> d(0, free.size() - 1);
        const std::size_t idx = free[d(rng)];
        used.insert(idx);
        return docs[idx];
    };

    for (std::size_t i = 0; i < classes.size(); ++i) {
        Document d;
        char id[32];
        std::snprintf(id, sizeof id, "doc-%05zu", i);
        d.id = id;
        d.url = "https://news.example.th/article/" + std::to_string(i);
        d.source = "synthetic";
        d.created = "2024-01-01T00:00:00Z";

        switch (classes[i]) {
            case Plant::Clean:
                d.text = gen.document(clean_len(rng));
                originals.push_back(i);
                break;
            case Plant::NonThai:
                d.text = gen.english(clean_len(rng));
                break;
            case Plant::Short: {
                std::uniform_int_distribution<std::size_t> n(40, 180);
                d.text = gen.document(n(rng));
                break;
            }
            case Plant::Huge:
                d.text = gen.document(100'000 + clean_len(rng));
                break;
            case Plant::Ellipsis: {
                std::string text = gen.document(clean_len(rng), 10);
                // Every other line ends with an ellipsis: well over 30%.
                std::string out;
                std::size_t line = 0;
                std::size_t start = 0;
                while (start <= text.size()) {
                    const std::size_t nl = text.find('\n', start);
                    const std::size_t end = nl == std::string::npos ? text.size() : nl;
                    out.append(text, start, end - start);
                    if (line % 2 == 0) out += "…";
                    ++line;
                    if (nl == std::string::npos) break;
                    out.push_back('\n');
                    start = nl + 1;
                }
                d.text = std::move(out);
                break;
            }
            case Plant::UrlDuplicate: {
                const Document& o = pick_original();
                d.url = o.url;
                if (coin(rng)) {
                    // Same page after normalization: upper-case host, trailing slash.
                    d.url = "https://NEWS.Example.TH" + o.url.substr(std::string("https://news.example.th").size()) + "/";
                }
                d.text = gen.document(clean_len(rng));
                break;
            }
            case Plant::TextDuplicate:
                d.text = pick_original().text;
                break;
            case Plant::Gambling: {
                std::uniform_int_distribution<std::size_t> k(3, 5);
                d.text = gen.document_with(clean_len(rng), gambling_plant(rng, vocab.gambling, k(rng)));
                break;
            }
            case Plant::Corrupt:
            case Plant::Phone: {
                const bool corrupt = classes[i] == Plant::Corrupt;
                std::bernoulli_distribution stop(0.2);
                std::uniform_int_distribution<std::size_t> cw(0, vocab.content.size() - 1);
                std::uniform_int_distribution<std::size_t> sw(0, vocab.stopwords.size() - 1);
                std::vector<std::string> words;
                for (std::size_t w = 0, n = clean_len(rng); w < n; ++w) {
                    words.push_back(stop(rng) ? vocab.stopwords[sw(rng)] : vocab.content[cw(rng)]);
                }
                std::uniform_int_distribution<std::size_t> count(1, 3);
                std::uniform_int_distribution<std::size_t> pos(0, words.size() - 1);
                std::set<std::size_t> at;
                for (std::size_t k = count(rng); at.size() < k;) at.insert(pos(rng));
                std::vector<std::string> dirty = words;
                std::vector<std::string> clean = words;
                std::size_t shift = 0;
                for (auto p : at) {
                    if (corrupt) {
                        std::uniform_int_distribution<std::size_t> run(1, 3);
                        for (std::size_t r = run(rng); r > 0; --r) dirty[p] += fffd;
                        continue;
                    }
                    // Each phone number becomes its own word; later positions shift.
                    const auto where = static_cast<std::ptrdiff_t>(p + shift++);
                    dirty.insert(dirty.begin() + where, gen.phone_number());
                    clean.insert(clean.begin() + where, "||||");
                }
                const auto seps = layout(rng, dirty.size(), 12);
                d.text = render(dirty, seps);
                corpus.golden_text[d.id] = render(clean, seps);
                (corrupt ? corpus.masked_corrupt_spans : corpus.masked_phone_spans) += at.size();
                break;
            }
        }
        docs.push_back(std::move(d));
    }

    corpus.expected_drops = {
        {"language", plan.non_thai},
        {"quality", plan.short_docs + plan.huge_docs + plan.high_ellipsis},
        {"corrupt_unicode", 0},
        {"dedup_url", plan.url_duplicates},
        {"dedup_doc", plan.text_duplicates},
        {"content", plan.gambling},
        {"pii", 0},
    };
    std::size_t dropped = 0;
    for (const auto& [_, n] : corpus.expected_drops) dropped += n;
    corpus.expected_out = docs.size() - dropped;

    // Contiguous blocks keep every duplicate after its original in the
    // canonical shard order.
    corpus.shards.resize(plan.shards);
    const std::size_t per = (docs.size() + plan.shards - 1) / plan.shards;
    for (std::size_t i = 0; i < docs.size(); ++i) corpus.shards[i / per].push_back(std::move(docs[i]));
    return corpus;
}

std::vector<LabeledText> make_gambling_training_set(TextGenerator& gen, std::size_t count) {
    std::vector<LabeledText> out;
    std::uniform_int_distribution<std::size_t> len(200, 400);
    std::uniform_int_distribution<std::size_t> k(3, 6);
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 2 == 0) {
            out.push_back({gen.document_with(len(gen.rng()),
                                             gambling_plant(gen.rng(), gen.vocabulary().gambling, k(gen.rng()))),
                           true});
        } else {
            out.push_back({gen.document(len(gen.rng())), false});
        }
    }
    return out;
}

void write_corpus(const fs::path& dir, const std::vector<std::vector<Document>>& shards) {
    for (std::size_t i = 0; i < shards.size(); ++i) {
        char name[48];
        std::snprintf(name, sizeof name, "shard_%05zu.jsonl", i);
        write_shard(dir / name, shards[i]);
    }
}

std::uint64_t write_bulk_corpus(const fs::path& dir, std::uint64_t target_bytes, std::size_t shard_count,
                                std::uint64_t seed) {
    static const Vocabulary vocab = Vocabulary::from_data_dir();
    TextGenerator gen(vocab, seed);
    std::vector<LineWriter> writers;
    for (std::size_t i = 0; i < shard_count; ++i) {
        char name[48];
        std::snprintf(name, sizeof name, "shard_%05zu.jsonl", i);
        writers.emplace_back(dir / name);
    }
    std::uniform_int_distribution<std::size_t> len(150, 600);
    std::uint64_t written = 0;
    for (std::size_t i = 0; written < target_bytes; ++i) {
        Document d;
        d.id = "bulk-" + std::to_string(i);
        d.url = "https://bulk.example.th/" + std::to_string(i % 50 == 7 ? i - 1 : i);
        d.source = "synthetic";
        d.text = i % 40 == 3 ? gen.english(len(gen.rng())) : gen.document(len(gen.rng()));
        const std::string line = serialize_document(d);
        writers[i % shard_count].write(line);
        written += line.size() + 1;
    }
    for (auto& w : writers) w.close();
    return written;
}

TempDir::TempDir(const std::string& prefix) {
    std::random_device rd;
    std::uniform_int_distribution<std::uint64_t> d;
    for (;;) {
        path_ = fs::temp_directory_path() / (prefix + "-" + std::to_string(d(rd)));
        if (fs::create_directories(path_)) break;
    }
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string hash_tree(const fs::path& dir, const std::vector<std::string>& skip) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const auto rel = e.path().lexically_relative(dir);
        if (std::find(skip.begin(), skip.end(), rel.generic_string()) != skip.end()) continue;
        files.push_back(rel);
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
    std::string blob;
    for (const auto& rel : files) {
        blob += rel.generic_string();
        blob.push_back('\0');
        blob += sha256_hex(read_text_file(dir / rel));
        blob.push_back('\n');
    }
    return sha256_hex(blob);
}

}  // namespace sieve::testing

namespace sieve::testing {

std::string messy_text(std::mt19937_64& rng) {
    static const std::vector<std::string> pool = {
        "กิน",  "ข้าว", "ที่",   "และ",  "ของ",  "บ้าน", "ไป",      "มา",    "hello", "World",
        "#",    "#tag", "...",  "ok...", "…",    "{x}",  "lorem",   "ipsum", "Lorem", "javascript",
        "12",   "๑๒",  "a\xEF\xBF\xBD", "\xEF\xBF\xBD\xEF\xBF\xBD", "read", "more", "อ่านต่อ", "สวัสดี",
        "ๆ",    "-",    "•",    "ภาษา"};
    auto uniform = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    std::vector<std::string> lines;
    const std::size_t line_count = uniform(12);
    for (std::size_t l = 0; l < line_count; ++l) {
        if (!lines.empty() && uniform(4) == 0) {
            lines.push_back(lines[uniform(lines.size())]);
            continue;
        }
        std::string line;
        switch (uniform(6)) {
            case 0: line = "- "; break;
            case 1: line = "  • "; break;
            default: break;
        }
        const std::size_t words = uniform(9);
        std::vector<std::string> chosen;
        for (std::size_t w = 0; w < words; ++w) {
            // Reuse earlier words often so n-grams repeat.
            if (chosen.size() >= 2 && uniform(3) == 0) {
                chosen.push_back(chosen[uniform(chosen.size())]);
            } else {
                chosen.push_back(pool[uniform(pool.size())]);
            }
        }
        for (std::size_t w = 0; w < chosen.size(); ++w) {
            if (w > 0) line += uniform(8) == 0 ? "  " : " ";
            line += chosen[w];
        }
        if (uniform(5) == 0) line += "...";
        if (uniform(7) == 0) line += " ";
        lines.push_back(line);
    }
    std::string text;
    for (std::size_t l = 0; l < lines.size(); ++l) {
        if (l > 0) text += uniform(6) == 0 ? "\n\n" : "\n";
        text += lines[l];
    }
    return text;
}

}  // namespace sieve::testing
