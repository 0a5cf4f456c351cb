#include "lcpkit/workbench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "lcpkit/reference_oracle.hpp"
#include "lcpkit/string_btree.hpp"
#include "lcpkit/zip_trie.hpp"

namespace lcpkit {

namespace {

double median_of(std::vector<std::uint64_t> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t c = v.size();
    return (static_cast<double>(v[(c - 1) / 2]) + static_cast<double>(v[c / 2])) / 2.0;
}

char safe_char(std::mt19937_64& rng, const Alphabet& al) {
    static const char dna_chars[] = {'A', 'C', 'G', 'T'};
    if (al.kind == Alphabet::Kind::Dna) return dna_chars[rng() % 4];
    return static_cast<char>('a' + rng() % 26);
}

// Deepest prefix x shares with any stored key: attained at x itself or one of
// its sorted neighbors.
std::uint64_t dict_max_lcp(const OracleDict& d, const std::string& x) {
    std::uint64_t best = d.contains(x) ? x.size() : 0;
    if (const std::string* p = d.pred(x)) best = std::max(best, naive_lcp(*p, x));
    if (const std::string* s = d.succ(x)) best = std::max(best, naive_lcp(*s, x));
    return best;
}

std::uint64_t elapsed_ns(std::chrono::steady_clock::time_point t0) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count());
}

}  // namespace

// ============================================================================
// Corpus
// ============================================================================

CorpusStats Corpus::stats() const {
    CorpusStats st;
    const std::size_t n = records.size();
    st.lengths.reserve(n);
    for (const CorpusRecord& r : records) st.lengths.push_back(r.key.char_len());
    st.max_lcps.assign(n, 0);
    if (n > 1) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const Ordering ord = compare_keys(records[a].key, records[b].key);
            return ord == Ordering::EQ ? a < b : ord == Ordering::LT;
        });
        for (std::size_t i = 1; i < n; ++i) {
            const std::uint64_t l =
                lcp_from(records[order[i - 1]].key, records[order[i]].key, 0);
            st.max_lcps[order[i - 1]] = std::max(st.max_lcps[order[i - 1]], l);
            st.max_lcps[order[i]] = std::max(st.max_lcps[order[i]], l);
        }
    }
    st.median_length = median_of(st.lengths);
    st.median_max_lcp = median_of(st.max_lcps);
    return st;
}

ParseError::ParseError(std::size_t line_no, const std::string& msg)
    : std::runtime_error(line_no ? "line " + std::to_string(line_no) + ": " + msg : msg),
      line(line_no) {}

Corpus ingest(std::istream& in, CorpusFormat format, const Alphabet& alphabet) {
    Corpus c;
    c.alphabet = alphabet;
    std::string line;
    std::size_t line_no = 0;

    if (format == CorpusFormat::Lines) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            try {
                c.records.push_back({std::to_string(line_no), PackedKey::pack(line, alphabet)});
            } catch (const EncodingError& e) {
                throw ParseError(line_no, e.what());
            }
        }
        return c;
    }

    std::unordered_set<std::string> seen;
    std::string id, seq;
    bool open = false;
    const auto flush = [&] {
        if (open) c.records.push_back({id, PackedKey::pack(seq, alphabet)});
        seq.clear();
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '>') {
            flush();
            std::size_t b = 1;
            while (b < line.size() && line[b] == ' ') ++b;
            std::size_t e = b;
            while (e < line.size() && line[e] != ' ' && line[e] != '\t') ++e;
            id = line.substr(b, e - b);
            if (id.empty()) throw ParseError(line_no, "missing record id after '>'");
            if (!seen.insert(id).second) throw ParseError(line_no, "duplicate record id '" + id + "'");
            open = true;
        } else {
            if (!open) throw ParseError(line_no, "sequence data before the first '>' header");
            try {
                (void)PackedKey::pack(line, alphabet);  // per-line validation for the line number
            } catch (const EncodingError& e) {
                throw ParseError(line_no, e.what());
            }
            seq += line;
        }
    }
    flush();
    return c;
}

Corpus ingest_file(const std::string& path, CorpusFormat format, const Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in.is_open()) throw ParseError(0, "cannot open '" + path + "'");
    return ingest(in, format, alphabet);
}

// ============================================================================
// Synthetic corpora
// ============================================================================

Corpus synth(const SynthSpec& spec) {
    if (spec.lcp_buckets.empty())
        throw std::invalid_argument("synth: at least one shared-prefix bucket is required");
    if (spec.tail_hi < spec.tail_lo)
        throw std::invalid_argument("synth: tail length bounds are inverted");
    Corpus c;
    c.alphabet = spec.alphabet;
    std::mt19937_64 rng{spec.seed};
    const std::size_t buckets = spec.lcp_buckets.size();
    const std::uint64_t sigma = spec.alphabet.kind == Alphabet::Kind::Dna ? 4 : 26;

    std::vector<std::string> stems(buckets);
    for (std::size_t b = 0; b < buckets; ++b) {
        stems[b].resize(spec.lcp_buckets[b]);
        for (char& ch : stems[b]) ch = safe_char(rng, spec.alphabet);
    }
    // Fixed-width ordinal after the stem: same-bucket keys diverge inside it,
    // keeping every planted pairwise LCP within a few characters of the stem.
    const std::uint64_t max_per_bucket = buckets ? (spec.n + buckets - 1) / buckets : 0;
    std::size_t width = 1;
    std::uint64_t cap = sigma;
    while (cap < max_per_bucket) {
        cap *= sigma;
        ++width;
    }

    std::vector<std::uint64_t> pow_sigma(width, 1);
    for (std::size_t d = 1; d < width; ++d) pow_sigma[d] = pow_sigma[d - 1] * sigma;

    c.records.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const std::size_t b = i % buckets;
        const std::uint64_t ordinal = i / buckets;
        std::string key = stems[b];
        for (std::size_t d = width; d-- > 0;) {
            const std::uint64_t digit = ordinal / pow_sigma[d] % sigma;
            key += spec.alphabet.kind == Alphabet::Kind::Dna ? "ACGT"[digit]
                                                             : static_cast<char>('a' + digit);
        }
        const std::uint64_t tail = spec.tail_lo + rng() % (spec.tail_hi - spec.tail_lo + 1);
        for (std::uint64_t t = 0; t < tail; ++t) key += safe_char(rng, spec.alphabet);
        c.records.push_back({"b" + std::to_string(b) + "_" + std::to_string(ordinal),
                             PackedKey::pack(key, spec.alphabet)});
    }
    return c;
}

// ============================================================================
// Workloads
// ============================================================================

std::string WorkloadSpec::structure_label() const {
    std::string base = use_btree ? "sbt" : (mode == LcpMode::Exact ? "mi-zt" : "zt");
    if (policy == ChunkPolicy::Fixed) base += "+fixed";
    if (policy == ChunkPolicy::Adaptive) base += "+adaptive";
    return base;
}

std::string RunReport::csv() const {
    std::ostringstream os;
    os << "structure,op,lcp,n,wall_ns,words_examined,comparisons,span_units,work_units,"
          "io_work,io_span\n";
    for (const RunRow& r : rows)
        os << structure << ',' << r.op << ',' << r.lcp << ',' << r.n << ',' << r.wall_ns << ','
           << r.led.words << ',' << r.led.comparisons << ',' << r.led.span_units << ','
           << r.led.work_units << ',' << r.led.io_work << ',' << r.led.io_span << '\n';
    return os.str();
}

namespace {

std::string mutate(std::mt19937_64& rng, const Alphabet& al, const std::string& base) {
    std::string s = base;
    switch (rng() % 4) {
        case 0:
            break;
        case 1:
            s = s.substr(0, s.empty() ? 0 : rng() % (s.size() + 1));
            break;
        case 2: {
            const std::size_t extra = 1 + rng() % 8;
            for (std::size_t i = 0; i < extra; ++i) s += safe_char(rng, al);
            break;
        }
        default: {
            s = s.substr(0, s.empty() ? 0 : rng() % (s.size() + 1));
            const std::size_t extra = 1 + rng() % 8;
            for (std::size_t i = 0; i < extra; ++i) s += safe_char(rng, al);
            break;
        }
    }
    return s;
}

struct RepContext {
    const Corpus& corpus;
    const WorkloadSpec& spec;
    RunReport& rep;
    std::mt19937_64 rng;
    OracleDict oracle;
    SearchOptions opts;
};

void check_listing(RepContext& ctx, const std::vector<std::string>& got,
                   const std::vector<std::string>& want) {
    if (got != want) ++ctx.rep.divergences;
}

template <typename Structure>
void run_ops(RepContext& ctx, Structure&& structure) {
    const Alphabet& al = ctx.corpus.alphabet;
    const WorkloadSpec& spec = ctx.spec;
    for (std::size_t op = 0; op < spec.ops; ++op) {
        const std::string base =
            ctx.corpus.size() ? ctx.corpus.records[ctx.rng() % ctx.corpus.size()].key.unpack()
                              : std::string{};
        const std::string probe = mutate(ctx.rng, al, base);
        const double u = static_cast<double>(ctx.rng() >> 11) * 0x1.0p-53;
        double edge = spec.search;
        if (u < edge) {
            structure.search_op(ctx, probe);
        } else if (u < (edge += spec.insert)) {
            structure.insert_op(ctx, probe);
        } else if (u < (edge += spec.erase)) {
            std::string victim = probe;
            if (!ctx.oracle.keys().empty() && ctx.rng() % 2 == 0)
                victim = ctx.oracle.keys()[ctx.rng() % ctx.oracle.keys().size()];
            structure.erase_op(ctx, victim);
        } else if (u < (edge += spec.prefix)) {
            const std::string p = base.substr(0, base.empty() ? 0 : ctx.rng() % (base.size() + 1));
            structure.prefix_op(ctx, p);
        } else {
            const std::string hi = mutate(ctx.rng, al,
                                          ctx.corpus.size()
                                              ? ctx.corpus.records[ctx.rng() % ctx.corpus.size()]
                                                    .key.unpack()
                                              : std::string{});
            structure.range_op(ctx, probe, hi);
        }
    }
}

struct ZipTrieRunner {
    ZipTrie trie;

    ZipTrieRunner(const Corpus& corpus, const WorkloadSpec& spec, std::uint64_t seed,
                  OracleDict& oracle)
        : trie([&] {
              TrieConfig cfg;
              cfg.mode = spec.mode;
              cfg.codec.f = spec.f;
              cfg.seed = seed;
              return cfg;
          }()) {
        SearchOptions opts;
        opts.policy = spec.policy;
        for (const CorpusRecord& r : corpus.records) {
            (void)trie.insert(r.key, opts);
            (void)oracle.insert(r.key.unpack());
        }
    }

    void search_op(RepContext& ctx, const std::string& probe) {
        RunRow row{"search", dict_max_lcp(ctx.oracle, probe), ctx.oracle.size(), 0, {}};
        const PackedKey pk = PackedKey::pack(probe, ctx.corpus.alphabet);
        const auto t0 = std::chrono::steady_clock::now();
        const SearchResult res = trie.search(pk, ctx.opts);
        row.wall_ns = elapsed_ns(t0);
        row.led = res.led;
        if (ctx.spec.oracle_check) {
            bool ok = res.found == ctx.oracle.contains(probe);
            const std::string* mp = ctx.oracle.pred(probe);
            const std::string* ms = ctx.oracle.succ(probe);
            ok = ok && (res.pred != nullptr) == (mp != nullptr) &&
                 (res.succ != nullptr) == (ms != nullptr);
            if (ok && res.pred) ok = res.pred->key.unpack() == *mp;
            if (ok && res.succ) ok = res.succ->key.unpack() == *ms;
            if (!ok) ++ctx.rep.divergences;
        }
        ctx.rep.rows.push_back(std::move(row));
    }

    void insert_op(RepContext& ctx, const std::string& probe) {
        RunRow row{"insert", dict_max_lcp(ctx.oracle, probe), ctx.oracle.size(), 0, {}};
        const PackedKey pk = PackedKey::pack(probe, ctx.corpus.alphabet);
        const auto t0 = std::chrono::steady_clock::now();
        const bool added = trie.insert(pk, ctx.opts, &row.led);
        row.wall_ns = elapsed_ns(t0);
        const bool oracle_added = ctx.oracle.insert(probe);
        if (ctx.spec.oracle_check && added != oracle_added) ++ctx.rep.divergences;
        ctx.rep.rows.push_back(std::move(row));
    }

    void erase_op(RepContext& ctx, const std::string& victim) {
        RunRow row{"delete", dict_max_lcp(ctx.oracle, victim), ctx.oracle.size(), 0, {}};
        const PackedKey pk = PackedKey::pack(victim, ctx.corpus.alphabet);
        const auto t0 = std::chrono::steady_clock::now();
        const bool removed = trie.erase(pk, ctx.opts, &row.led);
        row.wall_ns = elapsed_ns(t0);
        const bool oracle_removed = ctx.oracle.erase(victim);
        if (ctx.spec.oracle_check && removed != oracle_removed) ++ctx.rep.divergences;
        ctx.rep.rows.push_back(std::move(row));
    }

    void prefix_op(RepContext& ctx, const std::string& p) {
        RunRow row{"prefix", dict_max_lcp(ctx.oracle, p), ctx.oracle.size(), 0, {}};
        const PackedKey pk = PackedKey::pack(p, ctx.corpus.alphabet);
        const auto t0 = std::chrono::steady_clock::now();
        const auto got = trie.prefix_search(pk, &row.led);
        row.wall_ns = elapsed_ns(t0);
        if (ctx.spec.oracle_check) {
            std::vector<std::string> names;
            names.reserve(got.size());
            for (const ZipNode* n : got) names.push_back(n->key.unpack());
            check_listing(ctx, names, ctx.oracle.with_prefix(p));
        }
        ctx.rep.rows.push_back(std::move(row));
    }

    void range_op(RepContext& ctx, const std::string& lo, const std::string& hi) {
        RunRow row{"range", dict_max_lcp(ctx.oracle, lo), ctx.oracle.size(), 0, {}};
        const PackedKey plo = PackedKey::pack(lo, ctx.corpus.alphabet);
        const PackedKey phi = PackedKey::pack(hi, ctx.corpus.alphabet);
        const auto t0 = std::chrono::steady_clock::now();
        const auto got = trie.range_query(plo, phi, &row.led);
        row.wall_ns = elapsed_ns(t0);
        if (ctx.spec.oracle_check) {
            std::vector<std::string> names;
            names.reserve(got.size());
            for (const ZipNode* n : got) names.push_back(n->key.unpack());
            const auto want = lo <= hi ? ctx.oracle.in_range(lo, hi) : std::vector<std::string>{};
            check_listing(ctx, names, want);
        }
        ctx.rep.rows.push_back(std::move(row));
    }
};

struct SbtRunner {
    StringBtree tree;

    SbtRunner(const Corpus& corpus, const WorkloadSpec& spec, OracleDict& oracle)
        : tree([&] {
              for (const CorpusRecord& r : corpus.records) (void)oracle.insert(r.key.unpack());
              std::vector<PackedKey> keys;
              keys.reserve(oracle.size());
              for (const std::string& k : oracle.keys())
                  keys.push_back(PackedKey::pack(k, corpus.alphabet));
              SbtConfig cfg;
              cfg.block_words = spec.block_words;
              cfg.fanout = spec.fanout;
              cfg.mode = spec.mode;
              cfg.codec.f = spec.f;
              return StringBtree::build(std::move(keys), cfg);
          }()) {}

    void search_op(RepContext& ctx, const std::string& probe) {
        RunRow row{"search", dict_max_lcp(ctx.oracle, probe), ctx.oracle.size(), 0, {}};
        const PackedKey pk = PackedKey::pack(probe, ctx.corpus.alphabet);
        const auto t0 = std::chrono::steady_clock::now();
        const SbtSearchResult res = tree.search(pk, ctx.opts);
        row.wall_ns = elapsed_ns(t0);
        row.led = res.led;
        if (ctx.spec.oracle_check) {
            bool ok = res.found == ctx.oracle.contains(probe);
            const std::string* mp = ctx.oracle.pred(probe);
            const std::string* ms = ctx.oracle.succ(probe);
            ok = ok && (res.pred != nullptr) == (mp != nullptr) &&
                 (res.succ != nullptr) == (ms != nullptr);
            if (ok && res.pred) ok = res.pred->unpack() == *mp;
            if (ok && res.succ) ok = res.succ->unpack() == *ms;
            if (!ok) ++ctx.rep.divergences;
        }
        ctx.rep.rows.push_back(std::move(row));
    }

    void insert_op(RepContext&, const std::string&) {}  // unreachable: mix is validated
    void erase_op(RepContext&, const std::string&) {}

    void prefix_op(RepContext& ctx, const std::string& p) {
        RunRow row{"prefix", dict_max_lcp(ctx.oracle, p), ctx.oracle.size(), 0, {}};
        const PackedKey pk = PackedKey::pack(p, ctx.corpus.alphabet);
        const auto t0 = std::chrono::steady_clock::now();
        const auto got = tree.prefix_search(pk, ctx.opts, &row.led);
        row.wall_ns = elapsed_ns(t0);
        if (ctx.spec.oracle_check) {
            std::vector<std::string> names;
            names.reserve(got.size());
            for (const PackedKey* k : got) names.push_back(k->unpack());
            check_listing(ctx, names, ctx.oracle.with_prefix(p));
        }
        ctx.rep.rows.push_back(std::move(row));
    }

    void range_op(RepContext& ctx, const std::string& lo, const std::string& hi) {
        RunRow row{"range", dict_max_lcp(ctx.oracle, lo), ctx.oracle.size(), 0, {}};
        const PackedKey plo = PackedKey::pack(lo, ctx.corpus.alphabet);
        const PackedKey phi = PackedKey::pack(hi, ctx.corpus.alphabet);
        const auto t0 = std::chrono::steady_clock::now();
        const auto got = tree.range_query(plo, phi, ctx.opts, &row.led);
        row.wall_ns = elapsed_ns(t0);
        if (ctx.spec.oracle_check) {
            std::vector<std::string> names;
            names.reserve(got.size());
            for (const PackedKey* k : got) names.push_back(k->unpack());
            const auto want = lo <= hi ? ctx.oracle.in_range(lo, hi) : std::vector<std::string>{};
            check_listing(ctx, names, want);
        }
        ctx.rep.rows.push_back(std::move(row));
    }
};

}  // namespace

RunReport run_workload(const Corpus& corpus, const WorkloadSpec& spec) {
    const double mix[] = {spec.search, spec.insert, spec.erase, spec.prefix, spec.range};
    double sum = 0;
    for (const double p : mix) {
        if (p < 0.0) throw std::invalid_argument("workload: negative operation proportion");
        sum += p;
    }
    if (sum < 1.0 - 1e-9 || sum > 1.0 + 1e-9)
        throw std::invalid_argument("workload: operation mix must sum to 1");
    if (spec.use_btree && (spec.insert > 0.0 || spec.erase > 0.0))
        throw std::invalid_argument("workload: the static B-tree supports no mutations");

    RunReport rep;
    rep.structure = spec.structure_label();
    for (std::size_t r = 0; r < spec.reps; ++r) {
        const std::uint64_t seed = spec.seed + r * 0x9e3779b97f4a7c15ull;
        RepContext ctx{corpus, spec, rep, std::mt19937_64{seed}, OracleDict{}, SearchOptions{}};
        ctx.opts.policy = spec.policy;
        if (spec.use_btree) {
            SbtRunner runner(corpus, spec, ctx.oracle);
            run_ops(ctx, runner);
        } else {
            ZipTrieRunner runner(corpus, spec, seed, ctx.oracle);
            run_ops(ctx, runner);
        }
    }
    return rep;
}

}  // namespace lcpkit
