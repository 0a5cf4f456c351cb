#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lcpkit/string_btree.hpp"

using namespace lcpkit;

namespace {

std::uint64_t naive_lcp(const std::string& a, const std::string& b) {
    std::uint64_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
}

// ----------------------------------------------------------------------------
// Key generators (same corpus shapes as the other structure tests: clustered
// stems force deep shared prefixes).
// ----------------------------------------------------------------------------

std::string random_key(std::mt19937_64& rng, const Alphabet& al, std::size_t max_len) {
    static const char dna_chars[] = {'A', 'C', 'G', 'T'};
    const bool dna = al.kind == Alphabet::Kind::Dna;
    std::uniform_int_distribution<std::size_t> len_d(0, max_len);
    std::string s(len_d(rng), '\0');
    for (char& c : s) {
        if (dna) {
            c = dna_chars[rng() % 4];
        } else {
            c = rng() % 8 == 0 ? static_cast<char>(rng() % 256)
                               : static_cast<char>('a' + rng() % 4);
        }
    }
    return s;
}

std::string clustered_key(std::mt19937_64& rng, const Alphabet& al,
                          const std::vector<std::string>& stems, std::size_t max_tail) {
    std::string s = stems[rng() % stems.size()];
    s += random_key(rng, al, max_tail);
    return s;
}

std::vector<std::string> make_stems(std::mt19937_64& rng, const Alphabet& al, std::size_t count,
                                    std::size_t len) {
    std::vector<std::string> stems(1);  // include the empty stem
    while (stems.size() < count) stems.push_back(random_key(rng, al, len));
    return stems;
}

std::vector<PackedKey> pack_sorted(const std::set<std::string>& keys, const Alphabet& al) {
    std::vector<PackedKey> out;
    out.reserve(keys.size());
    for (const std::string& k : keys) out.push_back(PackedKey::pack(k, al));
    return out;
}

// ----------------------------------------------------------------------------
// Structural audit: re-derives every node array naively and checks that the
// reference layout tiles the key range.
// ----------------------------------------------------------------------------

void audit_node(const StringBtree& t, const StringBtree::Node& n) {
    const std::size_t m = n.refs.size();
    REQUIRE(m >= 1);
    CHECK(n.lcp.size() == m);
    CHECK(n.chr.size() == m);
    CHECK(n.nxt.size() == m);
    for (std::size_t i = 0; i < m; ++i) {
        const PackedKey& k = t.key_at(n.refs[i]);
        if (i == 0) {
            CHECK(n.lcp[0] == 0);
        } else {
            CHECK(n.refs[i - 1] < n.refs[i]);
            CHECK(n.lcp[i] ==
                  naive_lcp(t.key_at(n.refs[i - 1]).unpack(), k.unpack()));
        }
        if (n.lcp[i] < k.char_len())
            CHECK(n.chr[i] == static_cast<std::int64_t>(k.symbol_at(n.lcp[i])));
        else
            CHECK(n.chr[i] == -1);
        std::size_t j = i + 1;
        while (j < m && n.lcp[j] > n.lcp[i]) ++j;
        CHECK(n.nxt[i] == j);
    }
    if (n.leaf) {
        CHECK(n.children.empty());
        CHECK(n.child_of.empty());
        for (std::size_t i = 0; i < m; ++i) CHECK(n.refs[i] == n.first_key + i);
        CHECK(n.last_key == n.first_key + m - 1);
    } else {
        REQUIRE(n.child_of.size() == m);
        REQUIRE(n.children.size() >= 2);
        CHECK(n.children.size() <= t.config().fanout + 1);
        std::size_t slot = 0;
        for (std::size_t c = 0; c < n.children.size(); ++c) {
            const StringBtree::Node& ch = t.nodes()[n.children[c]];
            if (c) CHECK(ch.first_key == t.nodes()[n.children[c - 1]].last_key + 1);
            REQUIRE(slot < m);
            CHECK(n.refs[slot] == ch.first_key);
            CHECK(n.child_of[slot] == c);
            ++slot;
            if (ch.first_key != ch.last_key) {
                REQUIRE(slot < m);
                CHECK(n.refs[slot] == ch.last_key);
                CHECK(n.child_of[slot] == c);
                ++slot;
            }
        }
        CHECK(slot == m);
        CHECK(n.first_key == t.nodes()[n.children.front()].first_key);
        CHECK(n.last_key == t.nodes()[n.children.back()].last_key);
    }
}

void audit_tree(const StringBtree& t) {
    if (t.size() == 0) {
        CHECK(t.node_count() == 0);
        CHECK(t.height() == 0);
        return;
    }
    for (const StringBtree::Node& n : t.nodes()) audit_node(t, n);
    // Reachability: the root covers everything and its children partition it.
    std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(t.root_index())};
    std::size_t seen = 0, leaves = 0, depth = 0;
    while (!frontier.empty()) {
        ++depth;
        std::vector<std::uint32_t> next;
        for (std::uint32_t id : frontier) {
            ++seen;
            const StringBtree::Node& n = t.nodes()[id];
            if (n.leaf)
                ++leaves;
            else
                next.insert(next.end(), n.children.begin(), n.children.end());
        }
        frontier = std::move(next);
    }
    CHECK(seen == t.node_count());
    CHECK(depth == t.height());
    // Leaf chain covers the key range in order.
    const StringBtree::Node* leaf = &t.nodes()[0];
    while (leaf->prev_leaf >= 0) leaf = &t.nodes()[leaf->prev_leaf];
    std::uint64_t at = 0;
    std::size_t chained = 0;
    for (;;) {
        ++chained;
        CHECK(leaf->first_key == at);
        at = leaf->last_key + 1;
        if (leaf->next_leaf < 0) break;
        CHECK(t.nodes()[leaf->next_leaf].prev_leaf ==
              static_cast<std::int32_t>(leaf - t.nodes().data()));
        leaf = &t.nodes()[leaf->next_leaf];
    }
    CHECK(at == t.size());
    CHECK(chained == leaves);
    CHECK(t.root_index() == t.node_count() - 1);
}

// ----------------------------------------------------------------------------
// Reference model over std::set<std::string>.
// ----------------------------------------------------------------------------

struct Model {
    std::set<std::string> keys;

    [[nodiscard]] const std::string* pred(const std::string& x) const {
        auto it = keys.lower_bound(x);
        if (it == keys.begin()) return nullptr;
        return &*std::prev(it);
    }
    [[nodiscard]] const std::string* succ(const std::string& x) const {
        auto it = keys.upper_bound(x);
        if (it == keys.end()) return nullptr;
        return &*it;
    }
    [[nodiscard]] std::uint64_t max_lcp(const std::string& x) const {
        std::uint64_t best = 0;
        for (const std::string& k : keys) best = std::max(best, naive_lcp(x, k));
        return best;
    }
    [[nodiscard]] std::uint64_t lower_index(const std::string& x) const {
        return static_cast<std::uint64_t>(
            std::distance(keys.begin(), keys.lower_bound(x)));
    }
    [[nodiscard]] std::vector<std::string> with_prefix(const std::string& p) const {
        std::vector<std::string> out;
        for (auto it = keys.lower_bound(p); it != keys.end(); ++it) {
            if (it->compare(0, p.size(), p) != 0) break;
            out.push_back(*it);
        }
        return out;
    }
    [[nodiscard]] std::vector<std::string> in_range(const std::string& lo,
                                                    const std::string& hi) const {
        std::vector<std::string> out;
        for (auto it = keys.lower_bound(lo); it != keys.end() && *it <= hi; ++it)
            out.push_back(*it);
        return out;
    }
};

void check_search_against_model(const StringBtree& t, const Model& m, const std::string& x,
                                const Alphabet& al, const SearchOptions& opts) {
    const SbtSearchResult res = t.search(PackedKey::pack(x, al), opts);
    CHECK(res.found == (m.keys.count(x) > 0));
    if (res.found) {
        REQUIRE(res.position >= 0);
        CHECK(t.key_at(static_cast<std::size_t>(res.position)).unpack() == x);
    }
    CHECK(static_cast<std::uint64_t>(res.lower_slot) == m.lower_index(x));
    const std::string* mp = m.pred(x);
    const std::string* ms = m.succ(x);
    CHECK((res.pred != nullptr) == (mp != nullptr));
    CHECK((res.succ != nullptr) == (ms != nullptr));
    if (res.pred && mp) CHECK(res.pred->unpack() == *mp);
    if (res.succ && ms) CHECK(res.succ->unpack() == *ms);
    if (t.size()) {
        CHECK(res.nodes_visited == t.height());
        CHECK(res.led.comparisons == res.nodes_visited);
        // Word budget against the deepest LCP the dictionary holds for x.
        const double alpha = static_cast<double>(al.alpha());
        const double lmax = static_cast<double>(m.max_lcp(x));
        const double factor = t.config().mode == LcpMode::Exact ? 2.0 : 3.0;
        CHECK(static_cast<double>(res.led.words) <=
              factor * lmax / alpha + 4.0 * static_cast<double>(res.nodes_visited));
        // Block budget: the scan advances through blocks, plus a constant
        // number of transfers per level.
        const double B = static_cast<double>(t.config().block_words);
        CHECK(static_cast<double>(res.led.io_work) <=
              4.0 * (lmax / (alpha * B) + static_cast<double>(t.height())));
        CHECK(res.led.io_span <= 3 * res.nodes_visited);
    }
}

// Selection work of one branch call: total ledger work minus the resumable
// comparison's share (replayed against a fresh ledger).
std::uint64_t branch_selection_work(const StringBtree& t, const StringBtree::Node& n,
                                    const PackedKey& x, std::uint64_t* span_out = nullptr) {
    const BookendState st = BookendState::start(t.codec());
    CostLedger all;
    ChunkSchedule s1 = ChunkSchedule::make(ChunkPolicy::None, x.char_len(), t.config().codec.f,
                                           x.alphabet().alpha());
    const StringBtree::BranchResult br = t.branch(n, x, st, s1, &all);
    CostLedger scan;
    ChunkSchedule s2 = ChunkSchedule::make(ChunkPolicy::None, x.char_len(), t.config().codec.f,
                                           x.alphabet().alpha());
    (void)k_compare_chunked(x, t.key_at(n.refs[br.w]), st.lcp_stored, st, t.codec(), s2, &scan);
    if (span_out) *span_out = all.span_units - scan.span_units;
    return all.work_units - scan.work_units;
}

StringBtree build_from(const std::vector<std::string>& keys, const Alphabet& al, SbtConfig cfg) {
    std::set<std::string> s(keys.begin(), keys.end());
    return StringBtree::build(pack_sorted(s, al), cfg);
}

}  // namespace

// ----------------------------------------------------------------------------

TEST_CASE("empty and single-leaf builds") {
    const Alphabet al = Alphabet::bytes();
    SbtConfig cfg;

    const StringBtree empty = StringBtree::build({}, cfg);
    CHECK(empty.size() == 0);
    CHECK(empty.node_count() == 0);
    const SbtSearchResult r = empty.search(PackedKey::pack("x", al));
    CHECK_FALSE(r.found);
    CHECK(r.pred == nullptr);
    CHECK(r.succ == nullptr);
    CHECK(empty.prefix_search(PackedKey::pack("", al)).empty());
    CHECK(empty.range_query(PackedKey::pack("a", al), PackedKey::pack("z", al)).empty());

    const StringBtree one = build_from({"ape", "apple", "ask"}, al, cfg);
    CHECK(one.node_count() == 1);
    CHECK(one.height() == 1);
    audit_tree(one);
    const SbtSearchResult hit = one.search(PackedKey::pack("apple", al));
    CHECK(hit.found);
    CHECK(hit.position == 1);
    REQUIRE(hit.pred != nullptr);
    REQUIRE(hit.succ != nullptr);
    CHECK(hit.pred->unpack() == "ape");
    CHECK(hit.succ->unpack() == "ask");
    const SbtSearchResult miss = one.search(PackedKey::pack("aq", al));
    CHECK_FALSE(miss.found);
    CHECK(miss.pred->unpack() == "apple");
    CHECK(miss.succ->unpack() == "ask");
    CHECK(miss.lower_slot == 2);
}

TEST_CASE("build rejects bad input") {
    const Alphabet al = Alphabet::bytes();
    SbtConfig cfg;
    const auto k = [&](const char* s) { return PackedKey::pack(s, al); };
    CHECK_THROWS_AS((void)StringBtree::build({k("b"), k("a")}, cfg), std::invalid_argument);
    CHECK_THROWS_AS((void)StringBtree::build({k("a"), k("a")}, cfg), std::invalid_argument);
    CHECK_THROWS_AS((void)StringBtree::build(
                        {PackedKey::pack("A", Alphabet::dna()), k("a")}, cfg),
                    std::invalid_argument);
    SbtConfig bad = cfg;
    bad.block_words = 0;
    CHECK_THROWS_AS((void)StringBtree::build({k("a")}, bad), std::invalid_argument);
    bad = cfg;
    bad.fanout = 1;
    CHECK_THROWS_AS((void)StringBtree::build({k("a")}, bad), std::invalid_argument);
}

TEST_CASE("node arrays match naive recomputation on random builds") {
    std::mt19937_64 rng{20240516};
    const std::size_t block_choices[] = {2, 3, 4, 8, 16};
    const std::size_t fan_choices[] = {2, 3, 8};
    for (int trial = 0; trial < 300; ++trial) {
        const Alphabet al = trial % 3 == 0 ? Alphabet::dna() : Alphabet::bytes();
        const auto stems = make_stems(rng, al, 4, 40);
        std::set<std::string> keys;
        const std::size_t n = rng() % 150;
        while (keys.size() < n) keys.insert(clustered_key(rng, al, stems, 12));
        SbtConfig cfg;
        cfg.block_words = block_choices[rng() % 5];
        cfg.fanout = fan_choices[rng() % 3];
        cfg.mode = rng() % 2 ? LcpMode::Exact : LcpMode::Approx;
        cfg.codec.f = 4 + rng() % 29;
        const StringBtree t = StringBtree::build(pack_sorted(keys, al), cfg);
        CHECK(t.size() == keys.size());
        audit_tree(t);
        if (!keys.empty()) {
            const double bound =
                std::ceil(std::log(static_cast<double>(keys.size())) /
                          std::log(static_cast<double>(cfg.fanout))) + 1.0;
            CHECK(static_cast<double>(t.height()) <= std::max(bound, 1.0));
        }
    }
}

TEST_CASE("range elimination equals the interval union") {
    CHECK(range_tree_eliminate({}, 8) == std::vector<bool>(8, false));
    const auto single = range_tree_eliminate({{3, 5}}, 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(single[i] == (i >= 3 && i <= 5));

    std::mt19937_64 rng{77};
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t slots = 1 + rng() % 64;
        std::vector<std::pair<std::size_t, std::size_t>> ranges;
        std::vector<bool> want(slots, false);
        const std::size_t count = rng() % 6;
        for (std::size_t r = 0; r < count; ++r) {
            std::size_t lo = rng() % slots;
            std::size_t hi = lo + rng() % (slots - lo);
            ranges.emplace_back(lo, hi);
            for (std::size_t i = lo; i <= hi; ++i) want[i] = true;
        }
        CostLedger led;
        CHECK(range_tree_eliminate(ranges, slots, &led) == want);
    }

    RangeTree reuse(16);
    reuse.mark(2, 9);
    CHECK(reuse.eliminated(5));
    reuse.clear();
    for (std::size_t i = 0; i < 16; ++i) CHECK_FALSE(reuse.eliminated(i));
}

TEST_CASE("branching picks the deepest shared reference and the successor slot") {
    const Alphabet al = Alphabet::bytes();
    SbtConfig cfg;
    const StringBtree t = build_from({"APE", "APPLE", "APPLY", "ASK", "LIME"}, al, cfg);
    REQUIRE(t.node_count() == 1);
    const StringBtree::Node& n = t.nodes()[0];
    const PackedKey x = PackedKey::pack("APPLICATION", al);
    ChunkSchedule sched = ChunkSchedule::make(ChunkPolicy::None, x.char_len(), cfg.codec.f,
                                              al.alpha());
    const StringBtree::BranchResult br =
        t.branch(n, x, BookendState::start(t.codec()), sched);
    // The survivor must realize the deepest LCP any reference shares with x.
    std::uint64_t deepest = 0;
    for (std::size_t i = 0; i < n.refs.size(); ++i)
        deepest = std::max(deepest, naive_lcp(t.key_at(n.refs[i]).unpack(), "APPLICATION"));
    CHECK(deepest == 4);
    CHECK(naive_lcp(t.key_at(n.refs[br.w]).unpack(), "APPLICATION") == deepest);
    CHECK(br.lcp_exact == 4);
    CHECK(br.ord == Ordering::GT);  // APPLICATION sorts after APPLE
    CHECK(br.y == 2);               // successor slot: APPLY
    CHECK(t.successor_slot_reference(n, x) == 2);
}

TEST_CASE("branch agrees with the naive successor scan") {
    std::mt19937_64 rng{31337};
    for (int trial = 0; trial < 60; ++trial) {
        const Alphabet al = trial % 2 ? Alphabet::dna() : Alphabet::bytes();
        const auto stems = make_stems(rng, al, 5, 60);
        std::set<std::string> keys;
        const std::size_t n = 1 + rng() % 400;
        while (keys.size() < n) keys.insert(clustered_key(rng, al, stems, 16));
        SbtConfig cfg;
        cfg.block_words = 2 + rng() % 15;
        cfg.fanout = 2 + rng() % 7;
        const StringBtree t = StringBtree::build(pack_sorted(keys, al), cfg);
        for (const StringBtree::Node& nd : t.nodes()) {
            for (int p = 0; p < 6; ++p) {
                std::string probe;
                switch (p) {
                    case 0: probe = t.key_at(nd.refs[rng() % nd.refs.size()]).unpack(); break;
                    case 1: {
                        probe = t.key_at(nd.refs[rng() % nd.refs.size()]).unpack();
                        probe = probe.substr(0, rng() % (probe.size() + 1));
                        break;
                    }
                    case 2: {
                        probe = t.key_at(nd.refs[rng() % nd.refs.size()]).unpack();
                        probe += clustered_key(rng, al, stems, 4);
                        break;
                    }
                    default: probe = clustered_key(rng, al, stems, 16); break;
                }
                const PackedKey x = PackedKey::pack(probe, al);
                ChunkSchedule sched = ChunkSchedule::make(ChunkPolicy::None, x.char_len(),
                                                          cfg.codec.f, al.alpha());
                const StringBtree::BranchResult br =
                    t.branch(nd, x, BookendState::start(t.codec()), sched);
                CHECK(br.y == t.successor_slot_reference(nd, x));
                std::uint64_t deepest = 0;
                for (std::uint32_t r : nd.refs)
                    deepest = std::max(deepest, naive_lcp(t.key_at(r).unpack(), probe));
                CHECK(naive_lcp(t.key_at(nd.refs[br.w]).unpack(), probe) == deepest);
                // Selection stays within the elimination work bound.
                const std::size_t m = nd.refs.size();
                std::uint64_t span = 0;
                const std::uint64_t work = branch_selection_work(t, nd, x, &span);
                CHECK(span == 3);
                const double lg = m > 1 ? std::ceil(std::log2(static_cast<double>(m))) : 0.0;
                CHECK(static_cast<double>(work) <=
                      std::max(4.0 * static_cast<double>(m) * lg,
                               static_cast<double>(m)));
            }
        }
    }
}

TEST_CASE("search matches the sorted oracle") {
    std::mt19937_64 rng{986234};
    const ChunkPolicy policies[] = {ChunkPolicy::None, ChunkPolicy::Fixed, ChunkPolicy::Adaptive};
    for (int cfgi = 0; cfgi < 8; ++cfgi) {
        const Alphabet al = cfgi % 2 ? Alphabet::dna() : Alphabet::bytes();
        SbtConfig cfg;
        cfg.mode = cfgi % 4 < 2 ? LcpMode::Exact : LcpMode::Approx;
        if (cfgi >= 4) {
            cfg.block_words = 4;
            cfg.fanout = 2;
        }
        const auto stems = make_stems(rng, al, 6, 120);
        Model m;
        while (m.keys.size() < 900) m.keys.insert(clustered_key(rng, al, stems, 24));
        const StringBtree t = StringBtree::build(pack_sorted(m.keys, al), cfg);
        audit_tree(t);
        for (int probe = 0; probe < 600; ++probe) {
            SearchOptions opts;
            opts.policy = policies[probe % 3];
            std::string x;
            switch (probe % 4) {
                case 0: {  // present key
                    auto it = m.keys.begin();
                    std::advance(it, rng() % m.keys.size());
                    x = *it;
                    break;
                }
                case 1: {  // prefix of a present key
                    auto it = m.keys.begin();
                    std::advance(it, rng() % m.keys.size());
                    x = it->substr(0, rng() % (it->size() + 1));
                    break;
                }
                default: x = clustered_key(rng, al, stems, 24); break;
            }
            check_search_against_model(t, m, x, al, opts);
        }
    }
}

TEST_CASE("chunk policies return identical outcomes") {
    std::mt19937_64 rng{5150};
    const Alphabet al = Alphabet::bytes();
    const auto stems = make_stems(rng, al, 4, 90);
    Model m;
    while (m.keys.size() < 500) m.keys.insert(clustered_key(rng, al, stems, 20));
    SbtConfig cfg;
    cfg.mode = LcpMode::Approx;
    const StringBtree t = StringBtree::build(pack_sorted(m.keys, al), cfg);
    for (int probe = 0; probe < 300; ++probe) {
        const std::string xs = clustered_key(rng, al, stems, 20);
        const PackedKey x = PackedKey::pack(xs, al);
        SearchOptions a, b, c;
        a.policy = ChunkPolicy::None;
        b.policy = ChunkPolicy::Fixed;
        c.policy = ChunkPolicy::Adaptive;
        const SbtSearchResult ra = t.search(x, a);
        const SbtSearchResult rb = t.search(x, b);
        const SbtSearchResult rc = t.search(x, c);
        CHECK(ra.found == rb.found);
        CHECK(ra.found == rc.found);
        CHECK(ra.lower_slot == rb.lower_slot);
        CHECK(ra.lower_slot == rc.lower_slot);
        CHECK(ra.pred == rb.pred);
        CHECK(ra.pred == rc.pred);
        CHECK(ra.succ == rb.succ);
        CHECK(ra.succ == rc.succ);
        // The de-duplicated sequential-equivalent word count is window-shape
        // independent.
        CHECK(ra.led.words == rb.led.words);
        CHECK(ra.led.words == rc.led.words);
    }
}

TEST_CASE("prefix and range enumeration match the oracle") {
    std::mt19937_64 rng{424242};
    for (int cfgi = 0; cfgi < 4; ++cfgi) {
        const Alphabet al = cfgi % 2 ? Alphabet::dna() : Alphabet::bytes();
        SbtConfig cfg;
        cfg.mode = cfgi < 2 ? LcpMode::Exact : LcpMode::Approx;
        cfg.block_words = cfgi < 2 ? 16 : 4;
        const auto stems = make_stems(rng, al, 5, 60);
        Model m;
        while (m.keys.size() < 700) m.keys.insert(clustered_key(rng, al, stems, 18));
        const StringBtree t = StringBtree::build(pack_sorted(m.keys, al), cfg);
        for (int q = 0; q < 200; ++q) {
            std::string p = q % 2 ? clustered_key(rng, al, stems, 6)
                                  : stems[rng() % stems.size()];
            CostLedger led;
            const auto got = t.prefix_search(PackedKey::pack(p, al), {}, &led);
            const auto want = m.with_prefix(p);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i)
                CHECK(got[i]->unpack() == want[i]);

            std::string lo = clustered_key(rng, al, stems, 18);
            std::string hi = clustered_key(rng, al, stems, 18);
            if (q % 5 == 0) std::swap(lo, hi);  // often inverted or equal
            const auto got_r =
                t.range_query(PackedKey::pack(lo, al), PackedKey::pack(hi, al));
            const auto want_r = lo <= hi ? m.in_range(lo, hi) : std::vector<std::string>{};
            REQUIRE(got_r.size() == want_r.size());
            for (std::size_t i = 0; i < got_r.size(); ++i)
                CHECK(got_r[i]->unpack() == want_r[i]);
        }
    }
}

TEST_CASE("statistics CSV reports the build shape") {
    const Alphabet al = Alphabet::bytes();
    std::mt19937_64 rng{7};
    std::set<std::string> keys;
    while (keys.size() < 200) keys.insert(random_key(rng, al, 30));
    SbtConfig cfg;
    cfg.block_words = 8;
    cfg.fanout = 4;
    const StringBtree t = StringBtree::build(pack_sorted(keys, al), cfg);
    std::ostringstream want;
    want << "height,nodes,leaves,keys,mean_refs\n" << t.height() << ',' << t.node_count() << ',';
    const std::string csv = t.stats_csv();
    CHECK(csv.rfind(want.str(), 0) == 0);
    CHECK(csv.find(",200,") != std::string::npos);
    CHECK(StringBtree::build({}, cfg).stats_csv() ==
          "height,nodes,leaves,keys,mean_refs\n0,0,0,0,0\n");
}
