#include "lcpkit/zip_trie.hpp"

#include <bit>
#include <cassert>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace lcpkit {

namespace {

// ============================================================================
// Helpers
// ============================================================================

[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

[[nodiscard]] const LcpValue& side_value(const ZipNode* n, const BookendState& state) noexcept {
    return state.side == Side::Succ ? n->lcp_succ : n->lcp_pred;
}

// Smaller decoded length wins; equal decodes are identical values.
[[nodiscard]] LcpValue min_lcp(const LcpValue& u, const LcpValue& v) noexcept {
    return compare(u, v) == Ordering::LT ? u : v;
}

[[nodiscard]] std::string to_hex(const std::string& raw) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(raw.size() * 2);
    for (unsigned char c : raw) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

[[nodiscard]] std::string from_hex(const std::string& hex) {
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::string out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i + 1 < hex.size(); i += 2) {
        const int hi = nib(hex[i]);
        const int lo = nib(hex[i + 1]);
        if (hi < 0 || lo < 0) throw EncodingError("bad hex digit in tree dump");
        out.push_back(static_cast<char>((hi << 4) | lo));
    }
    return out;
}

}  // namespace

// ============================================================================
// Construction / teardown
// ============================================================================

ZipTrie::ZipTrie(TrieConfig cfg)
    : cfg_(cfg), codec_{cfg.mode, cfg.codec}, rng_(cfg.seed) {}

ZipTrie::~ZipTrie() { destroy_all(); }

ZipTrie::ZipTrie(ZipTrie&& o) noexcept
    : root_(o.root_), size_(o.size_), cfg_(o.cfg_), codec_(o.codec_), rng_(o.rng_) {
    o.root_ = nullptr;
    o.size_ = 0;
}

ZipTrie& ZipTrie::operator=(ZipTrie&& o) noexcept {
    if (this != &o) {
        destroy_all();
        root_ = o.root_;
        size_ = o.size_;
        cfg_ = o.cfg_;
        codec_ = o.codec_;
        rng_ = o.rng_;
        o.root_ = nullptr;
        o.size_ = 0;
    }
    return *this;
}

void ZipTrie::destroy_all() noexcept {
    std::vector<ZipNode*> stack;
    if (root_) stack.push_back(root_);
    while (!stack.empty()) {
        ZipNode* n = stack.back();
        stack.pop_back();
        if (n->left) stack.push_back(n->left);
        if (n->right) stack.push_back(n->right);
        delete n;
    }
    root_ = nullptr;
    size_ = 0;
}

// ============================================================================
// Ranks
// ============================================================================

bool ZipTrie::rank_less(const Rank& a, const Rank& b) const noexcept {
    if (a.r1 != b.r1) return a.r1 < b.r1;
    return a.r2 < b.r2;
}

Rank ZipTrie::rank_for(const PackedKey& key) const {
    const std::uint64_t mask =
        cfg_.r2_bits >= 64 ? ~0ull : ((1ull << cfg_.r2_bits) - 1);
    Rank r;
    if (cfg_.rank_by_key) {
        std::uint64_t h = mix64(cfg_.seed ^ 0x5bf03635aca57a6bull);
        for (const std::uint64_t w : key.words()) h = mix64(h ^ w);
        h = mix64(h ^ key.char_len());
        r.r1 = static_cast<std::uint32_t>(std::countl_zero(mix64(h ^ 0x1ull)));
        r.r2 = static_cast<std::uint32_t>(mix64(h ^ 0x2ull) & mask);
    } else {
        r.r1 = static_cast<std::uint32_t>(std::countl_zero(rng_()));
        r.r2 = static_cast<std::uint32_t>(rng_() & mask);
    }
    return r;
}

ChunkSchedule ZipTrie::schedule_for(const PackedKey& x, const SearchOptions& opts) const noexcept {
    return ChunkSchedule::make(opts.policy, x.char_len(), cfg_.codec.f,
                               x.alphabet().alpha(), opts.workers);
}

// ============================================================================
// Search
// ============================================================================

SearchResult ZipTrie::search(const PackedKey& x, const SearchOptions& opts) const {
    SearchResult res;
    res.state = BookendState::start(codec_);
    ChunkSchedule sched = schedule_for(x, opts);
    SideRegister predr, succr;
    const ZipNode* cur = root_;
    while (cur) {
        ++res.nodes_visited;
        const CompareOutcome out = k_compare_chunked(x, cur->key, side_value(cur, res.state),
                                                     res.state, codec_, sched, &res.led);
        if (out.exact_known && out.lcp_exact > res.max_lcp) res.max_lcp = out.lcp_exact;
        if (out.ordering == Ordering::EQ) {
            res.found = true;
            res.node = cur;
            break;
        }
        if (out.ordering == Ordering::GT) {
            predr = {cur, out.lcp_xv};
            res.state = advance_state(res.state, out);
            cur = cur->right;
        } else {
            succr = {cur, out.lcp_xv};
            res.state = advance_state(res.state, out);
            cur = cur->left;
        }
    }
    res.pred = predr.node;
    res.succ = succr.node;
    if (res.found) {
        // Strict neighbors of a present key come from its subtrees when they
        // exist; the spine walks read no characters.
        if (const ZipNode* n = res.node->left) {
            while (n->right) n = n->right;
            res.pred = n;
        }
        if (const ZipNode* n = res.node->right) {
            while (n->left) n = n->left;
            res.succ = n;
        }
    }
    return res;
}

// ============================================================================
// Insert
// ============================================================================

bool ZipTrie::insert(const PackedKey& x, const SearchOptions& opts, CostLedger* led) {
    return insert_with_rank(x, rank_for(x), opts, led);
}

bool ZipTrie::insert_with_rank(const PackedKey& x, Rank rank, const SearchOptions& opts,
                               CostLedger* led) {
    ChunkSchedule sched = schedule_for(x, opts);
    BookendState state = BookendState::start(codec_);
    SideRegister predr, succr;
    ZipNode** slot = &root_;
    std::optional<CompareOutcome> carried;

    // Phase 1: descend below every node that outranks x.  Rank ties fall to
    // the smaller key, so the comparison outcome doubles as the tiebreaker.
    while (ZipNode* cur = *slot) {
        const bool x_outranks = rank_less(cur->rank, rank);
        const bool rank_tie = cur->rank == rank;
        if (x_outranks) break;
        const CompareOutcome out = k_compare_chunked(x, cur->key, side_value(cur, state), state,
                                                     codec_, sched, led);
        if (out.ordering == Ordering::EQ) return false;
        if (rank_tie && out.ordering == Ordering::LT) {
            carried = out;  // x wins the tie; cur joins the displaced path
            break;
        }
        if (out.ordering == Ordering::GT) {
            predr = {cur, out.lcp_xv};
            state = advance_state(state, out);
            slot = &cur->right;
        } else {
            succr = {cur, out.lcp_xv};
            state = advance_state(state, out);
            slot = &cur->left;
        }
    }

    // The descent registers at the insertion point are x's interval bounds.
    const LcpValue x_pred = predr.node ? predr.lcp : codec_.zero();
    const LcpValue x_succ = succr.node ? succr.lcp : codec_.zero();

    // Phase 2: walk the path x will displace, planning new bound LCPs but
    // deferring every write so a duplicate found below leaves the tree
    // untouched.
    std::vector<std::pair<ZipNode*, LcpValue>> below_pred, below_succ;
    ZipNode* cur = *slot;
    while (cur) {
        CompareOutcome out;
        if (carried) {
            out = *carried;
            carried.reset();
        } else {
            out = k_compare_chunked(x, cur->key, side_value(cur, state), state, codec_, sched,
                                    led);
        }
        if (out.ordering == Ordering::EQ) return false;
        if (out.ordering == Ordering::GT) {
            below_pred.emplace_back(cur, out.lcp_xv);
            state = advance_state(state, out);
            cur = cur->right;
        } else {
            below_succ.emplace_back(cur, out.lcp_xv);
            state = advance_state(state, out);
            cur = cur->left;
        }
    }

    // Rewire: smaller-key path nodes chain down x's left by right links,
    // larger-key ones down x's right by left links; each keeps the subtree
    // on its far side.  x becomes the new bound on the facing side of every
    // displaced node, so exactly those LCP fields are refreshed.
    auto* xn = new ZipNode{x, rank, nullptr, nullptr, x_pred, x_succ};
    for (std::size_t i = 0; i < below_pred.size(); ++i) {
        below_pred[i].first->lcp_succ = below_pred[i].second;
        below_pred[i].first->right =
            i + 1 < below_pred.size() ? below_pred[i + 1].first : nullptr;
    }
    for (std::size_t i = 0; i < below_succ.size(); ++i) {
        below_succ[i].first->lcp_pred = below_succ[i].second;
        below_succ[i].first->left =
            i + 1 < below_succ.size() ? below_succ[i + 1].first : nullptr;
    }
    xn->left = below_pred.empty() ? nullptr : below_pred.front().first;
    xn->right = below_succ.empty() ? nullptr : below_succ.front().first;
    *slot = xn;
    ++size_;
    return true;
}

// ============================================================================
// Erase
// ============================================================================

bool ZipTrie::erase(const PackedKey& x, const SearchOptions& opts, CostLedger* led) {
    ChunkSchedule sched = schedule_for(x, opts);
    BookendState state = BookendState::start(codec_);
    ZipNode** slot = &root_;
    ZipNode* victim = nullptr;
    while (ZipNode* cur = *slot) {
        const CompareOutcome out = k_compare_chunked(x, cur->key, side_value(cur, state), state,
                                                     codec_, sched, led);
        if (out.ordering == Ordering::EQ) {
            victim = cur;
            break;
        }
        state = advance_state(state, out);
        slot = out.ordering == Ordering::GT ? &cur->right : &cur->left;
    }
    if (!victim) return false;

    // Zip the victim's subtrees back together by rank.  A merged node's new
    // facing bound is the last node placed from the other spine (initially
    // the victim's own bound), and its LCP with that bound is the smaller of
    // the two LCPs through the victim's key, which sits between them.
    LcpValue anchor_pred = victim->lcp_pred;  // LCP(victim, bound below it)
    LcpValue anchor_succ = victim->lcp_succ;  // LCP(victim, bound above it)
    ZipNode* p = victim->left;
    ZipNode* q = victim->right;
    ZipNode** fill = slot;
    while (p && q) {
        bool p_wins;
        if (p->rank.r1 != q->rank.r1) {
            p_wins = p->rank.r1 > q->rank.r1;
        } else if (p->rank.r2 != q->rank.r2) {
            p_wins = p->rank.r2 > q->rank.r2;
        } else {
            p_wins = compare_keys(p->key, q->key, led) == Ordering::LT;
        }
        if (p_wins) {
            const LcpValue with_victim = p->lcp_succ;
            p->lcp_succ = min_lcp(p->lcp_succ, anchor_succ);
            anchor_pred = with_victim;
            *fill = p;
            fill = &p->right;
            p = p->right;
        } else {
            const LcpValue with_victim = q->lcp_pred;
            q->lcp_pred = min_lcp(q->lcp_pred, anchor_pred);
            anchor_succ = with_victim;
            *fill = q;
            fill = &q->left;
            q = q->left;
        }
    }
    while (p) {
        p->lcp_succ = min_lcp(p->lcp_succ, anchor_succ);
        *fill = p;
        fill = &p->right;
        p = p->right;
    }
    while (q) {
        q->lcp_pred = min_lcp(q->lcp_pred, anchor_pred);
        *fill = q;
        fill = &q->left;
        q = q->left;
    }
    *fill = nullptr;
    delete victim;
    --size_;
    return true;
}

// ============================================================================
// Ordered queries
// ============================================================================

std::vector<const ZipNode*> ZipTrie::prefix_search(const PackedKey& p, CostLedger* led) const {
    std::vector<const ZipNode*> out;
    // Explicit in-order stack; the second visit emits.  Subtrees that cannot
    // hold a key with the prefix are pruned: a smaller non-matching key rules
    // out its left subtree, a larger one its right.
    std::vector<std::pair<const ZipNode*, bool>> stack;
    if (root_) stack.emplace_back(root_, false);
    while (!stack.empty()) {
        auto [n, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            out.push_back(n);
            continue;
        }
        if (has_prefix(n->key, p, led)) {
            if (n->right) stack.emplace_back(n->right, false);
            stack.emplace_back(n, true);
            if (n->left) stack.emplace_back(n->left, false);
        } else if (compare_keys(n->key, p, led) == Ordering::LT) {
            if (n->right) stack.emplace_back(n->right, false);
        } else {
            if (n->left) stack.emplace_back(n->left, false);
        }
    }
    return out;
}

std::vector<const ZipNode*> ZipTrie::range_query(const PackedKey& lo, const PackedKey& hi,
                                                 CostLedger* led) const {
    std::vector<const ZipNode*> out;
    std::vector<std::pair<const ZipNode*, bool>> stack;
    if (root_) stack.emplace_back(root_, false);
    while (!stack.empty()) {
        auto [n, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            out.push_back(n);
            continue;
        }
        const Ordering vs_lo = compare_keys(n->key, lo, led);
        const Ordering vs_hi = compare_keys(n->key, hi, led);
        if (vs_hi == Ordering::LT && n->right) stack.emplace_back(n->right, false);
        if (vs_lo != Ordering::LT && vs_hi != Ordering::GT) stack.emplace_back(n, true);
        if (vs_lo == Ordering::GT && n->left) stack.emplace_back(n->left, false);
    }
    return out;
}

// ============================================================================
// Statistics / serialization
// ============================================================================

ZipTrie::DepthStats ZipTrie::depth_stats() const {
    DepthStats st;
    std::vector<std::pair<const ZipNode*, std::uint64_t>> stack;
    if (root_) stack.emplace_back(root_, 1);
    while (!stack.empty()) {
        auto [n, d] = stack.back();
        stack.pop_back();
        ++st.count;
        st.total += d;
        if (d > st.max) st.max = d;
        if (n->left) stack.emplace_back(n->left, d + 1);
        if (n->right) stack.emplace_back(n->right, d + 1);
    }
    return st;
}

void ZipTrie::dump(std::ostream& os) const {
    std::vector<const ZipNode*> stack;
    if (root_) stack.push_back(root_);
    while (!stack.empty()) {
        const ZipNode* n = stack.back();
        stack.pop_back();
        const std::string raw = n->key.unpack();
        os << n->rank.r1 << ' ' << n->rank.r2 << ' ' << n->lcp_pred.decode() << ' '
           << n->lcp_succ.decode() << ' ' << (raw.empty() ? std::string("-") : to_hex(raw))
           << '\n';
        if (n->right) stack.push_back(n->right);
        if (n->left) stack.push_back(n->left);
    }
}

ZipTrie ZipTrie::load(std::istream& is, TrieConfig cfg, const Alphabet& al) {
    ZipTrie t{cfg};
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls{line};
        Rank r;
        std::uint64_t dp = 0, ds = 0;
        std::string tok;
        if (!(ls >> r.r1 >> r.r2 >> dp >> ds >> tok)) {
            throw EncodingError("malformed tree dump line: " + line);
        }
        const std::string raw = tok == "-" ? std::string{} : from_hex(tok);
        t.insert_with_rank(PackedKey::pack(raw, al), r);
    }
    return t;
}

}  // namespace lcpkit
