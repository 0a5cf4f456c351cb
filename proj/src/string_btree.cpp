#include "lcpkit/string_btree.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace lcpkit {

// ============================================================================
// RangeTree
// ============================================================================

RangeTree::RangeTree(std::size_t slots) : slots_(slots) {
    base_ = std::bit_ceil(slots ? slots : std::size_t{1});
    marks_.assign(2 * base_, 0);
}

void RangeTree::clear() noexcept { std::fill(marks_.begin(), marks_.end(), 0); }

void RangeTree::mark(std::size_t lo, std::size_t hi, CostLedger* led) noexcept {
    if (slots_ == 0 || lo > hi || lo >= slots_) return;
    if (hi >= slots_) hi = slots_ - 1;
    std::size_t l = lo + base_;
    std::size_t r = hi + base_ + 1;
    while (l < r) {
        if (l & 1) {
            marks_[l++] = 1;
            if (led) led->work_units += 1;
        }
        if (r & 1) {
            marks_[--r] = 1;
            if (led) led->work_units += 1;
        }
        l >>= 1;
        r >>= 1;
    }
}

bool RangeTree::eliminated(std::size_t slot, CostLedger* led) const noexcept {
    if (slot >= slots_) return false;
    for (std::size_t i = slot + base_;; i >>= 1) {
        if (led) led->work_units += 1;
        if (marks_[i]) return true;
        if (i == 1) return false;
    }
}

std::vector<bool> range_tree_eliminate(
    const std::vector<std::pair<std::size_t, std::size_t>>& ranges, std::size_t slots,
    CostLedger* led) {
    RangeTree tree(slots);
    for (const auto& [lo, hi] : ranges) tree.mark(lo, hi, led);
    std::vector<bool> out(slots, false);
    for (std::size_t i = 0; i < slots; ++i) out[i] = tree.eliminated(i, led);
    return out;
}

// ============================================================================
// Build
// ============================================================================

StringBtree StringBtree::build(std::vector<PackedKey> sorted_keys, SbtConfig cfg) {
    if (cfg.block_words == 0) throw std::invalid_argument("string btree: block_words must be positive");
    if (cfg.fanout < 2) throw std::invalid_argument("string btree: fanout must be at least 2");
    StringBtree t;
    t.cfg_ = cfg;
    t.codec_ = MetaCodec{cfg.mode, cfg.codec};
    t.keys_ = std::move(sorted_keys);
    const std::size_t n = t.keys_.size();
    for (std::size_t i = 1; i < n; ++i) {
        const Ordering ord = compare_keys(t.keys_[i - 1], t.keys_[i]);
        if (ord == Ordering::EQ) throw std::invalid_argument("string btree: duplicate key");
        if (ord == Ordering::GT) throw std::invalid_argument("string btree: keys not sorted");
        if (!(t.keys_[i].alphabet() == t.keys_[0].alphabet()))
            throw std::invalid_argument("string btree: mixed alphabets");
    }
    if (n == 0) return t;

    // Leaf level: ceil(n / B) leaves, key counts as even as possible.
    const std::size_t n_leaves = (n + cfg.block_words - 1) / cfg.block_words;
    std::vector<std::uint32_t> level;
    for (std::size_t i = 0; i < n_leaves; ++i) {
        const std::size_t lo = i * n / n_leaves;
        const std::size_t hi = (i + 1) * n / n_leaves;
        Node nd;
        nd.leaf = true;
        for (std::size_t k = lo; k < hi; ++k) nd.refs.push_back(static_cast<std::uint32_t>(k));
        nd.first_key = static_cast<std::uint32_t>(lo);
        nd.last_key = static_cast<std::uint32_t>(hi - 1);
        nd.prev_leaf = i ? static_cast<std::int32_t>(i - 1) : -1;
        nd.next_leaf = i + 1 < n_leaves ? static_cast<std::int32_t>(i + 1) : -1;
        t.fill_derived_arrays(nd);
        level.push_back(static_cast<std::uint32_t>(t.nodes_.size()));
        t.nodes_.push_back(std::move(nd));
    }
    t.n_leaves_ = n_leaves;
    t.height_ = 1;

    // Internal levels: group children evenly, each contributing its first and
    // last covered key as routing references.
    while (level.size() > 1) {
        const std::size_t k = level.size();
        // Even grouping; cap the group count so no parent is left with a
        // single child (one group may then hold fanout + 1).
        const std::size_t n_parents =
            std::max<std::size_t>(1, std::min((k + cfg.fanout - 1) / cfg.fanout, k / 2));
        std::vector<std::uint32_t> up;
        for (std::size_t i = 0; i < n_parents; ++i) {
            const std::size_t lo = i * k / n_parents;
            const std::size_t hi = (i + 1) * k / n_parents;
            Node nd;
            nd.leaf = false;
            for (std::size_t c = lo; c < hi; ++c) {
                const Node& child = t.nodes_[level[c]];
                nd.children.push_back(level[c]);
                const auto ci = static_cast<std::uint32_t>(nd.children.size() - 1);
                nd.refs.push_back(child.first_key);
                nd.child_of.push_back(ci);
                if (child.last_key != child.first_key) {
                    nd.refs.push_back(child.last_key);
                    nd.child_of.push_back(ci);
                }
            }
            nd.first_key = t.nodes_[level[lo]].first_key;
            nd.last_key = t.nodes_[level[hi - 1]].last_key;
            t.fill_derived_arrays(nd);
            up.push_back(static_cast<std::uint32_t>(t.nodes_.size()));
            t.nodes_.push_back(std::move(nd));
        }
        level = std::move(up);
        ++t.height_;
    }
    t.root_ = level[0];
    return t;
}

void StringBtree::fill_derived_arrays(Node& n) {
    const std::size_t m = n.refs.size();
    n.lcp.assign(m, 0);
    n.chr.assign(m, -1);
    n.nxt.assign(m, static_cast<std::uint32_t>(m));
    for (std::size_t i = 0; i < m; ++i) {
        if (i) n.lcp[i] = static_cast<std::uint32_t>(lcp_from(keys_[n.refs[i - 1]], keys_[n.refs[i]], 0));
        const PackedKey& k = keys_[n.refs[i]];
        n.chr[i] = n.lcp[i] < k.char_len() ? static_cast<std::int64_t>(k.symbol_at(n.lcp[i])) : -1;
    }
    std::vector<std::uint32_t> stack;  // slots with strictly deeper divergence than all later ones seen
    for (std::size_t i = m; i-- > 0;) {
        while (!stack.empty() && n.lcp[stack.back()] > n.lcp[i]) stack.pop_back();
        n.nxt[i] = stack.empty() ? static_cast<std::uint32_t>(m) : stack.back();
        stack.push_back(static_cast<std::uint32_t>(i));
    }
}

// ============================================================================
// Branching
// ============================================================================

std::size_t StringBtree::survivor_slot(const Node& n, const PackedKey& x, CostLedger* led) const {
    const std::size_t m = n.refs.size();
    if (m <= 1) return 0;
    const std::uint64_t xlen = x.char_len();
    // Candidate test: one symbol probe per slot (slot 0 is always a candidate).
    std::vector<std::uint8_t> cand(m, 0);
    cand[0] = 1;
    for (std::size_t i = 1; i < m; ++i) {
        const std::int64_t sx =
            n.lcp[i] < xlen ? static_cast<std::int64_t>(x.symbol_at(n.lcp[i])) : -1;
        cand[i] = n.chr[i] <= sx;
        if (led) led->work_units += 1;
    }
    // Every non-candidate u rules out the slot run [u, nxt[u] - 1].
    RangeTree tree(m);
    for (std::size_t u = 1; u < m; ++u)
        if (!cand[u]) tree.mark(u, n.nxt[u] - 1, led);
    // Last surviving slot, scanned from the right.
    std::size_t w = m - 1;
    while (w > 0 && tree.eliminated(w, led)) --w;
    return w;
}

std::size_t StringBtree::successor_slot_reference(const Node& n, const PackedKey& x) const {
    const std::size_t m = n.refs.size();
    for (std::size_t i = 0; i < m; ++i)
        if (compare_keys(x, ref_key(n, i)) != Ordering::GT) return i;
    return m;
}

StringBtree::BranchResult StringBtree::branch(const Node& n, const PackedKey& x,
                                              const BookendState& resume, ChunkSchedule& sched,
                                              CostLedger* led) const {
    BranchResult br;
    const std::size_t m = n.refs.size();
    if (led) led->span_units += 3;  // three constant-depth steps
    br.w = survivor_slot(n, x, led);
    const CompareOutcome out =
        k_compare_chunked(x, ref_key(n, br.w), resume.lcp_stored, resume, codec_, sched, led);
    br.ord = out.ordering;
    br.lcp_exact = out.lcp_exact;
    br.lcp_xv = out.lcp_xv;
    const std::uint64_t l = out.lcp_exact;
    if (out.ordering == Ordering::EQ) {
        br.y = br.w;
    } else if (out.ordering == Ordering::GT) {
        // First slot past w whose run diverges no deeper than l sits right of x.
        std::size_t j = br.w + 1;
        for (; j < m; ++j) {
            if (led) led->work_units += 1;
            if (n.lcp[j] <= l) break;
        }
        br.y = j;
    } else {
        // Deepest slot at or before w entered with divergence shallower than l.
        std::size_t i = br.w;
        for (; i > 0; --i) {
            if (led) led->work_units += 1;
            if (n.lcp[i] < l) break;
        }
        br.y = i;
    }
    return br;
}

// ============================================================================
// Search
// ============================================================================

SbtSearchResult StringBtree::search(const PackedKey& x, const SearchOptions& opts) const {
    SbtSearchResult res;
    if (keys_.empty()) return res;
    ChunkSchedule sched = ChunkSchedule::make(opts.policy, x.char_len(), cfg_.codec.f,
                                              x.alphabet().alpha(), opts.workers);
    const std::uint64_t alpha = x.alphabet().alpha() ? x.alphabet().alpha() : 1;
    // Per-side resume registers: deepest stored LCP seen against a key on that
    // side of x.  A register may only seed a scan while its side is anchored:
    // the current subtree must still contain x's nearest key on that side,
    // otherwise the register can overshoot every key the descent will meet.
    LcpValue reg[2];
    bool reg_set[2] = {false, false};
    bool anchored[2] = {false, false};
    std::int64_t last_block = -1;
    const Node* nd = &nodes_[root_];
    for (;;) {
        ++res.nodes_visited;
        res.led.io_work += 1;  // node fetch
        res.led.io_span += 1;

        BookendState st = BookendState::start(codec_);
        int best = -1;
        for (int s = 0; s < 2; ++s)
            if (reg_set[s] && anchored[s] && (best < 0 || reg[s].decode() > reg[best].decode()))
                best = s;
        if (best >= 0) st = BookendState{best == 0 ? Side::Pred : Side::Succ,
                                         reg[best].decode(), reg[best]};

        const std::uint64_t words_before = res.led.words;
        const BranchResult br = branch(*nd, x, st, sched, &res.led);

        // Block transfers for the characters this node's comparison scanned.
        const std::uint64_t delta = res.led.words - words_before;
        if (delta) {
            const std::uint64_t w0 = st.lcp_stored.decode() / alpha;
            std::uint64_t b0 = w0 / cfg_.block_words;
            const std::uint64_t b1 = (w0 + delta - 1) / cfg_.block_words;
            if (last_block >= 0 && b0 == static_cast<std::uint64_t>(last_block)) ++b0;
            if (b1 >= b0) res.led.io_work += b1 - b0 + 1;
            last_block = static_cast<std::int64_t>(b1);
        }
        res.led.io_work += 1;  // comparison resolve transfer
        res.led.io_span += 2;

        const auto absorb = [&](int s) {
            if (!reg_set[s] || br.lcp_xv.decode() > reg[s].decode()) {
                reg[s] = br.lcp_xv;
                reg_set[s] = true;
            }
        };
        if (br.ord == Ordering::EQ) {
            absorb(0);
            absorb(1);
        } else {
            absorb(br.ord == Ordering::GT ? 0 : 1);
        }

        if (nd->leaf) {
            const std::size_t m = nd->refs.size();
            std::uint64_t lower;
            if (br.ord == Ordering::EQ) {
                res.found = true;
                lower = nd->refs[br.y];
            } else if (br.ord == Ordering::LT && br.lcp_exact == x.char_len() &&
                       ref_key(*nd, br.y).char_len() == x.char_len()) {
                // x is a proper prefix of the surviving key; the successor slot
                // agrees with x on all of x's characters, so it is x exactly
                // when the lengths match.
                res.found = true;
                lower = nd->refs[br.y];
            } else {
                lower = br.y < m ? nd->refs[br.y]
                                 : static_cast<std::uint64_t>(nd->refs.back()) + 1;
            }
            res.position = res.found ? static_cast<std::int64_t>(lower) : -1;
            res.lower_slot = static_cast<std::int64_t>(lower);
            const std::uint64_t after = lower + (res.found ? 1 : 0);
            res.pred = lower > 0 ? &keys_[lower - 1] : nullptr;
            res.succ = after < keys_.size() ? &keys_[after] : nullptr;
            return res;
        }

        // Route to the child owning slot y and refresh side anchors.
        const std::size_t m = nd->refs.size();
        std::uint32_t child_idx;
        if (br.ord == Ordering::EQ) {
            child_idx = nd->child_of[br.y];
            anchored[0] = anchored[1] = true;
        } else if (br.y == m) {
            child_idx = static_cast<std::uint32_t>(nd->children.size() - 1);
            anchored[0] = true;
            anchored[1] = false;
        } else if (br.y == 0) {
            child_idx = nd->child_of[0];
            anchored[0] = false;
            anchored[1] = true;
        } else if (nd->child_of[br.y - 1] == nd->child_of[br.y]) {
            child_idx = nd->child_of[br.y];
            anchored[0] = anchored[1] = true;
        } else {
            // x falls in the gap between two children; only its successor side
            // stays inside the subtree being entered.
            child_idx = nd->child_of[br.y];
            anchored[0] = false;
            anchored[1] = true;
        }
        nd = &nodes_[nd->children[child_idx]];
    }
}

// ============================================================================
// Prefix and range enumeration
// ============================================================================

std::size_t StringBtree::leaf_of(std::uint64_t key_index) const {
    std::size_t lo = 0, hi = n_leaves_;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (nodes_[mid].first_key <= key_index)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::vector<const PackedKey*> StringBtree::prefix_search(const PackedKey& p,
                                                         const SearchOptions& opts,
                                                         CostLedger* led) const {
    std::vector<const PackedKey*> out;
    if (keys_.empty()) return out;
    SbtSearchResult r = search(p, opts);
    if (led) led->merge(r.led);
    auto i = static_cast<std::uint64_t>(r.found ? r.position : r.lower_slot);
    if (i >= keys_.size()) return out;
    std::size_t leaf = leaf_of(i);
    for (;;) {
        const Node& lf = nodes_[leaf];
        if (led) led->io_work += 1;  // one block per leaf walked
        for (; i <= lf.last_key; ++i) {
            if (!has_prefix(keys_[i], p, led)) return out;
            out.push_back(&keys_[i]);
        }
        if (lf.next_leaf < 0) return out;
        leaf = static_cast<std::size_t>(lf.next_leaf);
    }
}

std::vector<const PackedKey*> StringBtree::range_query(const PackedKey& lo, const PackedKey& hi,
                                                       const SearchOptions& opts,
                                                       CostLedger* led) const {
    std::vector<const PackedKey*> out;
    if (keys_.empty() || compare_keys(lo, hi, led) == Ordering::GT) return out;
    SbtSearchResult rl = search(lo, opts);
    SbtSearchResult rh = search(hi, opts);
    if (led) {
        led->merge(rl.led);
        led->merge(rh.led);
    }
    const auto start = static_cast<std::uint64_t>(rl.found ? rl.position : rl.lower_slot);
    const auto end = static_cast<std::uint64_t>(rh.found ? rh.position + 1 : rh.lower_slot);
    if (start >= end) return out;
    std::size_t leaf = leaf_of(start);
    for (std::uint64_t i = start;;) {
        const Node& lf = nodes_[leaf];
        if (led) led->io_work += 1;
        for (; i <= lf.last_key; ++i) {
            if (i >= end) return out;
            out.push_back(&keys_[i]);
        }
        if (lf.next_leaf < 0) return out;
        leaf = static_cast<std::size_t>(lf.next_leaf);
    }
}

// ============================================================================
// Statistics
// ============================================================================

std::string StringBtree::stats_csv() const {
    std::uint64_t ref_total = 0;
    for (const Node& n : nodes_) ref_total += n.refs.size();
    std::ostringstream os;
    os << "height,nodes,leaves,keys,mean_refs\n";
    os << height_ << ',' << nodes_.size() << ',' << n_leaves_ << ',' << keys_.size() << ',';
    if (nodes_.empty())
        os << 0;
    else
        os << ref_total / nodes_.size() << '.' << (ref_total * 10 / nodes_.size()) % 10;
    os << '\n';
    return os.str();
}

}  // namespace lcpkit
