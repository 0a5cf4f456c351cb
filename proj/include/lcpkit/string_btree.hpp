#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lcpkit/bookend.hpp"
#include "lcpkit/cost_ledger.hpp"
#include "lcpkit/lcp_codec.hpp"
#include "lcpkit/packed_key.hpp"
#include "lcpkit/parallel_lcp.hpp"
#include "lcpkit/zip_trie.hpp"

namespace lcpkit {

// ============================================================================
// Range elimination tree
// ============================================================================

// Perfect binary tree of 0/1 marks over a row of slots.  Marking a slot range
// sets O(log n) canonical-cover nodes; a slot is eliminated when itself or
// any ancestor is marked.  Used to knock contiguous candidate ranges out of a
// node's branching step in logarithmic work per range.
class RangeTree {
public:
    explicit RangeTree(std::size_t slots);
    void clear() noexcept;
    // Mark the inclusive slot range [lo, hi]; charges one work unit per
    // tree node actually set.
    void mark(std::size_t lo, std::size_t hi, CostLedger* led = nullptr) noexcept;
    // Self-or-ancestor test; charges one work unit per tree level walked.
    [[nodiscard]] bool eliminated(std::size_t slot, CostLedger* led = nullptr) const noexcept;
    [[nodiscard]] std::size_t slots() const noexcept { return slots_; }

private:
    std::size_t slots_ = 0;
    std::size_t base_ = 1;  // index of the first leaf in the heap layout
    std::vector<std::uint8_t> marks_;
};

// Marks every range over `slots` positions and returns the eliminated set;
// must equal the plain union of the ranges.
[[nodiscard]] std::vector<bool> range_tree_eliminate(
    const std::vector<std::pair<std::size_t, std::size_t>>& ranges, std::size_t slots,
    CostLedger* led = nullptr);

// ============================================================================
// Static string B-tree
// ============================================================================

struct SbtConfig {
    std::size_t block_words = 16;  // B: transfer-block size, also keys per leaf
    std::size_t fanout = 8;        // children per internal node
    LcpMode mode = LcpMode::Exact;
    CodecConfig codec{};
};

struct SbtSearchResult {
    bool found = false;
    std::int64_t position = -1;    // sorted index of the hit
    std::int64_t lower_slot = 0;   // sorted index of the first key >= probe
    const PackedKey* pred = nullptr;  // strict neighbors of the probe
    const PackedKey* succ = nullptr;
    std::uint64_t nodes_visited = 0;
    CostLedger led{};
};

// Static B-tree over sorted string keys.  Each node stores key references
// plus three derived arrays — consecutive-key LCPs, the character each key
// has at its divergence offset, and the next slot with a no-deeper LCP —
// which let a search pick its route reading no key characters except one
// resumable comparison per node.
class StringBtree {
public:
    struct Node {
        bool leaf = true;
        std::vector<std::uint32_t> refs;      // key indices, strictly increasing
        std::vector<std::uint32_t> child_of;  // bounding child per ref (internal)
        std::vector<std::uint32_t> children;  // node ids (internal)
        std::vector<std::uint32_t> lcp;       // lcp[i] = LCP(refs[i-1], refs[i]); lcp[0] = 0
        std::vector<std::int64_t> chr;        // key symbol at offset lcp[i]; -1 when exhausted
        std::vector<std::uint32_t> nxt;       // first j > i with lcp[j] <= lcp[i]; size() if none
        std::uint32_t first_key = 0;          // global key range covered by the subtree
        std::uint32_t last_key = 0;
        std::int32_t prev_leaf = -1;
        std::int32_t next_leaf = -1;
    };

    struct BranchResult {
        std::size_t w = 0;  // surviving candidate (deepest shared prefix)
        std::size_t y = 0;  // slot of the first reference >= probe (refs.size() if none)
        Ordering ord = Ordering::EQ;       // probe vs key w
        std::uint64_t lcp_exact = 0;       // exact LCP(probe, key w)
        LcpValue lcp_xv{};                 // same, in stored form
    };

    // Throws std::invalid_argument unless keys are sorted, distinct, and of
    // one alphabet.
    [[nodiscard]] static StringBtree build(std::vector<PackedKey> sorted_keys, SbtConfig cfg);

    [[nodiscard]] SbtSearchResult search(const PackedKey& x, const SearchOptions& opts = {}) const;
    // All keys sharing prefix p / all keys in [lo, hi], in order.
    [[nodiscard]] std::vector<const PackedKey*> prefix_search(const PackedKey& p,
                                                              const SearchOptions& opts = {},
                                                              CostLedger* led = nullptr) const;
    [[nodiscard]] std::vector<const PackedKey*> range_query(const PackedKey& lo,
                                                            const PackedKey& hi,
                                                            const SearchOptions& opts = {},
                                                            CostLedger* led = nullptr) const;

    // Three-step slot selection at one node: (1) candidate elimination down
    // to the surviving reference w, (2) one resumable comparison against key
    // w starting at the state's decoded offset, (3) arithmetic on the LCP
    // array to place the probe.  Work charges stay within 4·m·log2(m) for m
    // references; span charge is a fixed 3 rounds.
    [[nodiscard]] BranchResult branch(const Node& n, const PackedKey& x,
                                      const BookendState& resume, ChunkSchedule& sched,
                                      CostLedger* led = nullptr) const;
    // Oracle for branch: per-key naive comparisons, returns the slot of the
    // first reference >= x.  (branch's slot is .w on an exact hit, else .y.)
    [[nodiscard]] std::size_t successor_slot_reference(const Node& n, const PackedKey& x) const;

    [[nodiscard]] std::size_t size() const noexcept { return keys_.size(); }
    [[nodiscard]] std::size_t height() const noexcept { return height_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
    [[nodiscard]] const SbtConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const MetaCodec& codec() const noexcept { return codec_; }
    [[nodiscard]] const std::vector<Node>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t root_index() const noexcept { return root_; }
    [[nodiscard]] const PackedKey& key_at(std::size_t i) const { return keys_[i]; }
    [[nodiscard]] const std::vector<PackedKey>& keys() const noexcept { return keys_; }
    // height,nodes,leaves,keys,mean_refs as a two-line CSV.
    [[nodiscard]] std::string stats_csv() const;

private:
    StringBtree() = default;

    [[nodiscard]] std::size_t survivor_slot(const Node& n, const PackedKey& x,
                                            CostLedger* led) const;
    [[nodiscard]] std::size_t leaf_of(std::uint64_t key_index) const;
    void fill_derived_arrays(Node& n);
    [[nodiscard]] const PackedKey& ref_key(const Node& n, std::size_t i) const {
        return keys_[n.refs[i]];
    }

    std::vector<PackedKey> keys_;
    std::vector<Node> nodes_;
    std::size_t root_ = 0;
    std::size_t height_ = 0;
    std::size_t n_leaves_ = 0;
    SbtConfig cfg_{};
    MetaCodec codec_{};
};

}  // namespace lcpkit
