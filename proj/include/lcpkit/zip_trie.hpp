#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "lcpkit/bookend.hpp"
#include "lcpkit/cost_ledger.hpp"
#include "lcpkit/lcp_codec.hpp"
#include "lcpkit/packed_key.hpp"
#include "lcpkit/parallel_lcp.hpp"

namespace lcpkit {

// ============================================================================
// Ranks
// ============================================================================

// Two-level node priority: r1 is geometric (leading-zero count of a uniform
// draw), r2 a uniform tiebreaker.  Residual ties are broken toward the
// smaller key, making the tree shape a pure function of the (key, rank) set.
struct Rank {
    std::uint32_t r1 = 0;
    std::uint32_t r2 = 0;
    bool operator==(const Rank&) const = default;
};

struct TrieConfig {
    LcpMode mode = LcpMode::Exact;
    CodecConfig codec{};
    std::uint64_t seed = 0;
    unsigned r2_bits = 32;
    // Draw ranks by hashing the key rather than from the insertion-time RNG
    // stream, so identical key sets build identical trees in any op order.
    bool rank_by_key = true;
};

// ============================================================================
// Nodes
// ============================================================================

// Every node stores its shared-prefix length with the two bounds of its
// subtree interval: lcp_pred against the deepest ancestor bound below it,
// lcp_succ against the deepest ancestor bound above it (zero when the bound
// is the respective infinity).  A search arriving at the node holds its own
// LCP with one of those same two bounds, which is what makes the three-case
// comparison sound.
struct ZipNode {
    PackedKey key;
    Rank rank;
    ZipNode* left = nullptr;
    ZipNode* right = nullptr;
    LcpValue lcp_pred{};
    LcpValue lcp_succ{};
};

struct SearchOptions {
    ChunkPolicy policy = ChunkPolicy::None;
    unsigned workers = 1;
};

struct SearchResult {
    bool found = false;
    const ZipNode* node = nullptr;  // the hit, when found
    const ZipNode* pred = nullptr;  // tightest strict neighbors of the probe
    const ZipNode* succ = nullptr;
    std::uint64_t nodes_visited = 0;
    std::uint64_t max_lcp = 0;  // deepest true shared prefix with any stored key
    BookendState state{};
    CostLedger led{};
};

// ============================================================================
// ZipTrie
// ============================================================================

// Randomized search tree over packed string keys whose comparisons reuse
// stored LCP metadata: descents only read characters the probe has not
// already matched.  Structural updates splice paths (no rotations), so an
// update touches exactly the spliced nodes' fields and nothing else.
class ZipTrie {
public:
    explicit ZipTrie(TrieConfig cfg = {});
    ~ZipTrie();
    ZipTrie(ZipTrie&& o) noexcept;
    ZipTrie& operator=(ZipTrie&& o) noexcept;
    ZipTrie(const ZipTrie&) = delete;
    ZipTrie& operator=(const ZipTrie&) = delete;

    [[nodiscard]] const TrieConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const MetaCodec& codec() const noexcept { return codec_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] const ZipNode* root() const noexcept { return root_; }

    // The rank a key would be inserted with (deterministic when ranks are
    // drawn by key hash; otherwise consumes the RNG stream).
    [[nodiscard]] Rank rank_for(const PackedKey& key) const;

    [[nodiscard]] SearchResult search(const PackedKey& x,
                                      const SearchOptions& opts = {}) const;

    // Returns false (and changes nothing) when the key is already present.
    bool insert(const PackedKey& x, const SearchOptions& opts = {},
                CostLedger* led = nullptr);
    bool insert_with_rank(const PackedKey& x, Rank rank, const SearchOptions& opts = {},
                          CostLedger* led = nullptr);

    // Returns false when the key is absent.
    bool erase(const PackedKey& x, const SearchOptions& opts = {},
               CostLedger* led = nullptr);

    // All keys sharing prefix `p`, in order.
    [[nodiscard]] std::vector<const ZipNode*> prefix_search(const PackedKey& p,
                                                            CostLedger* led = nullptr) const;
    // All keys in [lo, hi], in order.
    [[nodiscard]] std::vector<const ZipNode*> range_query(const PackedKey& lo,
                                                          const PackedKey& hi,
                                                          CostLedger* led = nullptr) const;

    struct DepthStats {
        std::uint64_t count = 0;
        std::uint64_t total = 0;  // each node counts the nodes on its root path
        std::uint64_t max = 0;
        [[nodiscard]] double mean() const noexcept {
            return count ? static_cast<double>(total) / static_cast<double>(count) : 0.0;
        }
    };
    [[nodiscard]] DepthStats depth_stats() const;

    // One line per node in preorder: "r1 r2 lcp_pred lcp_succ hexkey" with
    // the LCP fields decoded.  Equal dumps mean equal shape and metadata.
    void dump(std::ostream& os) const;
    [[nodiscard]] static ZipTrie load(std::istream& is, TrieConfig cfg,
                                      const Alphabet& al = Alphabet::bytes());

private:
    struct SideRegister {
        const ZipNode* node = nullptr;
        LcpValue lcp{};
    };

    [[nodiscard]] bool rank_less(const Rank& a, const Rank& b) const noexcept;
    [[nodiscard]] ChunkSchedule schedule_for(const PackedKey& x,
                                             const SearchOptions& opts) const noexcept;
    void destroy_all() noexcept;

    ZipNode* root_ = nullptr;
    std::size_t size_ = 0;
    TrieConfig cfg_{};
    MetaCodec codec_{};
    mutable std::mt19937_64 rng_;
};

}  // namespace lcpkit
