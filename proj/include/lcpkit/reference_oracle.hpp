#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcpkit/packed_key.hpp"
#include "lcpkit/zip_trie.hpp"

namespace lcpkit {

// ============================================================================
// Brute-force ground truth
// ============================================================================

// Character-at-a-time shared-prefix length.  Deliberately avoids the packed
// word-level primitives so a bug there cannot hide here.
[[nodiscard]] std::uint64_t naive_lcp(const std::string& a, const std::string& b) noexcept;
[[nodiscard]] std::uint64_t naive_lcp(const PackedKey& a, const PackedKey& b) noexcept;

// Ordered dictionary over raw byte strings: a sorted vector, binary search,
// and per-character comparisons.  Ground truth for differential testing of
// the tree structures.
class OracleDict {
public:
    bool insert(const std::string& key);
    bool erase(const std::string& key);
    [[nodiscard]] bool contains(const std::string& key) const;
    // Strict neighbors; null when none exists.  Pointers are invalidated by
    // the next mutation.
    [[nodiscard]] const std::string* pred(const std::string& key) const;
    [[nodiscard]] const std::string* succ(const std::string& key) const;
    [[nodiscard]] std::vector<std::string> with_prefix(const std::string& p) const;
    [[nodiscard]] std::vector<std::string> in_range(const std::string& lo,
                                                    const std::string& hi) const;
    // Longest shared prefix between x and any stored key.
    [[nodiscard]] std::uint64_t max_lcp(const std::string& x) const noexcept;
    [[nodiscard]] std::size_t size() const noexcept { return keys_.size(); }
    [[nodiscard]] const std::vector<std::string>& keys() const noexcept { return keys_; }

private:
    [[nodiscard]] std::size_t lower_bound_index(const std::string& key) const noexcept;
    std::vector<std::string> keys_;  // sorted by unsigned byte order, distinct
};

// ============================================================================
// Trie audits
// ============================================================================

struct AuditIssue {
    const ZipNode* node = nullptr;
    // One of "order", "priority", "lcp_pred", "lcp_succ", "size".
    const char* field = "";
    std::string detail;
};

struct AuditReport {
    std::vector<AuditIssue> issues;
    std::size_t nodes_checked = 0;
    [[nodiscard]] bool ok() const noexcept { return issues.empty(); }
};

// Full-tree audit: recomputes every node's interval bounds by an ancestor
// walk, re-derives the stored LCP fields from raw characters, and checks key
// order and rank-heap order (ties to the smaller key).  Any mismatch is
// reported with the offending node and field.
[[nodiscard]] AuditReport ancestor_audit(const ZipTrie& trie);

}  // namespace lcpkit
