#include "lcpkit/reference_oracle.hpp"

#include <algorithm>
#include <sstream>

namespace lcpkit {

// ============================================================================
// Naive primitives
// ============================================================================

std::uint64_t naive_lcp(const std::string& a, const std::string& b) noexcept {
    std::uint64_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
}

std::uint64_t naive_lcp(const PackedKey& a, const PackedKey& b) noexcept {
    std::uint64_t i = 0;
    while (i < a.char_len() && i < b.char_len() && a.symbol_at(i) == b.symbol_at(i)) ++i;
    return i;
}

namespace {

// Unsigned per-character order, one byte at a time.
[[nodiscard]] bool byte_less(const std::string& a, const std::string& b) noexcept {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto ca = static_cast<unsigned char>(a[i]);
        const auto cb = static_cast<unsigned char>(b[i]);
        if (ca != cb) return ca < cb;
    }
    return a.size() < b.size();
}

}  // namespace

// ============================================================================
// OracleDict
// ============================================================================

std::size_t OracleDict::lower_bound_index(const std::string& key) const noexcept {
    std::size_t lo = 0, hi = keys_.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (byte_less(keys_[mid], key)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return lo;
}

bool OracleDict::insert(const std::string& key) {
    const std::size_t i = lower_bound_index(key);
    if (i < keys_.size() && keys_[i] == key) return false;
    keys_.insert(keys_.begin() + static_cast<std::ptrdiff_t>(i), key);
    return true;
}

bool OracleDict::erase(const std::string& key) {
    const std::size_t i = lower_bound_index(key);
    if (i >= keys_.size() || keys_[i] != key) return false;
    keys_.erase(keys_.begin() + static_cast<std::ptrdiff_t>(i));
    return true;
}

bool OracleDict::contains(const std::string& key) const {
    const std::size_t i = lower_bound_index(key);
    return i < keys_.size() && keys_[i] == key;
}

const std::string* OracleDict::pred(const std::string& key) const {
    const std::size_t i = lower_bound_index(key);
    return i == 0 ? nullptr : &keys_[i - 1];
}

const std::string* OracleDict::succ(const std::string& key) const {
    std::size_t i = lower_bound_index(key);
    if (i < keys_.size() && keys_[i] == key) ++i;
    return i >= keys_.size() ? nullptr : &keys_[i];
}

std::vector<std::string> OracleDict::with_prefix(const std::string& p) const {
    std::vector<std::string> out;
    for (std::size_t i = lower_bound_index(p); i < keys_.size(); ++i) {
        if (naive_lcp(keys_[i], p) < p.size()) break;
        out.push_back(keys_[i]);
    }
    return out;
}

std::vector<std::string> OracleDict::in_range(const std::string& lo, const std::string& hi) const {
    std::vector<std::string> out;
    for (std::size_t i = lower_bound_index(lo); i < keys_.size(); ++i) {
        if (byte_less(hi, keys_[i])) break;
        out.push_back(keys_[i]);
    }
    return out;
}

std::uint64_t OracleDict::max_lcp(const std::string& x) const noexcept {
    // The maximum shared prefix with a sorted set is achieved next to x's
    // insertion point, but scan everything: this is the dumb oracle.
    std::uint64_t best = 0;
    for (const std::string& k : keys_) best = std::max(best, naive_lcp(x, k));
    return best;
}

// ============================================================================
// Trie audits
// ============================================================================

namespace {

void audit_rec(const ZipNode* n, const std::string* lo, const std::string* hi,
               const MetaCodec& codec, AuditReport& rep) {
    if (!n) return;
    ++rep.nodes_checked;
    const std::string k = n->key.unpack();
    if (lo && !byte_less(*lo, k)) {
        rep.issues.push_back({n, "order", "key not above its lower bound"});
    }
    if (hi && !byte_less(k, *hi)) {
        rep.issues.push_back({n, "order", "key not below its upper bound"});
    }
    for (const ZipNode* c : {n->left, n->right}) {
        if (!c) continue;
        const bool parent_outranks =
            n->rank.r1 != c->rank.r1   ? n->rank.r1 > c->rank.r1
            : n->rank.r2 != c->rank.r2 ? n->rank.r2 > c->rank.r2
                                       : byte_less(k, c->key.unpack());
        if (!parent_outranks) {
            rep.issues.push_back({c, "priority", "child outranks its parent"});
        }
    }
    const std::uint64_t want_p = lo ? naive_lcp(k, *lo) : 0;
    const std::uint64_t want_s = hi ? naive_lcp(k, *hi) : 0;
    if (!(n->lcp_pred == codec.value_of(want_p))) {
        std::ostringstream d;
        d << "stored " << n->lcp_pred.decode() << ", bound prefix length " << want_p;
        rep.issues.push_back({n, "lcp_pred", d.str()});
    }
    if (!(n->lcp_succ == codec.value_of(want_s))) {
        std::ostringstream d;
        d << "stored " << n->lcp_succ.decode() << ", bound prefix length " << want_s;
        rep.issues.push_back({n, "lcp_succ", d.str()});
    }
    audit_rec(n->left, lo, &k, codec, rep);
    audit_rec(n->right, &k, hi, codec, rep);
}

}  // namespace

AuditReport ancestor_audit(const ZipTrie& trie) {
    AuditReport rep;
    audit_rec(trie.root(), nullptr, nullptr, trie.codec(), rep);
    if (rep.nodes_checked != trie.size()) {
        std::ostringstream d;
        d << "reachable nodes " << rep.nodes_checked << ", recorded size " << trie.size();
        rep.issues.push_back({nullptr, "size", d.str()});
    }
    return rep;
}

}  // namespace lcpkit
