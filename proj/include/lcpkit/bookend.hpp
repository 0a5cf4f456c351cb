#pragma once

#include <cstdint>
#include <type_traits>

#include "lcpkit/lcp_codec.hpp"
#include "lcpkit/packed_key.hpp"

namespace lcpkit {

// ============================================================================
// Bookend state
// ============================================================================

// While a search key x descends a path, it shares its longest prefix so far
// with one of the two keys bracketing it among the nodes already traversed
// (its tightest predecessor or successor).  The state names that side and the
// running LCP with it, both as the exact length (free to maintain, tightens
// the resume offsets) and as the stored representation used for case tests.
enum class Side : std::uint8_t { Pred, Succ };

struct BookendState {
    Side side = Side::Succ;
    std::uint64_t lcp_exact = 0;
    LcpValue lcp_stored = LcpValue::exact(0);

    [[nodiscard]] static BookendState start(const MetaCodec& codec) noexcept {
        return BookendState{Side::Succ, 0, codec.zero()};
    }
};

// Result of one bookend comparison of x against a node key v.
//
//   ordering   x relative to v (GT means v precedes x)
//   lcp_xv     the value a structure would store for the pair (x, v); in
//              approximate mode this is the quantized grid value
//   lcp_exact  exact LCP(x, v) when known (cases that examine characters or
//              inherit the state's exact length), otherwise decode(lcp_xv)
//   exact_known    whether lcp_exact is the true length
//   chars_examined characters read by this comparison (zero in the two
//                  metadata-only cases)
struct CompareOutcome {
    Ordering ordering = Ordering::EQ;
    LcpValue lcp_xv{};
    std::uint64_t lcp_exact = 0;
    bool exact_known = false;
    std::uint64_t chars_examined = 0;
};

// ============================================================================
// k_compare
// ============================================================================

// Compare x with node key v given v's stored LCP with the bookend named by
// state.side (which must be the same node the state refers to).  Only the
// all-equal case examines characters, resuming at the decoded shared offset;
// `scan` is a callable (x, v, resume_offset) -> exact LCP(x, v).
//
// Case analysis on stored values (s = state.lcp_stored, m = v_lcp):
//   s > m   v diverges from the bookend before x does: v's stored length is
//           exactly LCP(x, v) and v sits on the bookend's side of x.
//   s < m   x diverges first: LCP(x, v) equals the state's length and x
//           orders before v on the bookend's side.
//   s == m  both diverge in the same stretch: examine characters from the
//           decoded offset (a true common-prefix lower bound for x and v).
template <typename ScanFn>
    requires std::is_invocable_r_v<std::uint64_t, ScanFn&, const PackedKey&, const PackedKey&,
                                   std::uint64_t>
[[nodiscard]] CompareOutcome k_compare(const PackedKey& x, const PackedKey& v,
                                       const LcpValue& v_lcp, const BookendState& state,
                                       const MetaCodec& codec, ScanFn&& scan,
                                       CostLedger* led = nullptr) {
    if (led) led->comparisons++;
    const Ordering rel = compare(state.lcp_stored, v_lcp);
    if (rel == Ordering::GT) {
        const Ordering ord = state.side == Side::Succ ? Ordering::GT : Ordering::LT;
        return {ord, v_lcp, v_lcp.decode(), false, 0};
    }
    if (rel == Ordering::LT) {
        const Ordering ord = state.side == Side::Succ ? Ordering::LT : Ordering::GT;
        return {ord, state.lcp_stored, state.lcp_exact, true, 0};
    }
    const std::uint64_t resume = state.lcp_stored.decode();
    const std::uint64_t l = scan(x, v, resume);
    const Ordering ord = compare_at(x, v, l, led);
    if (led) led->chars += l - resume + (ord == Ordering::EQ ? 0 : 1);
    return {ord, codec.value_of(l), l, true, l - resume};
}

// Convenience overload using the sequential word-scan oracle.
[[nodiscard]] CompareOutcome k_compare(const PackedKey& x, const PackedKey& v,
                                       const LcpValue& v_lcp, const BookendState& state,
                                       const MetaCodec& codec, CostLedger* led = nullptr);

// The traversed node becomes the new bookend exactly when its outcome is at
// least the state's stored length (the all-equal and x-diverges-first cases);
// its side is the side of x the node fell on.  Equal keys leave the state
// untouched.
[[nodiscard]] BookendState advance_state(const BookendState& state,
                                         const CompareOutcome& outcome) noexcept;

}  // namespace lcpkit
