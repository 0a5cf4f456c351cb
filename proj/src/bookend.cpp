#include "lcpkit/bookend.hpp"

namespace lcpkit {

CompareOutcome k_compare(const PackedKey& x, const PackedKey& v,
                         const LcpValue& v_lcp, const BookendState& state,
                         const MetaCodec& codec, CostLedger* led) {
    return k_compare(x, v, v_lcp, state, codec,
                     [led](const PackedKey& a, const PackedKey& b, std::uint64_t from) {
                         return lcp_from(a, b, from, led);
                     },
                     led);
}

BookendState advance_state(const BookendState& state, const CompareOutcome& outcome) noexcept {
    if (outcome.ordering == Ordering::EQ) return state;
    if (outcome.lcp_xv.decode() < state.lcp_stored.decode()) return state;
    BookendState next;
    next.side = outcome.ordering == Ordering::GT ? Side::Pred : Side::Succ;
    next.lcp_exact = outcome.exact_known ? outcome.lcp_exact : outcome.lcp_xv.decode();
    next.lcp_stored = outcome.lcp_xv;
    return next;
}

}  // namespace lcpkit
