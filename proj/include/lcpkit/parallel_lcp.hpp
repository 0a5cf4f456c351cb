#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lcpkit/bookend.hpp"
#include "lcpkit/cost_ledger.hpp"
#include "lcpkit/packed_key.hpp"

namespace lcpkit {

// ============================================================================
// Window oracle
// ============================================================================

// Result of scanning the character window [start, limit) of two keys.
//   all_equal  the whole window matched and both keys extend past it
//   lcp        when !all_equal, the total LCP of the keys (the window held a
//              mismatch, or a key ended inside it)
struct WindowScan {
    std::uint64_t lcp = 0;
    bool all_equal = false;
};

// One simulated parallel round over the window: every covered word is XORed
// concurrently and the first difference wins a min-reduction.  Charges
// span_units += 1, oracle_invocations += 1, work_units += words covered, and
// words += the sequential-equivalent count (words up to the mismatch).  With
// workers > 1 the scan is sharded across threads; results are identical.
[[nodiscard]] WindowScan parallel_lcp_oracle(const PackedKey& a, const PackedKey& b,
                                             std::uint64_t start, std::uint64_t limit,
                                             unsigned workers = 1, CostLedger* led = nullptr,
                                             std::vector<std::pair<std::uint64_t, std::uint64_t>>*
                                                 trace = nullptr);

// ============================================================================
// Chunk schedules
// ============================================================================

enum class ChunkPolicy : std::uint8_t { None, Fixed, Adaptive };

// Drives how the all-equal comparison case feeds windows to the oracle.
//   Fixed     every window spans ceil(k/f) characters of the search key,
//             never less than one machine word's worth (a word is the unit
//             of transfer, so narrower windows would only re-read it)
//   Adaptive  the window starts at delta and doubles after each fully equal
//             window; delta persists across comparisons within one search and
//             is halved (minimum 1) when a new comparison starts scanning
// A fresh schedule makes the very first comparison start at delta = 1.
struct ChunkSchedule {
    ChunkPolicy policy = ChunkPolicy::None;
    std::uint64_t chunk_chars = 1;  // Fixed window width
    std::uint64_t delta = 2;        // halved on first use -> 1
    unsigned workers = 1;

    [[nodiscard]] static ChunkSchedule make(ChunkPolicy p, std::uint64_t key_len,
                                            std::uint64_t f, std::uint64_t alpha = 1,
                                            unsigned workers = 1) noexcept {
        ChunkSchedule s;
        s.policy = p;
        s.chunk_chars = f ? (key_len + f - 1) / f : 1;
        if (s.chunk_chars < alpha) s.chunk_chars = alpha ? alpha : 1;
        if (s.chunk_chars == 0) s.chunk_chars = 1;
        s.delta = 2;
        s.workers = workers;
        return s;
    }
};

// Exact LCP(a, b) resuming from `start`, produced by repeated window scans
// under the schedule.  Identical value to lcp_from.  The sequential-equivalent
// `words` counter is de-duplicated across the windows of one scan: a window
// that begins inside the word the previous window ended in does not charge
// that word again (a sequential scanner would still be holding it).
[[nodiscard]] std::uint64_t chunked_scan(const PackedKey& a, const PackedKey& b,
                                         std::uint64_t start, ChunkSchedule& sched,
                                         CostLedger* led = nullptr);

// k_compare whose all-equal case scans through the window oracle under the
// given schedule.  Outcomes are identical to the sequential k_compare.
[[nodiscard]] CompareOutcome k_compare_chunked(const PackedKey& x, const PackedKey& v,
                                               const LcpValue& v_lcp, const BookendState& state,
                                               const MetaCodec& codec, ChunkSchedule& sched,
                                               CostLedger* led = nullptr);

// ============================================================================
// Constant-span word primitives
// ============================================================================

// Most significant (first) nonzero word via sqrt-decomposition: group flags,
// all-pairs elimination over the flags, then all-pairs within the winning
// group.  Always three dependent rounds: span_units += 3.  work_units += the
// words touched: M flag reads plus both all-pairs stages.
[[nodiscard]] std::size_t msw_sqrt(std::span<const std::uint64_t> words,
                                   CostLedger* led = nullptr);

// External-memory LCP: per-block difference flags (one transfer per block
// overlapped by the scan), then one transfer to resolve the first differing
// block.  Same value as lcp_from(a, b, start).  Charges io_work += blocks
// scanned + 1 and io_span += 2.
[[nodiscard]] std::uint64_t pem_lcp(const PackedKey& a, const PackedKey& b,
                                    std::uint64_t start, std::uint64_t block_words,
                                    CostLedger* led = nullptr);

}  // namespace lcpkit
