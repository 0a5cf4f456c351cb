#pragma once

#include <cstdint>
#include <ostream>

namespace lcpkit {

// Instrumentation counters shared by every comparison primitive and data
// structure operation.  All counters are monotone within an operation; callers
// that want per-operation deltas start from a fresh ledger and merge.
//
//   words       sequential-model word operations (XOR/compare of one word)
//   chars       characters examined by bookend comparisons
//   comparisons bookend comparison invocations
//   oracle_invocations  window-oracle calls (one parallel round each)
//   work_units  parallel-model work (exact words touched by window scans,
//               plus the documented per-step charges of tree branching)
//   span_units  parallel-model span (one unit per dependent parallel round)
//   io_work     external-memory block transfers
//   io_span     external-memory round-trips on the critical path
struct CostLedger {
    std::uint64_t words = 0;
    std::uint64_t chars = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t oracle_invocations = 0;
    std::uint64_t work_units = 0;
    std::uint64_t span_units = 0;
    std::uint64_t io_work = 0;
    std::uint64_t io_span = 0;

    void merge(const CostLedger& o) noexcept {
        words += o.words;
        chars += o.chars;
        comparisons += o.comparisons;
        oracle_invocations += o.oracle_invocations;
        work_units += o.work_units;
        span_units += o.span_units;
        io_work += o.io_work;
        io_span += o.io_span;
    }

    static const char* csv_header() noexcept {
        return "work,span,invocations,io_work,io_span";
    }
    void csv_row(std::ostream& os) const {
        os << work_units << ',' << span_units << ',' << oracle_invocations
           << ',' << io_work << ',' << io_span;
    }
};

}  // namespace lcpkit
