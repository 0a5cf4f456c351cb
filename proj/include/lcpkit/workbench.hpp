#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcpkit/cost_ledger.hpp"
#include "lcpkit/lcp_codec.hpp"
#include "lcpkit/packed_key.hpp"
#include "lcpkit/parallel_lcp.hpp"

namespace lcpkit {

// ============================================================================
// Corpus
// ============================================================================

struct CorpusRecord {
    std::string id;
    PackedKey key;
};

struct CorpusStats {
    std::vector<std::uint64_t> lengths;   // per record
    std::vector<std::uint64_t> max_lcps;  // per record: deepest prefix shared with any other
    double median_length = 0.0;
    double median_max_lcp = 0.0;
};

struct Corpus {
    Alphabet alphabet{};
    std::vector<CorpusRecord> records;

    [[nodiscard]] std::size_t size() const noexcept { return records.size(); }
    [[nodiscard]] CorpusStats stats() const;
};

// Parse failure with the 1-based input line it occurred on (0 for file-level
// problems such as an unreadable path).
struct ParseError : std::runtime_error {
    ParseError(std::size_t line_no, const std::string& msg);
    std::size_t line = 0;
};

enum class CorpusFormat : std::uint8_t { Lines, Fasta };

// Lines: one key per line, blank lines skipped, ids are line numbers.
// Fasta: ">id description" headers, sequence lines concatenated until the
// next header.  Trailing carriage returns are stripped in both formats.
[[nodiscard]] Corpus ingest(std::istream& in, CorpusFormat format, const Alphabet& alphabet);
[[nodiscard]] Corpus ingest_file(const std::string& path, CorpusFormat format,
                                 const Alphabet& alphabet);

// ============================================================================
// Synthetic corpora
// ============================================================================

// Generates n keys spread round-robin over the requested shared-prefix
// depths: keys of one bucket share a random stem of exactly that length and
// then diverge within a few characters (a fixed-width per-key ordinal
// follows the stem).  Deterministic for a given spec.
struct SynthSpec {
    std::size_t n = 1024;
    std::uint64_t tail_lo = 16;  // random tail length bounds, inclusive
    std::uint64_t tail_hi = 64;
    std::vector<std::uint64_t> lcp_buckets{0};  // planted stem depths
    std::uint64_t seed = 0;
    Alphabet alphabet = Alphabet::bytes();
};

// Record ids are "b<bucket>_<ordinal>".  Throws std::invalid_argument for an
// empty bucket list or inverted tail bounds.
[[nodiscard]] Corpus synth(const SynthSpec& spec);

// ============================================================================
// Workloads
// ============================================================================

struct WorkloadSpec {
    // Operation mix; must be nonnegative and sum to 1.
    double search = 1.0;
    double insert = 0.0;
    double erase = 0.0;
    double prefix = 0.0;
    double range = 0.0;

    bool use_btree = false;  // static string B-tree (search/prefix/range only)
    LcpMode mode = LcpMode::Exact;
    ChunkPolicy policy = ChunkPolicy::None;
    std::uint64_t f = 32;          // codec accuracy divisor
    std::size_t block_words = 16;  // B-tree block capacity
    std::size_t fanout = 8;
    std::size_t ops = 1000;
    std::size_t reps = 1;  // independent repetitions, fresh structure each
    std::uint64_t seed = 0;
    bool oracle_check = false;  // verify every result against the oracle dict

    // mi-zt (exact-metadata zip trie), zt (approximate), or sbt, with a
    // +fixed / +adaptive suffix for chunked comparison schedules.
    [[nodiscard]] std::string structure_label() const;
};

struct RunRow {
    std::string op;         // search | insert | delete | prefix | range
    std::uint64_t lcp = 0;  // deepest prefix the probe shared with the dictionary
    std::size_t n = 0;      // dictionary size when the operation ran
    std::uint64_t wall_ns = 0;
    CostLedger led{};
};

struct RunReport {
    std::string structure;
    std::vector<RunRow> rows;
    std::size_t divergences = 0;  // oracle mismatches observed (checking mode)

    // structure,op,lcp,n,wall_ns,words_examined,comparisons,span_units,
    // work_units,io_work,io_span — one row per operation.
    [[nodiscard]] std::string csv() const;
};

// Loads the corpus into the selected structure, executes the sampled
// operation mix, and records one row per operation.  Identical inputs give
// identical reports except for the wall_ns column.  Throws
// std::invalid_argument for a bad mix or mutations on the static B-tree.
[[nodiscard]] RunReport run_workload(const Corpus& corpus, const WorkloadSpec& spec);

}  // namespace lcpkit
