#include "lcpkit/parallel_lcp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <thread>

namespace lcpkit {

namespace {

inline std::uint64_t full_mask(const Alphabet& a) noexcept {
    return a.word_bits >= 64 ? ~0ull : ((1ull << a.word_bits) - 1);
}

// Drops the first `from` characters of a logical word.
inline std::uint64_t drop_head_mask(std::uint64_t from, const Alphabet& a) noexcept {
    const std::uint64_t drop = from * a.bits_per_char;
    return drop >= a.word_bits ? 0 : (full_mask(a) >> drop);
}

// Keeps only the first `keep` characters of a logical word.
inline std::uint64_t keep_head_mask(std::uint64_t keep, const Alphabet& a) noexcept {
    return ~drop_head_mask(keep, a) & full_mask(a);
}

}  // namespace

// ============================================================================
// Window oracle
// ============================================================================

WindowScan parallel_lcp_oracle(const PackedKey& a, const PackedKey& b,
                               std::uint64_t start, std::uint64_t limit,
                               unsigned workers, CostLedger* led,
                               std::vector<std::pair<std::uint64_t, std::uint64_t>>* trace) {
    assert(a.alphabet() == b.alphabet());
    assert(start <= limit);
    const Alphabet& al = a.alphabet();
    const unsigned alpha = al.alpha();
    const std::uint64_t min_len = std::min(a.char_len(), b.char_len());

    if (led) {
        led->oracle_invocations++;
        led->span_units++;
    }
    if (trace) trace->emplace_back(start, limit);

    const std::uint64_t lim = std::min(limit, min_len);
    if (lim <= start) return {min_len, false};  // keys end at or before the window

    const std::uint64_t w0 = start / alpha;
    const std::uint64_t w1 = (lim - 1) / alpha;
    const std::uint64_t nwords = w1 - w0 + 1;
    if (led) led->work_units += nwords;

    const std::span<const std::uint64_t> wa = a.words();
    const std::span<const std::uint64_t> wb = b.words();

    auto masked_xor = [&](std::uint64_t wi) noexcept {
        std::uint64_t x = wa[wi] ^ wb[wi];
        if (wi == w0) x &= drop_head_mask(start % alpha, al);
        if (wi == w1 && lim % alpha != 0 && lim / alpha == w1)
            x &= keep_head_mask(lim % alpha, al);
        return x;
    };

    std::uint64_t hit = w1 + 1;  // first word with a difference
    if (workers <= 1 || nwords < 64) {
        for (std::uint64_t wi = w0; wi <= w1; ++wi) {
            if (masked_xor(wi) != 0) {
                hit = wi;
                break;
            }
        }
    } else {
        const std::uint64_t shard = (nwords + workers - 1) / workers;
        std::vector<std::uint64_t> local(workers, w1 + 1);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            const std::uint64_t lo = w0 + t * shard;
            const std::uint64_t hi = std::min(w1 + 1, lo + shard);
            if (lo >= hi) break;
            pool.emplace_back([&, t, lo, hi] {
                for (std::uint64_t wi = lo; wi < hi; ++wi) {
                    if (masked_xor(wi) != 0) {
                        local[t] = wi;
                        break;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const std::uint64_t v : local) hit = std::min(hit, v);
    }

    if (hit > w1) {
        if (led) led->words += nwords;
        if (lim < limit) return {min_len, false};  // a key ended inside the window
        return {limit, true};
    }
    if (led) led->words += hit - w0 + 1;
    const std::uint64_t ci =
        hit * alpha + msb(masked_xor(hit), al.word_bits) / al.bits_per_char;
    return {std::min(ci, min_len), false};
}

// ============================================================================
// Chunked scanning
// ============================================================================

std::uint64_t chunked_scan(const PackedKey& a, const PackedKey& b,
                           std::uint64_t start, ChunkSchedule& sched, CostLedger* led) {
    if (sched.policy == ChunkPolicy::None) return lcp_from(a, b, start, led);

    std::uint64_t delta;
    if (sched.policy == ChunkPolicy::Fixed) {
        delta = sched.chunk_chars;
    } else {
        sched.delta = std::max<std::uint64_t>(1, sched.delta / 2);
        delta = sched.delta;
    }

    const unsigned alpha = a.alphabet().alpha();
    const std::uint64_t min_len = std::min(a.char_len(), b.char_len());
    std::uint64_t pos = start;
    bool have_prev = false;
    std::uint64_t prev_last_word = 0;
    for (;;) {
        const WindowScan ws =
            parallel_lcp_oracle(a, b, pos, pos + delta, sched.workers, led);
        const std::uint64_t lim = std::min(pos + delta, min_len);
        if (lim > pos) {
            // De-duplicate the straddle word against the previous window so
            // `words` counts distinct words, as one uninterrupted scan would.
            if (led && have_prev && pos / alpha == prev_last_word) led->words--;
            const std::uint64_t covered_to =
                ws.all_equal ? lim - 1 : std::min(ws.lcp, lim - 1);
            prev_last_word = covered_to / alpha;
            have_prev = true;
        }
        if (!ws.all_equal) return ws.lcp;
        pos += delta;
        if (sched.policy == ChunkPolicy::Adaptive) {
            delta = std::min<std::uint64_t>(delta * 2, 1ull << 40);
            sched.delta = delta;
        }
    }
}

CompareOutcome k_compare_chunked(const PackedKey& x, const PackedKey& v,
                                 const LcpValue& v_lcp, const BookendState& state,
                                 const MetaCodec& codec, ChunkSchedule& sched,
                                 CostLedger* led) {
    return k_compare(x, v, v_lcp, state, codec,
                     [&sched, led](const PackedKey& a, const PackedKey& b, std::uint64_t from) {
                         return chunked_scan(a, b, from, sched, led);
                     },
                     led);
}

// ============================================================================
// Constant-span word primitives
// ============================================================================

std::size_t msw_sqrt(std::span<const std::uint64_t> words, CostLedger* led) {
    const std::size_t m = words.size();
    if (led) led->span_units += 3;  // flags, flag round, in-group round
    if (m == 0) return 0;

    const std::size_t g = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m))));
    const std::size_t ngroups = (m + g - 1) / g;

    // Round 1: concurrent per-group nonzero flags (touches every word once).
    std::vector<char> flag(ngroups, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (words[i] != 0) flag[i / g] = 1;

    // Round 2: all-pairs elimination over the flags.
    std::size_t win = ngroups;
    for (std::size_t i = 0; i < ngroups; ++i) {
        if (flag[i]) {
            win = i;
            break;
        }
    }

    if (led) led->work_units += m + ngroups * ngroups + g * g;
    if (win == ngroups) return m;

    // Round 3: all-pairs elimination inside the winning group.
    const std::size_t lo = win * g, hi = std::min(m, lo + g);
    for (std::size_t i = lo; i < hi; ++i)
        if (words[i] != 0) return i;
    return m;  // unreachable: the flag was set
}

std::uint64_t pem_lcp(const PackedKey& a, const PackedKey& b,
                      std::uint64_t start, std::uint64_t block_words, CostLedger* led) {
    assert(a.alphabet() == b.alphabet());
    assert(block_words >= 1);
    const Alphabet& al = a.alphabet();
    const unsigned alpha = al.alpha();
    const std::uint64_t min_len = std::min(a.char_len(), b.char_len());

    if (led) led->io_span += 2;  // parallel block flags, then one resolving fetch
    if (start >= min_len) {
        if (led) led->io_work += 1;
        return min_len;
    }

    const std::uint64_t w0 = start / alpha;
    const std::uint64_t w1 = (min_len - 1) / alpha;
    const std::span<const std::uint64_t> wa = a.words();
    const std::span<const std::uint64_t> wb = b.words();

    std::uint64_t result = min_len;
    std::uint64_t blocks = 0;
    for (std::uint64_t b0 = w0 / block_words; b0 <= w1 / block_words; ++b0) {
        ++blocks;
        bool differs = false;
        const std::uint64_t lo = std::max(w0, b0 * block_words);
        const std::uint64_t hi = std::min(w1, (b0 + 1) * block_words - 1);
        for (std::uint64_t wi = lo; wi <= hi && !differs; ++wi) {
            std::uint64_t x = wa[wi] ^ wb[wi];
            if (wi == w0) x &= drop_head_mask(start % alpha, al);
            if (led) led->words++;
            if (x != 0) {
                const std::uint64_t ci =
                    wi * alpha + msb(x, al.word_bits) / al.bits_per_char;
                result = std::min(ci, min_len);
                differs = true;
            }
        }
        if (differs) break;
    }
    if (led) led->io_work += blocks + 1;
    return result;
}

}  // namespace lcpkit
