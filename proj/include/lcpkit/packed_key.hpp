#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcpkit/cost_ledger.hpp"

namespace lcpkit {

enum class Ordering : int { LT = -1, EQ = 0, GT = 1 };

[[nodiscard]] constexpr Ordering ordering_of(long long diff) noexcept {
    return diff < 0 ? Ordering::LT : (diff > 0 ? Ordering::GT : Ordering::EQ);
}

struct EncodingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ============================================================================
// Alphabet
// ============================================================================

// Describes how text characters map to fixed-width symbols and how many of
// those symbols are packed into one machine word.  `word_bits` may be smaller
// than 64 (the storage word); logical words then occupy the low `word_bits`
// bits of each stored word, which preserves unsigned-integer ordering.
struct Alphabet {
    enum class Kind : std::uint8_t { Bytes, Dna };

    Kind kind = Kind::Bytes;
    unsigned bits_per_char = 8;
    unsigned word_bits = 64;

    // symbols per word
    [[nodiscard]] unsigned alpha() const noexcept { return word_bits / bits_per_char; }

    [[nodiscard]] static Alphabet bytes(unsigned word_bits = 64) {
        return {Kind::Bytes, 8, word_bits};
    }
    [[nodiscard]] static Alphabet dna(unsigned word_bits = 64) {
        return {Kind::Dna, 2, word_bits};
    }

    // Throws EncodingError for characters outside the alphabet.
    [[nodiscard]] std::uint64_t encode_char(char c) const;
    [[nodiscard]] char decode_char(std::uint64_t sym) const;

    bool operator==(const Alphabet&) const = default;
};

// ============================================================================
// PackedKey
// ============================================================================

// A string packed `alpha` characters per word, first character in the highest
// bits.  Trailing bits of the last word are zero, so lexicographic order on
// strings equals (word-sequence-as-unsigned-integers, then length) order.
class PackedKey {
public:
    PackedKey() = default;
    PackedKey(std::vector<std::uint64_t> words, std::uint64_t char_len, Alphabet a);

    [[nodiscard]] static PackedKey pack(std::string_view text, const Alphabet& a);
    [[nodiscard]] std::string unpack() const;

    [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }
    [[nodiscard]] std::uint64_t char_len() const noexcept { return char_len_; }
    [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
    [[nodiscard]] bool empty() const noexcept { return char_len_ == 0; }

    // Symbol at character index i (i < char_len()).
    [[nodiscard]] std::uint64_t symbol_at(std::uint64_t i) const noexcept;

    bool operator==(const PackedKey& o) const noexcept {
        return char_len_ == o.char_len_ && alphabet_ == o.alphabet_ && words_ == o.words_;
    }

private:
    std::vector<std::uint64_t> words_;
    std::uint64_t char_len_ = 0;
    Alphabet alphabet_{};
};

// ============================================================================
// Word-level primitives
// ============================================================================

// Index of the most significant set bit, counted from the top of a
// `word_bits`-wide word: msb(1 << (word_bits-1)) == 0.  By convention the
// all-zero word reports `word_bits` (its first set bit lies past the end).
[[nodiscard]] unsigned msb(std::uint64_t word, unsigned word_bits = 64) noexcept;

// Index of the first nonzero word, or size() if all are zero.  Charges one
// word operation per word inspected.
[[nodiscard]] std::size_t msw_linear(std::span<const std::uint64_t> words,
                                     CostLedger* led = nullptr) noexcept;

// Longest common prefix (in characters) of a and b, both known to agree on
// their first `start` characters.  XOR/most-significant-bit word scan that
// masks the already-matched leading characters of the first word.  Charges
// at most ceil((lcp - start)/alpha) + 1 word operations.
[[nodiscard]] std::uint64_t lcp_from(const PackedKey& a, const PackedKey& b,
                                     std::uint64_t start, CostLedger* led = nullptr);

// Compare the character at index pos; a key exhausted at pos acts as an
// end-of-string sentinel that orders before every real character.
[[nodiscard]] Ordering compare_at(const PackedKey& a, const PackedKey& b,
                                  std::uint64_t pos, CostLedger* led = nullptr) noexcept;

// Full lexicographic comparison (word scan, then length tie-break).
[[nodiscard]] Ordering compare_keys(const PackedKey& a, const PackedKey& b,
                                    CostLedger* led = nullptr);

// True iff `p` is a prefix of `key`.
[[nodiscard]] bool has_prefix(const PackedKey& key, const PackedKey& p,
                              CostLedger* led = nullptr);

}  // namespace lcpkit
