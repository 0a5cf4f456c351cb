#include "lcpkit/packed_key.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace lcpkit {

// ============================================================================
// Alphabet
// ============================================================================

std::uint64_t Alphabet::encode_char(char c) const {
    if (kind == Kind::Bytes) return static_cast<unsigned char>(c);
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
        default:
            throw EncodingError(std::string("character out of alphabet range: '") + c + "'");
    }
}

char Alphabet::decode_char(std::uint64_t sym) const {
    if (kind == Kind::Bytes) return static_cast<char>(sym & 0xFF);
    static constexpr char kDna[4] = {'A', 'C', 'G', 'T'};
    return kDna[sym & 3];
}

// ============================================================================
// PackedKey
// ============================================================================

PackedKey::PackedKey(std::vector<std::uint64_t> words, std::uint64_t char_len, Alphabet a)
    : words_(std::move(words)), char_len_(char_len), alphabet_(a) {
    assert(words_.size() ==
           (char_len_ + alphabet_.alpha() - 1) / alphabet_.alpha());
}

PackedKey PackedKey::pack(std::string_view text, const Alphabet& a) {
    const unsigned alpha = a.alpha();
    const unsigned bpc = a.bits_per_char;
    assert(alpha >= 1 && a.word_bits <= 64);

    std::vector<std::uint64_t> words((text.size() + alpha - 1) / alpha, 0);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const std::uint64_t sym = a.encode_char(text[i]);
        const unsigned slot = static_cast<unsigned>(i % alpha);
        const unsigned shift = a.word_bits - (slot + 1) * bpc;
        words[i / alpha] |= sym << shift;
    }
    PackedKey k;
    k.words_ = std::move(words);
    k.char_len_ = text.size();
    k.alphabet_ = a;
    return k;
}

std::string PackedKey::unpack() const {
    std::string out;
    out.reserve(char_len_);
    for (std::uint64_t i = 0; i < char_len_; ++i)
        out.push_back(alphabet_.decode_char(symbol_at(i)));
    return out;
}

std::uint64_t PackedKey::symbol_at(std::uint64_t i) const noexcept {
    const unsigned alpha = alphabet_.alpha();
    const unsigned bpc = alphabet_.bits_per_char;
    const unsigned slot = static_cast<unsigned>(i % alpha);
    const unsigned shift = alphabet_.word_bits - (slot + 1) * bpc;
    const std::uint64_t mask = bpc >= 64 ? ~0ull : ((1ull << bpc) - 1);
    return (words_[i / alpha] >> shift) & mask;
}

// ============================================================================
// Word-level primitives
// ============================================================================

unsigned msb(std::uint64_t word, unsigned word_bits) noexcept {
    assert(word_bits <= 64);
    assert(word_bits == 64 || (word >> word_bits) == 0);
    if (word == 0) return word_bits;
    return word_bits - std::bit_width(word);
}

std::size_t msw_linear(std::span<const std::uint64_t> words, CostLedger* led) noexcept {
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (led) led->words++;
        if (words[i] != 0) return i;
    }
    return words.size();
}

namespace {

// Mask that keeps only the characters of one logical word at index >= `from`
// (counted from the word's first character).
inline std::uint64_t tail_mask(unsigned from, const Alphabet& a) noexcept {
    const unsigned drop = from * a.bits_per_char;
    const std::uint64_t full =
        a.word_bits >= 64 ? ~0ull : ((1ull << a.word_bits) - 1);
    return drop >= a.word_bits ? 0 : (full >> drop);
}

}  // namespace

std::uint64_t lcp_from(const PackedKey& a, const PackedKey& b,
                       std::uint64_t start, CostLedger* led) {
    assert(a.alphabet() == b.alphabet());
    const Alphabet& al = a.alphabet();
    const unsigned alpha = al.alpha();

    const std::uint64_t min_len = std::min(a.char_len(), b.char_len());
    assert(start <= min_len);
    if (start >= min_len) return min_len;

    const std::span<const std::uint64_t> wa = a.words();
    const std::span<const std::uint64_t> wb = b.words();
    const std::uint64_t last_word = (min_len - 1) / alpha;

    for (std::uint64_t wi = start / alpha; wi <= last_word; ++wi) {
        std::uint64_t x = wa[wi] ^ wb[wi];
        if (wi == start / alpha)
            x &= tail_mask(static_cast<unsigned>(start % alpha), al);
        if (led) led->words++;
        if (x != 0) {
            const std::uint64_t ci = wi * alpha + msb(x, al.word_bits) / al.bits_per_char;
            return std::min(ci, min_len);
        }
    }
    return min_len;
}

Ordering compare_at(const PackedKey& a, const PackedKey& b,
                    std::uint64_t pos, CostLedger* led) noexcept {
    const bool ea = pos >= a.char_len();
    const bool eb = pos >= b.char_len();
    if (led && !(ea && eb)) led->words++;
    if (ea && eb) return Ordering::EQ;
    if (ea) return Ordering::LT;  // sentinel orders first
    if (eb) return Ordering::GT;
    const std::uint64_t sa = a.symbol_at(pos), sb = b.symbol_at(pos);
    return sa < sb ? Ordering::LT : (sa > sb ? Ordering::GT : Ordering::EQ);
}

Ordering compare_keys(const PackedKey& a, const PackedKey& b, CostLedger* led) {
    const std::uint64_t l = lcp_from(a, b, 0, led);
    return compare_at(a, b, l, led);
}

bool has_prefix(const PackedKey& key, const PackedKey& p, CostLedger* led) {
    if (key.char_len() < p.char_len()) return false;
    return lcp_from(key, p, 0, led) >= p.char_len();
}

}  // namespace lcpkit
