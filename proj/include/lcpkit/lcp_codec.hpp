#pragma once

#include <cstdint>
#include <stdexcept>

#include "lcpkit/packed_key.hpp"

namespace lcpkit {

enum class LcpMode : std::uint8_t { Exact, Approx };

// ============================================================================
// CodecConfig
// ============================================================================

// Parameters of the approximate length representation.  `f` is the accuracy
// divisor: a stored value never undershoots the true length by more than
// length/f.  `l_max` caps the representable length.  Both are fixed for the
// lifetime of a structure that uses them.
struct CodecConfig {
    std::uint64_t f = 32;               // default: ceil(log2 of the default l_max)
    std::uint64_t l_max = 1ull << 32;

    [[nodiscard]] static CodecConfig for_max_keys(std::uint64_t n_max) {
        CodecConfig c;
        c.f = 1;
        while ((1ull << c.f) < n_max) ++c.f;  // ceil(log2 n_max), min 1
        return c;
    }

    // Fixed field widths of the packed physical layout (a in the high bits,
    // b in the low bits); used by the memory-accounting report.
    [[nodiscard]] unsigned a_field_bits() const noexcept;
    [[nodiscard]] unsigned b_field_bits() const noexcept;

    bool operator==(const CodecConfig&) const = default;
};

// ============================================================================
// LcpValue
// ============================================================================

// A stored LCP length: either the exact value or a quantized 2^a * b grid
// value that lower-bounds the true length.  Values of different modes never
// mix inside one structure.
class LcpValue {
public:
    constexpr LcpValue() = default;

    [[nodiscard]] static constexpr LcpValue exact(std::uint64_t len) noexcept {
        LcpValue v;
        v.mode_ = LcpMode::Exact;
        v.a_ = 0;
        v.b_ = len;
        return v;
    }
    [[nodiscard]] static constexpr LcpValue approx(std::uint32_t a, std::uint64_t b) noexcept {
        LcpValue v;
        v.mode_ = LcpMode::Approx;
        v.a_ = a;
        v.b_ = b;
        return v;
    }

    [[nodiscard]] constexpr LcpMode mode() const noexcept { return mode_; }
    [[nodiscard]] constexpr std::uint32_t exponent() const noexcept { return a_; }
    [[nodiscard]] constexpr std::uint64_t mantissa() const noexcept { return b_; }

    // The represented length (identity in exact mode, b << a otherwise).
    [[nodiscard]] constexpr std::uint64_t decode() const noexcept { return b_ << a_; }

    bool operator==(const LcpValue&) const = default;

private:
    LcpMode mode_ = LcpMode::Exact;
    std::uint32_t a_ = 0;
    std::uint64_t b_ = 0;
};

// Largest grid value <= len: a = max(0, floor(log2(len/f))), b = len >> a.
// Throws std::out_of_range when len exceeds cfg.l_max.
[[nodiscard]] LcpValue encode(std::uint64_t len, const CodecConfig& cfg);

// Compare two stored values of the same mode by their decoded lengths.
// Mixing modes is a contract violation (asserted).
[[nodiscard]] Ordering compare(const LcpValue& u, const LcpValue& v) noexcept;

// Minimal bits for this particular value: bit_width(a) + bit_width(b).
[[nodiscard]] unsigned packed_width_bits(const LcpValue& v) noexcept;

// Fixed-width physical packing per the config's field layout.
[[nodiscard]] std::uint64_t pack_fields(const LcpValue& v, const CodecConfig& cfg) noexcept;

// ============================================================================
// MetaCodec
// ============================================================================

// Binds a mode to a codec config; produces the value a structure stores for a
// freshly computed exact length.
struct MetaCodec {
    LcpMode mode = LcpMode::Exact;
    CodecConfig cfg{};

    [[nodiscard]] LcpValue value_of(std::uint64_t exact_len) const {
        return mode == LcpMode::Exact ? LcpValue::exact(exact_len) : encode(exact_len, cfg);
    }
    [[nodiscard]] LcpValue zero() const noexcept {
        return mode == LcpMode::Exact ? LcpValue::exact(0) : LcpValue::approx(0, 0);
    }
};

}  // namespace lcpkit
