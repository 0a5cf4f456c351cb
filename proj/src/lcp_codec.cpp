#include "lcpkit/lcp_codec.hpp"

#include <bit>
#include <cassert>

namespace lcpkit {

unsigned CodecConfig::a_field_bits() const noexcept {
    // a ranges over [0, floor(log2(l_max/f))]
    const std::uint64_t a_max = l_max >= f ? std::bit_width(l_max / f) - 1 : 0;
    return static_cast<unsigned>(std::bit_width(a_max));
}

unsigned CodecConfig::b_field_bits() const noexcept {
    // b < 2f (and b <= f-1 < 2f when the length is stored exactly)
    return static_cast<unsigned>(std::bit_width(2 * f - 1));
}

LcpValue encode(std::uint64_t len, const CodecConfig& cfg) {
    if (len > cfg.l_max) throw std::out_of_range("lcp length exceeds codec l_max");
    assert(cfg.f >= 1);
    std::uint32_t a = 0;
    if (len >= cfg.f) {
        const std::uint64_t q = len / cfg.f;  // >= 1
        a = static_cast<std::uint32_t>(std::bit_width(q) - 1);
    }
    return LcpValue::approx(a, len >> a);
}

Ordering compare(const LcpValue& u, const LcpValue& v) noexcept {
    assert(u.mode() == v.mode() && "mixed exact/approx stored lengths");
    const std::uint64_t du = u.decode(), dv = v.decode();
    return du < dv ? Ordering::LT : (du > dv ? Ordering::GT : Ordering::EQ);
}

unsigned packed_width_bits(const LcpValue& v) noexcept {
    return static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(v.exponent())) +
                                 std::bit_width(v.mantissa()));
}

std::uint64_t pack_fields(const LcpValue& v, const CodecConfig& cfg) noexcept {
    return (static_cast<std::uint64_t>(v.exponent()) << cfg.b_field_bits()) | v.mantissa();
}

}  // namespace lcpkit
