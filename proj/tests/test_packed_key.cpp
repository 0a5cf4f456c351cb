#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "lcpkit/packed_key.hpp"

using namespace lcpkit;

namespace {

// Character-at-a-time reference implementations.  Everything the word-level
// code computes is checked against these.
std::uint64_t naive_lcp(const std::string& a, const std::string& b) {
    std::uint64_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
}

Ordering naive_compare(const std::string& a, const std::string& b) {
    // std::string comparison is unsigned-byte lexicographic, which is the
    // order every structure here maintains.
    if (a < b) return Ordering::LT;
    if (b < a) return Ordering::GT;
    return Ordering::EQ;
}

std::string random_bytes(std::mt19937_64& rng, std::size_t len, int span = 256) {
    std::uniform_int_distribution<int> d(0, span - 1);
    std::string s(len, '\0');
    for (auto& c : s) c = static_cast<char>(d(rng));
    return s;
}

std::string random_dna(std::mt19937_64& rng, std::size_t len) {
    static const char sym[] = {'A', 'C', 'G', 'T'};
    std::uniform_int_distribution<int> d(0, 3);
    std::string s(len, 'A');
    for (auto& c : s) c = sym[d(rng)];
    return s;
}

// A pair that shares a planted prefix, so LCPs are long enough to matter.
std::pair<std::string, std::string> related_pair(std::mt19937_64& rng, bool dna) {
    std::uniform_int_distribution<std::size_t> plen(0, 150), tlen(0, 40);
    const std::string stem = dna ? random_dna(rng, plen(rng)) : random_bytes(rng, plen(rng));
    auto tail = [&] { return dna ? random_dna(rng, tlen(rng)) : random_bytes(rng, tlen(rng)); };
    return {stem + tail(), stem + tail()};
}

}  // namespace

TEST_CASE("byte packing is big-endian within each word") {
    const Alphabet a16 = Alphabet::bytes(16);  // two characters per word
    const PackedKey k = PackedKey::pack("APPLES", a16);
    REQUIRE(k.char_len() == 6);
    REQUIRE(k.words().size() == 3);
    CHECK(k.words()[0] == 0x4150u);  // 'A' in the high byte
    CHECK(k.words()[1] == 0x504Cu);
    CHECK(k.words()[2] == 0x4553u);
    CHECK(k.unpack() == "APPLES");

    // Trailing characters of a partially filled word sit in the high bits,
    // with zero padding below.
    const PackedKey odd = PackedKey::pack("APPLE", a16);
    REQUIRE(odd.words().size() == 3);
    CHECK(odd.words()[2] == 0x4500u);
}

TEST_CASE("dna packing uses two bits per character") {
    const Alphabet dna = Alphabet::dna(8);  // four characters per word
    const PackedKey k = PackedKey::pack("ACGT", dna);
    REQUIRE(k.words().size() == 1);
    // A,C,G,T -> 00 01 10 11 from the high end.
    CHECK(k.words()[0] == 0b00011011u);
    CHECK(k.unpack() == "ACGT");
    CHECK_THROWS_AS((void)PackedKey::pack("ACGX", dna), EncodingError);
}

TEST_CASE("pack/unpack round trip on random strings") {
    std::mt19937_64 rng(0xC0FFEE);
    for (const Alphabet& al :
         {Alphabet::bytes(64), Alphabet::bytes(16), Alphabet::dna(64), Alphabet::dna(8)}) {
        for (int i = 0; i < 200; ++i) {
            const bool dna = al.kind == Alphabet::Kind::Dna;
            const std::string s =
                dna ? random_dna(rng, i) : random_bytes(rng, i);  // includes NUL bytes
            const PackedKey k = PackedKey::pack(s, al);
            CHECK(k.char_len() == s.size());
            CHECK(k.unpack() == s);
            for (std::size_t j = 0; j < s.size(); ++j)
                CHECK(k.symbol_at(j) == al.encode_char(s[j]));
        }
    }
}

TEST_CASE("msb counts from the top and reports width for zero") {
    CHECK(msb(0, 16) == 16);
    CHECK(msb(1ull << 15, 16) == 0);
    CHECK(msb(1, 16) == 15);
    CHECK(msb(0) == 64);
    CHECK(msb(1ull << 63) == 0);
    CHECK(msb(1) == 63);
    CHECK(msb(0x00F0u, 16) == 8);
}

TEST_CASE("msw_linear finds the first nonzero word and charges per inspection") {
    CostLedger led;
    const std::vector<std::uint64_t> none;
    CHECK(msw_linear(none, &led) == 0);
    CHECK(led.words == 0);

    const std::vector<std::uint64_t> zeros(7, 0);
    led = {};
    CHECK(msw_linear(zeros, &led) == 7);
    CHECK(led.words == 7);

    const std::vector<std::uint64_t> v{0, 0, 5, 0, 9};
    led = {};
    CHECK(msw_linear(v, &led) == 2);
    CHECK(led.words == 3);  // stops at the hit
}

TEST_CASE("lcp_from matches the character-level reference") {
    std::mt19937_64 rng(7);
    for (const Alphabet& al :
         {Alphabet::bytes(64), Alphabet::bytes(16), Alphabet::dna(64), Alphabet::dna(8)}) {
        const bool dna = al.kind == Alphabet::Kind::Dna;
        for (int i = 0; i < 400; ++i) {
            auto [s, t] = related_pair(rng, dna);
            const PackedKey a = PackedKey::pack(s, al);
            const PackedKey b = PackedKey::pack(t, al);
            const std::uint64_t want = naive_lcp(s, t);

            CostLedger led;
            CHECK(lcp_from(a, b, 0, &led) == want);
            // Word-work bound: one word per alpha characters advanced, plus
            // the word holding the mismatch.
            CHECK(led.words <= want / al.alpha() + 1);

            // Resuming anywhere inside the known-equal prefix changes nothing.
            std::uniform_int_distribution<std::uint64_t> sd(0, want);
            const std::uint64_t start = sd(rng);
            CostLedger led2;
            CHECK(lcp_from(a, b, start, &led2) == want);
            // A mid-word start can straddle one extra word, hence the ceiling.
            CHECK(led2.words <= (want - start + al.alpha() - 1) / al.alpha() + 1);
        }
    }
}

TEST_CASE("lcp_from handles identical, empty, and prefix keys") {
    const Alphabet al = Alphabet::bytes(64);
    const PackedKey e = PackedKey::pack("", al);
    const PackedKey a = PackedKey::pack("abc", al);
    const PackedKey ab = PackedKey::pack(std::string("abc\0def", 7), al);
    CHECK(lcp_from(e, a, 0) == 0);
    CHECK(lcp_from(a, a, 0) == 3);
    CHECK(lcp_from(a, ab, 0) == 3);   // shorter key is a strict prefix
    CHECK(lcp_from(ab, ab, 3) == 7);  // NUL byte participates like any other
    CHECK(lcp_from(a, ab, 3) == 3);   // resume at the minimum length
}

TEST_CASE("compare_at treats an exhausted key as ordering first") {
    const Alphabet al = Alphabet::bytes(64);
    const PackedKey a = PackedKey::pack("car", al);
    const PackedKey b = PackedKey::pack("carpet", al);
    CHECK(compare_at(a, b, 3) == Ordering::LT);
    CHECK(compare_at(b, a, 3) == Ordering::GT);
    CHECK(compare_at(a, b, 1) == Ordering::EQ);
    CHECK(compare_at(a, a, 3) == Ordering::EQ);  // both exhausted
    // A real NUL character still orders after the end-of-string sentinel.
    const PackedKey z = PackedKey::pack(std::string("car\0", 4), al);
    CHECK(compare_at(a, z, 3) == Ordering::LT);
}

TEST_CASE("compare_keys agrees with unsigned lexicographic order") {
    std::mt19937_64 rng(99);
    for (const Alphabet& al : {Alphabet::bytes(64), Alphabet::bytes(16), Alphabet::dna(8)}) {
        const bool dna = al.kind == Alphabet::Kind::Dna;
        for (int i = 0; i < 400; ++i) {
            auto [s, t] = related_pair(rng, dna);
            const PackedKey a = PackedKey::pack(s, al);
            const PackedKey b = PackedKey::pack(t, al);
            CHECK(compare_keys(a, b) == naive_compare(s, t));
            CHECK(compare_keys(b, a) == naive_compare(t, s));
            CHECK(compare_keys(a, a) == Ordering::EQ);
        }
    }
}

TEST_CASE("sorting by packed comparison reproduces string order") {
    std::mt19937_64 rng(123);
    std::vector<std::string> strs;
    for (int i = 0; i < 300; ++i) {
        auto [s, t] = related_pair(rng, false);
        strs.push_back(s);
        strs.push_back(t);
    }
    std::vector<PackedKey> keys;
    const Alphabet al = Alphabet::bytes(16);
    for (const auto& s : strs) keys.push_back(PackedKey::pack(s, al));

    std::sort(strs.begin(), strs.end());
    std::sort(keys.begin(), keys.end(), [](const PackedKey& a, const PackedKey& b) {
        return compare_keys(a, b) == Ordering::LT;
    });
    for (std::size_t i = 0; i < strs.size(); ++i) CHECK(keys[i].unpack() == strs[i]);
}

TEST_CASE("has_prefix") {
    const Alphabet al = Alphabet::bytes(64);
    const PackedKey k = PackedKey::pack("interleave", al);
    CHECK(has_prefix(k, PackedKey::pack("", al)));
    CHECK(has_prefix(k, PackedKey::pack("inter", al)));
    CHECK(has_prefix(k, PackedKey::pack("interleave", al)));
    CHECK(!has_prefix(k, PackedKey::pack("interleaved", al)));
    CHECK(!has_prefix(k, PackedKey::pack("intra", al)));
}
