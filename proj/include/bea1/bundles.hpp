#pragma once

// Bundle/block value types, bit packing and hex codecs.
//
// A bundle is a 10-bit value. Blocks (8 bundles, 80 bits) and master keys
// (12 bundles, 120 bits) pack MSB-first in index order: bit j (0 = MSB) of
// bundle i sits at position 10*i + j of the big-endian packed string.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bea1 {

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr unsigned kBundleBits = 10;
inline constexpr std::uint16_t kBundleMask = 0x3FF;

class Bundle {
public:
    constexpr Bundle() = default;
    constexpr explicit Bundle(unsigned v) : value_(static_cast<std::uint16_t>(v)) {
        if (v > kBundleMask) throw std::out_of_range("bundle value exceeds 10 bits");
    }

    constexpr std::uint16_t value() const noexcept { return value_; }

    friend constexpr Bundle operator^(Bundle a, Bundle b) noexcept {
        Bundle r;
        r.value_ = static_cast<std::uint16_t>(a.value_ ^ b.value_);
        return r;
    }
    constexpr Bundle& operator^=(Bundle o) noexcept {
        value_ = static_cast<std::uint16_t>(value_ ^ o.value_);
        return *this;
    }
    friend constexpr bool operator==(Bundle, Bundle) = default;

private:
    std::uint16_t value_ = 0;
};

/// Fixed-length sequence of bundles. Tag keeps blocks and keys distinct types.
template <std::size_t N, class Tag>
struct BundleArray {
    using tag_type = Tag;
    static constexpr std::size_t size = N;
    static constexpr std::size_t bits = N * kBundleBits;
    static constexpr std::size_t bytes = bits / 8;
    static_assert(bits % 8 == 0, "bundle arrays must pack to whole bytes");

    std::array<Bundle, N> bundles{};

    constexpr Bundle& operator[](std::size_t i) { return bundles[i]; }
    constexpr const Bundle& operator[](std::size_t i) const { return bundles[i]; }

    friend constexpr BundleArray operator^(BundleArray a, const BundleArray& b) noexcept {
        for (std::size_t i = 0; i < N; ++i) a.bundles[i] ^= b.bundles[i];
        return a;
    }
    friend constexpr bool operator==(const BundleArray&, const BundleArray&) = default;
};

struct BlockTag {};
struct KeyTag {};

using Block = BundleArray<8, BlockTag>;
using MasterKey = BundleArray<12, KeyTag>;
using RoundKey = Block;

template <std::size_t N, class Tag>
using PackedBytes = std::array<std::uint8_t, BundleArray<N, Tag>::bytes>;

namespace detail {

constexpr int hex_digit(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

inline constexpr char kHexUpper[] = "0123456789ABCDEF";

}  // namespace detail

inline Bundle bundle_from_hex(std::string_view text) {
    if (text.size() != 3) throw ParseError("bundle hex must be exactly 3 digits");
    unsigned v = 0;
    for (char c : text) {
        const int d = detail::hex_digit(c);
        if (d < 0) throw ParseError("invalid hex digit in bundle: " + std::string(text));
        v = (v << 4) | static_cast<unsigned>(d);
    }
    if (v > kBundleMask) throw ParseError("bundle hex out of 10-bit range: " + std::string(text));
    return Bundle(v);
}

inline std::string bundle_to_hex(Bundle b) {
    const unsigned v = b.value();
    return {detail::kHexUpper[(v >> 8) & 0xF], detail::kHexUpper[(v >> 4) & 0xF],
            detail::kHexUpper[v & 0xF]};
}

template <std::size_t N, class Tag>
constexpr PackedBytes<N, Tag> pack(const BundleArray<N, Tag>& a) noexcept {
    PackedBytes<N, Tag> out{};
    std::size_t pos = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const unsigned v = a.bundles[i].value();
        for (int j = static_cast<int>(kBundleBits) - 1; j >= 0; --j, ++pos) {
            if ((v >> j) & 1u) out[pos / 8] |= static_cast<std::uint8_t>(0x80u >> (pos % 8));
        }
    }
    return out;
}

template <std::size_t N, class Tag>
constexpr BundleArray<N, Tag> unpack(std::span<const std::uint8_t, BundleArray<N, Tag>::bytes> in) {
    BundleArray<N, Tag> out;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < N; ++i) {
        unsigned v = 0;
        for (unsigned j = 0; j < kBundleBits; ++j, ++pos) {
            v = (v << 1) | ((in[pos / 8] >> (7 - pos % 8)) & 1u);
        }
        out.bundles[i] = Bundle(v);
    }
    return out;
}

inline PackedBytes<8, BlockTag> pack_block(const Block& b) noexcept { return pack(b); }
inline Block unpack_block(std::span<const std::uint8_t, Block::bytes> in) {
    return unpack<8, BlockTag>(in);
}
inline PackedBytes<12, KeyTag> pack_key(const MasterKey& k) noexcept { return pack(k); }
inline MasterKey unpack_key(std::span<const std::uint8_t, MasterKey::bytes> in) {
    return unpack<12, KeyTag>(in);
}

inline std::string bytes_to_hex(std::span<const std::uint8_t> bytes) {
    std::string s;
    s.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        s.push_back(detail::kHexUpper[b >> 4]);
        s.push_back(detail::kHexUpper[b & 0xF]);
    }
    return s;
}

/// Canonical form: the packed bytes as uppercase hex (20 chars per block, 30 per key).
template <std::size_t N, class Tag>
std::string to_hex(const BundleArray<N, Tag>& a) {
    const auto bytes = pack(a);
    return bytes_to_hex(bytes);
}

template <class Array>
Array from_hex(std::string_view text) {
    constexpr std::size_t nbytes = Array::bytes;
    if (text.size() != nbytes * 2) {
        throw ParseError("expected " + std::to_string(nbytes * 2) + " hex digits, got " +
                         std::to_string(text.size()));
    }
    std::array<std::uint8_t, nbytes> bytes{};
    for (std::size_t i = 0; i < nbytes; ++i) {
        const int hi = detail::hex_digit(text[2 * i]);
        const int lo = detail::hex_digit(text[2 * i + 1]);
        if (hi < 0 || lo < 0) throw ParseError("invalid hex digit in: " + std::string(text));
        bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return unpack<Array::size, typename Array::tag_type>(bytes);
}

inline Block block_from_hex(std::string_view text) { return from_hex<Block>(text); }
inline MasterKey key_from_hex(std::string_view text) { return from_hex<MasterKey>(text); }

/// Debug display: 3-digit bundles separated by spaces, as the published tables print them.
template <std::size_t N, class Tag>
std::string to_bundle_hex(const BundleArray<N, Tag>& a) {
    std::string s;
    for (std::size_t i = 0; i < N; ++i) {
        if (i) s.push_back(' ');
        s += bundle_to_hex(a.bundles[i]);
    }
    return s;
}

}  // namespace bea1
