#pragma once

// S-boxes S0..S3 and the diffusion map M with its inverse.
//
// The constants live in the text assets under data/ and are embedded at build
// time (bea1/table_assets.hpp is generated by CMake). load_tables() parses and
// verifies them once; any violated invariant throws IntegrityError.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bea1/bit_matrix.hpp"
#include "bea1/bundles.hpp"
#include "bea1/table_assets.hpp"

namespace bea1 {

class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ColumnTag {};
/// One MixColumns input/output: four bundles.
using Column = BundleArray<4, ColumnTag>;

inline constexpr std::size_t kSBoxSize = 1024;
inline constexpr std::size_t kColumnBits = 40;

/// Column packed MSB-first into the low 40 bits (bundle 0 in bits 39..30).
constexpr std::uint64_t pack40(const Column& c) noexcept {
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < 4; ++j) v = (v << kBundleBits) | c.bundles[j].value();
    return v;
}

constexpr Column unpack40(std::uint64_t v) {
    Column c;
    for (std::size_t j = 0; j < 4; ++j)
        c.bundles[j] = Bundle(static_cast<unsigned>((v >> (kBundleBits * (3 - j))) & kBundleMask));
    return c;
}

/// Number of nonzero bundles in a packed column.
constexpr int bundle_weight40(std::uint64_t v) noexcept {
    int w = 0;
    for (int j = 0; j < 4; ++j) w += ((v >> (kBundleBits * j)) & kBundleMask) != 0;
    return w;
}

class SBoxTable {
public:
    using Table = std::array<std::uint16_t, kSBoxSize>;

    /// Checks the forward table is a permutation of 0..1023 and derives the inverse.
    static SBoxTable from_forward(const Table& forward, std::string_view name = "S-box") {
        SBoxTable s;
        s.forward_ = forward;
        std::array<int, kSBoxSize> seen{};
        for (std::size_t x = 0; x < kSBoxSize; ++x) {
            const std::uint16_t y = forward[x];
            if (y > kBundleMask) {
                throw IntegrityError(std::string(name) + ": entry out of 10-bit range");
            }
            if (seen[y]++) {
                throw IntegrityError(std::string(name) + ": not a permutation (value " +
                                     bundle_to_hex(Bundle(y)) + " repeats)");
            }
            s.inverse_[y] = static_cast<std::uint16_t>(x);
        }
        for (std::size_t x = 0; x < kSBoxSize; ++x) {
            if (s.inverse_[s.forward_[x]] != x) {
                throw IntegrityError(std::string(name) + ": inverse[forward[x]] != x");
            }
        }
        return s;
    }

    static SBoxTable identity() {
        Table t;
        for (std::size_t x = 0; x < kSBoxSize; ++x) t[x] = static_cast<std::uint16_t>(x);
        return from_forward(t, "identity");
    }

    std::uint16_t operator()(std::uint16_t x) const noexcept { return forward_[x]; }
    Bundle operator()(Bundle x) const noexcept { return Bundle(forward_[x.value()]); }
    std::uint16_t inv(std::uint16_t y) const noexcept { return inverse_[y]; }
    Bundle inv(Bundle y) const noexcept { return Bundle(inverse_[y.value()]); }

    const Table& forward() const noexcept { return forward_; }
    const Table& inverse() const noexcept { return inverse_; }

    /// Same table with forward and inverse swapped.
    SBoxTable inverted() const {
        SBoxTable s;
        s.forward_ = inverse_;
        s.inverse_ = forward_;
        return s;
    }

private:
    Table forward_{};
    Table inverse_{};
};

/// An F2-linear map on (F2^10)^4, defined by the images of the 40 standard basis vectors.
///
/// Basis image 10*j + t is the image of the vector holding bundle (1 << t) at
/// position j, which is the row order of the published tables.
class LinearMapTable {
public:
    using BasisImages = std::array<Column, kColumnBits>;

    static LinearMapTable from_basis_images(const BasisImages& images) {
        LinearMapTable m;
        m.basis_ = images;
        for (std::size_t j = 0; j < 4; ++j) {
            auto& lut = m.lut_[j];
            lut[0] = 0;
            // Gray-code style fill: lut[b] = lut[b without its lowest set bit] ^ image(lowest bit).
            for (std::size_t b = 1; b < kSBoxSize; ++b) {
                const unsigned t = static_cast<unsigned>(std::countr_zero(b));
                lut[b] = lut[b & (b - 1)] ^ pack40(images[10 * j + t]);
            }
        }
        m.verify();
        return m;
    }

    static LinearMapTable from_matrix(const BitMatrix& mat) {
        if (mat.rows() != kColumnBits || mat.cols() != kColumnBits) {
            throw std::invalid_argument("linear map matrix must be 40x40");
        }
        BasisImages images;
        for (std::size_t j = 0; j < 4; ++j) {
            for (unsigned t = 0; t < kBundleBits; ++t) {
                const std::uint64_t x = pack40_single(j, static_cast<std::uint16_t>(1u << t));
                images[10 * j + t] = unpack40(mat.multiply(x));
            }
        }
        return from_basis_images(images);
    }

    static LinearMapTable identity() { return from_matrix(BitMatrix::identity(kColumnBits)); }

    std::uint64_t apply_packed(std::uint64_t v) const noexcept {
        return lut_[0][(v >> 30) & kBundleMask] ^ lut_[1][(v >> 20) & kBundleMask] ^
               lut_[2][(v >> 10) & kBundleMask] ^ lut_[3][v & kBundleMask];
    }

    Column apply(const Column& v) const { return unpack40(apply_packed(pack40(v))); }

    /// Image of a lone bundle b at input position j, packed.
    std::uint64_t lone_bundle_image(std::size_t j, std::uint16_t b) const noexcept {
        return lut_[j][b];
    }

    const BasisImages& basis_images() const noexcept { return basis_; }

    /// 40x40 matrix; column 10*j + t is the image of bit (9 - t) of bundle j.
    BitMatrix as_binary_matrix() const {
        BitMatrix mat(kColumnBits, kColumnBits);
        for (std::size_t j = 0; j < 4; ++j) {
            for (unsigned t = 0; t < kBundleBits; ++t) {
                const std::uint64_t img = pack40(basis_[10 * j + (9 - t)]);
                const std::size_t col = 10 * j + t;
                for (std::size_t r = 0; r < kColumnBits; ++r)
                    mat.set(r, col, (img >> (kColumnBits - 1 - r)) & 1u);
            }
        }
        return mat;
    }

    /// Re-derives every LUT entry bit by bit from the basis images.
    void verify() const {
        for (std::size_t j = 0; j < 4; ++j) {
            if (lut_[j][0] != 0) throw IntegrityError("linear map: image of zero is nonzero");
            for (std::size_t b = 0; b < kSBoxSize; ++b) {
                std::uint64_t acc = 0;
                for (unsigned t = 0; t < kBundleBits; ++t)
                    if ((b >> t) & 1u) acc ^= pack40(basis_[10 * j + t]);
                if (acc != lut_[j][b]) {
                    throw IntegrityError("linear map: lookup table disagrees with basis images");
                }
            }
        }
    }

    static constexpr std::uint64_t pack40_single(std::size_t j, std::uint16_t b) noexcept {
        return static_cast<std::uint64_t>(b) << (kBundleBits * (3 - j));
    }

private:
    BasisImages basis_{};
    std::array<std::array<std::uint64_t, kSBoxSize>, 4> lut_{};
};

inline Column apply_linear(const LinearMapTable& map, const Column& v) { return map.apply(v); }
inline BitMatrix as_binary_matrix(const LinearMapTable& map) { return map.as_binary_matrix(); }

/// Throws unless inner then outer is the identity on all 40 basis vectors.
inline void verify_inverse_pair(const LinearMapTable& outer, const LinearMapTable& inner,
                                std::string_view label) {
    for (std::size_t j = 0; j < 4; ++j) {
        for (unsigned t = 0; t < kBundleBits; ++t) {
            const std::uint64_t e = LinearMapTable::pack40_single(j, static_cast<std::uint16_t>(1u << t));
            if (outer.apply_packed(inner.apply_packed(e)) != e) {
                throw IntegrityError(std::string(label) + " is not the identity on basis vector " +
                                     std::to_string(10 * j + t));
            }
        }
    }
}

namespace detail {

/// Parses a whitespace-separated asset of 3-digit uppercase hex bundles with a fixed
/// number of tokens per line.
inline std::vector<std::uint16_t> parse_table_asset(std::string_view text, std::size_t lines,
                                                    std::size_t per_line, std::string_view name) {
    std::vector<std::uint16_t> out;
    out.reserve(lines * per_line);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n_lines = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::size_t count = 0;
        while (ls >> tok) {
            for (char c : tok) {
                if (!((c >= '0' && c <= '9') || (c >= 'A' && c <= 'F'))) {
                    throw IntegrityError(std::string(name) + ": non-canonical token '" + tok + "'");
                }
            }
            try {
                out.push_back(bundle_from_hex(tok).value());
            } catch (const ParseError& e) {
                throw IntegrityError(std::string(name) + ": " + e.what());
            }
            ++count;
        }
        if (count != per_line) {
            throw IntegrityError(std::string(name) + ": line " + std::to_string(n_lines + 1) +
                                 " has " + std::to_string(count) + " entries, expected " +
                                 std::to_string(per_line));
        }
        ++n_lines;
    }
    if (n_lines != lines) {
        throw IntegrityError(std::string(name) + ": " + std::to_string(n_lines) +
                             " lines, expected " + std::to_string(lines));
    }
    return out;
}

}  // namespace detail

inline SBoxTable parse_sbox_asset(std::string_view text, std::string_view name) {
    const auto v = detail::parse_table_asset(text, 64, 16, name);
    SBoxTable::Table t;
    std::copy(v.begin(), v.end(), t.begin());
    return SBoxTable::from_forward(t, name);
}

inline LinearMapTable parse_linear_asset(std::string_view text, std::string_view name) {
    const auto v = detail::parse_table_asset(text, 40, 4, name);
    LinearMapTable::BasisImages images;
    for (std::size_t i = 0; i < kColumnBits; ++i)
        for (std::size_t j = 0; j < 4; ++j) images[i].bundles[j] = Bundle(v[4 * i + j]);
    return LinearMapTable::from_basis_images(images);
}

struct Tables {
    std::array<SBoxTable, 4> sbox;
    LinearMapTable m;
    LinearMapTable m_inv;
};

/// Parses and verifies the embedded constants. Throws IntegrityError on any violation.
inline Tables build_tables() {
    Tables t{{parse_sbox_asset(assets::kSBox0, "S0"), parse_sbox_asset(assets::kSBox1, "S1"),
              parse_sbox_asset(assets::kSBox2, "S2"), parse_sbox_asset(assets::kSBox3, "S3")},
             parse_linear_asset(assets::kM, "M"),
             parse_linear_asset(assets::kMInv, "M^-1")};
    verify_inverse_pair(t.m_inv, t.m, "M^-1 o M");
    verify_inverse_pair(t.m, t.m_inv, "M o M^-1");
    return t;
}

/// Verified tables, built once per process.
inline const Tables& load_tables() {
    static const Tables tables = build_tables();
    return tables;
}

}  // namespace bea1
