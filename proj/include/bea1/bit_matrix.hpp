#pragma once

// Dense GF(2) matrices with at most 64 columns.
//
// Column c of a row is stored at integer bit (cols - 1 - c), so a row reads
// MSB-first like the packed bundle strings, and a packed 40-bit vector can be
// multiplied directly: bit (rows - 1 - r) of the result is row r's parity.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bea1 {

class BitMatrix {
public:
    static constexpr std::size_t kMaxCols = 64;

    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, 0) {
        if (cols > kMaxCols) throw std::invalid_argument("BitMatrix supports at most 64 columns");
    }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return (rows_[r] >> shift(c)) & 1u; }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t bit = std::uint64_t{1} << shift(c);
        rows_[r] = v ? (rows_[r] | bit) : (rows_[r] & ~bit);
    }

    std::uint64_t row_bits(std::size_t r) const { return rows_[r]; }
    void set_row_bits(std::size_t r, std::uint64_t bits) { rows_[r] = bits & col_mask(); }

    /// Product with a column vector given MSB-first (column 0 at the top bit).
    std::uint64_t multiply(std::uint64_t x) const noexcept {
        std::uint64_t y = 0;
        const std::size_t n = rows_.size();
        for (std::size_t r = 0; r < n; ++r) {
            y |= static_cast<std::uint64_t>(std::popcount(rows_[r] & x) & 1) << (n - 1 - r);
        }
        return y;
    }

    BitMatrix operator*(const BitMatrix& rhs) const {
        if (cols_ != rhs.rows()) throw std::invalid_argument("BitMatrix dimension mismatch");
        BitMatrix out(rows(), rhs.cols());
        for (std::size_t r = 0; r < rows(); ++r) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) {
                if (get(r, k)) acc ^= rhs.rows_[k];
            }
            out.rows_[r] = acc;
        }
        return out;
    }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows());
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r, true);
        return t;
    }

    /// Rows from row_blocks and columns from col_blocks, each block being block_size wide.
    BitMatrix block_submatrix(std::span<const std::size_t> row_blocks,
                              std::span<const std::size_t> col_blocks,
                              std::size_t block_size) const {
        BitMatrix sub(row_blocks.size() * block_size, col_blocks.size() * block_size);
        std::size_t sr = 0;
        for (std::size_t rb : row_blocks) {
            for (std::size_t i = 0; i < block_size; ++i, ++sr) {
                const std::size_t r = rb * block_size + i;
                std::size_t sc = 0;
                for (std::size_t cb : col_blocks)
                    for (std::size_t j = 0; j < block_size; ++j, ++sc)
                        if (get(r, cb * block_size + j)) sub.set(sr, sc, true);
            }
        }
        return sub;
    }

    /// Rank by Gaussian elimination.
    std::size_t rank() const {
        std::vector<std::uint64_t> m = rows_;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols_ && rank < m.size(); ++c) {
            const std::uint64_t bit = std::uint64_t{1} << shift(c);
            std::size_t pivot = rank;
            while (pivot < m.size() && !(m[pivot] & bit)) ++pivot;
            if (pivot == m.size()) continue;
            std::swap(m[rank], m[pivot]);
            for (std::size_t r = 0; r < m.size(); ++r)
                if (r != rank && (m[r] & bit)) m[r] ^= m[rank];
            ++rank;
        }
        return rank;
    }

    bool is_invertible() const { return rows() == cols_ && rank() == cols_; }

    /// Gauss-Jordan inverse; nullopt when singular.
    std::optional<BitMatrix> inverse() const {
        if (rows() != cols_) return std::nullopt;
        const std::size_t n = cols_;
        std::vector<std::uint64_t> a = rows_;
        std::vector<std::uint64_t> inv = identity(n).rows_;
        for (std::size_t c = 0; c < n; ++c) {
            const std::uint64_t bit = std::uint64_t{1} << shift(c);
            std::size_t pivot = c;
            while (pivot < n && !(a[pivot] & bit)) ++pivot;
            if (pivot == n) return std::nullopt;
            std::swap(a[c], a[pivot]);
            std::swap(inv[c], inv[pivot]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r != c && (a[r] & bit)) {
                    a[r] ^= a[c];
                    inv[r] ^= inv[c];
                }
            }
        }
        BitMatrix out(n, n);
        out.rows_ = std::move(inv);
        return out;
    }

    bool is_identity() const { return *this == identity(rows()) && rows() == cols_; }

    bool has_zero_column() const {
        std::uint64_t any = 0;
        for (std::uint64_t r : rows_) any |= r;
        return any != col_mask();
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

    std::string to_string() const {
        std::string s;
        for (std::size_t r = 0; r < rows(); ++r) {
            for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
            s.push_back('\n');
        }
        return s;
    }

private:
    std::size_t shift(std::size_t c) const { return cols_ - 1 - c; }
    std::uint64_t col_mask() const {
        return cols_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << cols_) - 1);
    }

    std::size_t cols_ = 0;
    std::vector<std::uint64_t> rows_;
};

}  // namespace bea1
