#pragma once

// Differential/linear metrics: DDT and LAT of 10-bit S-boxes, branch numbers
// of 4-bundle linear layers, and the counting bounds on trail probability and
// bias that follow from them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bea1/bit_matrix.hpp"
#include "bea1/tables.hpp"

namespace bea1::analysis {

inline constexpr std::size_t kN = kSBoxSize;
inline constexpr int kBundles = 4;

// ---------------------------------------------------------------------------
// DDT

struct DifferenceDistributionTable {
    std::vector<std::uint16_t> counts;  // row-major, counts[a * 1024 + d]
    int max_nontrivial = 0;
    std::uint16_t argmax_a = 0;
    std::uint16_t argmax_d = 0;

    int count(std::size_t a, std::size_t d) const { return counts[a * kN + d]; }
};

inline DifferenceDistributionTable compute_ddt(const SBoxTable& s) {
    DifferenceDistributionTable t;
    t.counts.assign(kN * kN, 0);
    const auto& f = s.forward();
    for (std::size_t a = 0; a < kN; ++a) {
        std::uint16_t* row = t.counts.data() + a * kN;
        for (std::size_t x = 0; x < kN; ++x) ++row[f[x ^ a] ^ f[x]];
        if (a == 0) continue;
        for (std::size_t d = 0; d < kN; ++d) {
            if (row[d] > t.max_nontrivial) {
                t.max_nontrivial = row[d];
                t.argmax_a = static_cast<std::uint16_t>(a);
                t.argmax_d = static_cast<std::uint16_t>(d);
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// LAT

/// In-place Walsh-Hadamard transform; size must be a power of two.
inline void walsh_hadamard(std::span<std::int32_t> v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const std::int32_t a = v[j];
                const std::int32_t b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

inline int parity(unsigned v) noexcept { return std::popcount(v) & 1; }

/// W(a, b) = sum_x (-1)^(a.x xor b.S(x)); bias count |#{a.x = b.S(x)} - 512| = |W| / 2.
struct LinearApproximationTable {
    std::vector<std::int16_t> walsh;  // row-major, walsh[a * 1024 + b]
    int max_nontrivial = 0;           // bias-count normalisation, over b != 0
    std::uint16_t argmax_a = 0;
    std::uint16_t argmax_b = 0;

    int walsh_value(std::size_t a, std::size_t b) const { return walsh[a * kN + b]; }
    int bias_count(std::size_t a, std::size_t b) const { return std::abs(walsh[a * kN + b]) / 2; }
    int max_walsh() const { return 2 * max_nontrivial; }
};

inline LinearApproximationTable compute_lat(const SBoxTable& s) {
    LinearApproximationTable t;
    t.walsh.assign(kN * kN, 0);
    const auto& f = s.forward();
    std::vector<std::int32_t> col(kN);
    for (std::size_t b = 0; b < kN; ++b) {
        for (std::size_t x = 0; x < kN; ++x) col[x] = parity(static_cast<unsigned>(b & f[x])) ? -1 : 1;
        walsh_hadamard(col);
        for (std::size_t a = 0; a < kN; ++a) {
            t.walsh[a * kN + b] = static_cast<std::int16_t>(col[a]);
            const int bias = std::abs(col[a]) / 2;
            if (b != 0 && bias > t.max_nontrivial) {
                t.max_nontrivial = bias;
                t.argmax_a = static_cast<std::uint16_t>(a);
                t.argmax_b = static_cast<std::uint16_t>(b);
            }
        }
    }
    return t;
}

/// Writes "a,b,count" rows for every nonzero cell.
inline void write_csv(std::ostream& os, const DifferenceDistributionTable& t) {
    os << "a,b,count\n";
    for (std::size_t a = 0; a < kN; ++a)
        for (std::size_t d = 0; d < kN; ++d)
            if (const int c = t.count(a, d)) os << a << ',' << d << ',' << c << '\n';
}

inline void write_csv(std::ostream& os, const LinearApproximationTable& t) {
    os << "a,b,count\n";
    for (std::size_t a = 0; a < kN; ++a)
        for (std::size_t b = 0; b < kN; ++b)
            if (const int c = t.bias_count(a, b)) os << a << ',' << b << ',' << c << '\n';
}

// ---------------------------------------------------------------------------
// Branch numbers

enum class BranchMethod { submatrix_rank, exhaustive_low_weight };

inline const char* to_string(BranchMethod m) {
    return m == BranchMethod::submatrix_rank ? "submatrix_rank" : "exhaustive_low_weight";
}

struct BranchNumberReport {
    int differential = 0;
    int linear = 0;
    BranchMethod method = BranchMethod::submatrix_rank;
};

/// Result of scanning every nonzero input of bundle weight <= max_weight.
struct ExhaustiveScan {
    int max_weight = 0;
    std::uint64_t inputs = 0;
    int min_total_weight = 2 * kBundles + 1;
    /// min_output_weight[w] is the least output weight seen over inputs of weight w.
    std::array<int, kBundles + 1> min_output_weight{};

    /// Lower bound on the branch number implied by this scan alone, for an invertible map.
    int certified_lower_bound() const {
        // Any input of weight > max_weight totals at least max_weight + 2.
        return std::min(min_total_weight, max_weight + 2);
    }
};

namespace detail {

template <class Visit>
void for_each_weight(const LinearMapTable& map, int positions_mask, int pos, std::uint64_t acc,
                     Visit& visit) {
    while (pos < kBundles && !((positions_mask >> pos) & 1)) ++pos;
    if (pos == kBundles) {
        visit(acc);
        return;
    }
    for (std::uint16_t b = 1; b < kN; ++b)
        for_each_weight(map, positions_mask, pos + 1, acc ^ map.lone_bundle_image(pos, b), visit);
}

}  // namespace detail

/// Scans all nonzero inputs of bundle weight 1..max_weight (max_weight in 1..4).
/// Weight 4 is about 1.1e12 evaluations and weight 3 about 4.3e9; both are long-running.
inline ExhaustiveScan branch_number_exhaustive(const LinearMapTable& map, int max_weight) {
    if (max_weight < 1 || max_weight > kBundles) {
        throw std::invalid_argument("max_weight must be in 1..4");
    }
    ExhaustiveScan scan;
    scan.max_weight = max_weight;
    scan.min_output_weight.fill(kBundles + 1);
    for (int mask = 1; mask < (1 << kBundles); ++mask) {
        const int w = std::popcount(static_cast<unsigned>(mask));
        if (w > max_weight) continue;
        int& best = scan.min_output_weight[w];
        std::uint64_t count = 0;
        auto visit = [&](std::uint64_t y) {
            ++count;
            best = std::min(best, bundle_weight40(y));
        };
        detail::for_each_weight(map, mask, 0, 0, visit);
        scan.inputs += count;
    }
    for (int w = 1; w <= max_weight; ++w)
        scan.min_total_weight = std::min(scan.min_total_weight, w + scan.min_output_weight[w]);
    return scan;
}

/// Exact branch number of an invertible map from weight <= 2 scans of the map and its
/// inverse: any witness with wt(x) + wt(Mx) <= 4 has wt(x) <= 2 or wt(Mx) <= 2.
inline int branch_number_bidirectional(const LinearMapTable& map, const LinearMapTable& inverse) {
    const ExhaustiveScan fwd = branch_number_exhaustive(map, 2);
    const ExhaustiveScan bwd = branch_number_exhaustive(inverse, 2);
    return std::min({fwd.min_total_weight, bwd.min_total_weight, kBundles + 1});
}

struct SubmatrixScan {
    std::size_t checked = 0;
    std::size_t singular = 0;
};

/// Rank-tests every t x t block submatrix (t = 1..4) of a 40x40 matrix split into
/// four 10-bit groups: 16 + 36 + 16 + 1 = 69 submatrices.
inline SubmatrixScan scan_block_submatrices(const BitMatrix& m) {
    if (m.rows() != kColumnBits || m.cols() != kColumnBits) {
        throw std::invalid_argument("expected a 40x40 matrix");
    }
    SubmatrixScan scan;
    for (int rows = 1; rows < (1 << kBundles); ++rows) {
        for (int cols = 1; cols < (1 << kBundles); ++cols) {
            if (std::popcount(static_cast<unsigned>(rows)) != std::popcount(static_cast<unsigned>(cols)))
                continue;
            std::vector<std::size_t> rb, cb;
            for (int i = 0; i < kBundles; ++i) {
                if ((rows >> i) & 1) rb.push_back(static_cast<std::size_t>(i));
                if ((cols >> i) & 1) cb.push_back(static_cast<std::size_t>(i));
            }
            const BitMatrix sub = m.block_submatrix(rb, cb, kBundleBits);
            ++scan.checked;
            if (sub.rank() < sub.rows()) ++scan.singular;
        }
    }
    return scan;
}

namespace detail {

inline int branch_of_matrix(const BitMatrix& m, bool& used_fallback) {
    if (scan_block_submatrices(m).singular == 0) return kBundles + 1;
    used_fallback = true;
    const auto inv = m.inverse();
    if (!inv) throw std::invalid_argument("branch number requires an invertible matrix");
    return branch_number_bidirectional(LinearMapTable::from_matrix(m),
                                       LinearMapTable::from_matrix(*inv));
}

}  // namespace detail

/// Differential branch number from the matrix, linear from its transpose. When a
/// submatrix is singular the exact value comes from the bidirectional weight <= 2 scan.
inline BranchNumberReport branch_number_submatrix(const BitMatrix& m) {
    bool fallback = false;
    BranchNumberReport r;
    r.differential = detail::branch_of_matrix(m, fallback);
    r.linear = detail::branch_of_matrix(m.transpose(), fallback);
    r.method = fallback ? BranchMethod::exhaustive_low_weight : BranchMethod::submatrix_rank;
    return r;
}

// ---------------------------------------------------------------------------
// Bounds

/// Two-round column bound: floor(rounds / 2) * branch, ignoring ShiftRows diffusion.
inline int min_active_sboxes(int rounds, int branch) {
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (branch < 2) throw std::invalid_argument("branch number must be >= 2");
    return (rounds / 2) * branch;
}

struct TrailBound {
    int rounds = 0;
    int active_sboxes = 0;
    double log2_prob_bound = 0;
    double log2_bias_bound = 0;
    /// Data needed for an attack: 2^(-log2_prob_bound) chosen, 2^(-2 log2_bias_bound) known pairs.
    double log2_chosen_pairs = 0;
    double log2_known_pairs = 0;
};

inline TrailBound trail_bounds(int active, int differential_uniformity, int linear_uniformity) {
    if (active < 0) throw std::invalid_argument("active S-box count must be >= 0");
    if (differential_uniformity <= 0 || differential_uniformity > static_cast<int>(kN)) {
        throw std::invalid_argument("differential uniformity must be in 1..1024");
    }
    if (linear_uniformity <= 0 || linear_uniformity > static_cast<int>(kN / 2)) {
        throw std::invalid_argument("linear uniformity must be in 1..512");
    }
    TrailBound t;
    t.active_sboxes = active;
    t.log2_prob_bound = active * std::log2(differential_uniformity / static_cast<double>(kN));
    t.log2_bias_bound = active * std::log2(linear_uniformity / static_cast<double>(kN / 2));
    t.log2_chosen_pairs = -t.log2_prob_bound + 0.0;
    t.log2_known_pairs = -2 * t.log2_bias_bound + 0.0;
    return t;
}

inline TrailBound trail_bounds_for_rounds(int rounds, int branch, int du, int lu) {
    TrailBound t = trail_bounds(min_active_sboxes(rounds, branch), du, lu);
    t.rounds = rounds;
    return t;
}

}  // namespace bea1::analysis
