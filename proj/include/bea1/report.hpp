#pragma once

// Claim-by-claim analysis reports: one "CLAIM <statement> ... PASS|FAIL" line per
// published security property, preceded by measured detail lines.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "bea1/analysis.hpp"
#include "bea1/tables.hpp"

namespace bea1::report {

inline constexpr int kClaimedDifferentialUniformity = 40;
inline constexpr int kClaimedLinearUniformity = 128;
inline constexpr int kClaimedBranchNumber = 5;
inline constexpr int kClaimedActiveSBoxes = 25;

struct Claim {
    std::string statement;
    std::string measured;
    bool pass = false;
};

struct Report {
    std::vector<std::string> details;
    std::vector<Claim> claims;

    bool all_pass() const {
        for (const auto& c : claims)
            if (!c.pass) return false;
        return true;
    }

    void write(std::ostream& os) const {
        for (const auto& d : details) os << d << '\n';
        for (const auto& c : claims)
            os << "CLAIM " << c.statement << " [" << c.measured << "] " << (c.pass ? "PASS" : "FAIL") << '\n';
    }
};

inline std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

inline void add_sbox(Report& r, const SBoxTable& s, int index) {
    using namespace analysis;
    const std::string name = "S" + std::to_string(index);
    const auto ddt = compute_ddt(s);
    const auto lat = compute_lat(s);

    bool rows_ok = true;
    bool even_ok = true;
    for (std::size_t a = 0; a < kN; ++a) {
        int sum = 0;
        for (std::size_t d = 0; d < kN; ++d) {
            sum += ddt.count(a, d);
            even_ok = even_ok && ddt.count(a, d) % 2 == 0;
        }
        rows_ok = rows_ok && sum == static_cast<int>(kN);
    }
    bool parseval_ok = true;
    for (std::size_t b = 1; b < kN; ++b) {
        long long energy = 0;
        for (std::size_t a = 0; a < kN; ++a) {
            const long long w = lat.walsh_value(a, b);
            energy += w * w;
        }
        parseval_ok = parseval_ok && energy == (1LL << 20);
    }

    r.details.push_back(name + " DDT max nontrivial = " + std::to_string(ddt.max_nontrivial) +
                        " at (a=" + bundle_to_hex(Bundle(ddt.argmax_a)) +
                        ", d=" + bundle_to_hex(Bundle(ddt.argmax_d)) + ")");
    r.details.push_back(name + " LAT max nontrivial bias count = " + std::to_string(lat.max_nontrivial) +
                        " (max |Walsh| = " + std::to_string(lat.max_walsh()) + ") at (a=" +
                        bundle_to_hex(Bundle(lat.argmax_a)) + ", b=" + bundle_to_hex(Bundle(lat.argmax_b)) + ")");
    r.details.push_back(name + " DDT rows sum to 1024: " + (rows_ok ? "yes" : "NO") +
                        "; entries even: " + (even_ok ? "yes" : "NO") +
                        "; LAT Parseval: " + (parseval_ok ? "yes" : "NO"));

    r.claims.push_back({name + " differentially " + std::to_string(kClaimedDifferentialUniformity) + "-uniform",
                        "max=" + std::to_string(ddt.max_nontrivial),
                        ddt.max_nontrivial <= kClaimedDifferentialUniformity && rows_ok && even_ok});
    r.claims.push_back({name + " linearly " + std::to_string(kClaimedLinearUniformity) + "-uniform",
                        "max=" + std::to_string(lat.max_nontrivial),
                        lat.max_nontrivial <= kClaimedLinearUniformity && parseval_ok});
}

inline Report sbox_report(const Tables& t, std::vector<int> indices) {
    Report r;
    for (int i : indices) add_sbox(r, t.sbox.at(static_cast<std::size_t>(i)), i);
    return r;
}

inline Report matrix_report(const Tables& t) {
    using namespace analysis;
    Report r;
    for (int which = 0; which < 2; ++which) {
        const LinearMapTable& map = which == 0 ? t.m : t.m_inv;
        const LinearMapTable& inv = which == 0 ? t.m_inv : t.m;
        const std::string name = which == 0 ? "M" : "M^-1";
        const BitMatrix mat = map.as_binary_matrix();
        const auto diff_scan = scan_block_submatrices(mat);
        const auto lin_scan = scan_block_submatrices(mat.transpose());
        const auto bn = branch_number_submatrix(mat);
        const auto ex = branch_number_exhaustive(map, 2);
        const int bidir = branch_number_bidirectional(map, inv);

        r.details.push_back(name + ": " + std::to_string(diff_scan.checked) + " block submatrices, " +
                            std::to_string(diff_scan.singular) + " singular; transpose: " +
                            std::to_string(lin_scan.checked) + " checked, " +
                            std::to_string(lin_scan.singular) + " singular");
        r.details.push_back(name + ": exhaustive scan of " + std::to_string(ex.inputs) +
                            " inputs of bundle weight <= 2: min output weight w1=" +
                            std::to_string(ex.min_output_weight[1]) +
                            " w2=" + std::to_string(ex.min_output_weight[2]) +
                            "; bidirectional branch = " + std::to_string(bidir));
        if (which == 0) {
            r.claims.push_back({"differential branch number of M = 5",
                                "measured=" + std::to_string(bn.differential) + " method=" + to_string(bn.method),
                                bn.differential == kClaimedBranchNumber});
            r.claims.push_back({"linear branch number of M = 5",
                                "measured=" + std::to_string(bn.linear) + " method=" + to_string(bn.method),
                                bn.linear == kClaimedBranchNumber});
            r.claims.push_back({"exhaustive weight<=2 scan of M agrees (branch 5)",
                                "w1->" + std::to_string(ex.min_output_weight[1]) + " w2->" +
                                    std::to_string(ex.min_output_weight[2]) + " bidirectional=" +
                                    std::to_string(bidir),
                                ex.min_output_weight[1] == 4 && ex.min_output_weight[2] >= 3 &&
                                    bidir == kClaimedBranchNumber});
        } else {
            r.details.push_back("M^-1 branch numbers: differential " + std::to_string(bn.differential) +
                                ", linear " + std::to_string(bn.linear));
        }
    }
    return r;
}

/// Counting bounds for `rounds` rounds with the given uniformities.
inline Report bounds_report(int rounds, int branch, int du, int lu) {
    using namespace analysis;
    Report r;
    const TrailBound tb = trail_bounds_for_rounds(rounds, branch, du, lu);
    r.details.push_back("rounds=" + std::to_string(rounds) + " branch=" + std::to_string(branch) +
                        " du=" + std::to_string(du) + " lu=" + std::to_string(lu));
    r.details.push_back("active S-boxes >= " + std::to_string(tb.active_sboxes));
    r.details.push_back("log2 differential trail probability <= " + fmt("%.4f", tb.log2_prob_bound));
    r.details.push_back("log2 linear trail bias <= " + fmt("%.4f", tb.log2_bias_bound));
    r.details.push_back("differential attack data >= 2^" + fmt("%.2f", tb.log2_chosen_pairs) +
                        " chosen pairs; linear attack data >= 2^" + fmt("%.2f", tb.log2_known_pairs) +
                        " known pairs");
    if (rounds == 10 && branch == kClaimedBranchNumber && du == kClaimedDifferentialUniformity &&
        lu == kClaimedLinearUniformity) {
        r.claims.push_back({"10-round trails have >= 25 active S-boxes",
                            "measured=" + std::to_string(tb.active_sboxes),
                            tb.active_sboxes == kClaimedActiveSBoxes});
        r.claims.push_back({"differential trail probability <= 2^-116.9",
                            "log2=" + fmt("%.4f", tb.log2_prob_bound),
                            tb.log2_prob_bound >= -117.0 && tb.log2_prob_bound <= -116.9});
        r.claims.push_back({"linear trail bias <= 2^-50", "log2=" + fmt("%.4f", tb.log2_bias_bound),
                            tb.log2_bias_bound == -50.0});
        r.claims.push_back({"linear attack needs 2^100 known pairs", "log2=" + fmt("%.2f", tb.log2_known_pairs),
                            tb.log2_known_pairs == 100.0});
        r.claims.push_back({"differential attack needs about 2^117 chosen pairs",
                            "log2=" + fmt("%.2f", tb.log2_chosen_pairs),
                            std::round(tb.log2_chosen_pairs) == 117.0});
    }
    return r;
}

}  // namespace bea1::report
