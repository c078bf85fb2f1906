#pragma once

// Statistical tests on cipher output: frequency (monobit), block frequency,
// runs and forward cumulative sums, following the NIST SP 800-22 definitions,
// plus a battery runner that applies them to CTR keystream sequences.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "bea1/bundles.hpp"
#include "bea1/cipher.hpp"
#include "bea1/ctr.hpp"

namespace bea1::randtest {

struct BitStream {
    std::vector<std::uint8_t> bits;  // one 0/1 value per element
    std::string origin;

    std::size_t size() const noexcept { return bits.size(); }

    static BitStream from_string(std::string_view s, std::string origin = "literal") {
        BitStream b{{}, std::move(origin)};
        b.bits.reserve(s.size());
        for (char c : s) {
            if (c == '0' || c == '1') b.bits.push_back(static_cast<std::uint8_t>(c - '0'));
            else if (c != ' ' && c != '\n') throw ParseError("bit string may only contain 0 and 1");
        }
        return b;
    }

    void append_bytes(std::span<const std::uint8_t> bytes, std::size_t max_bits) {
        for (std::uint8_t byte : bytes)
            for (int i = 7; i >= 0 && bits.size() < max_bits; --i) bits.push_back((byte >> i) & 1u);
    }
};

inline constexpr double kDefaultAlpha = 0.01;

struct TestResult {
    std::string test_name;
    double p_value = 0;
    bool pass = false;
    /// False when a test's prerequisite fails (runs test); such results never pass.
    bool applicable = true;
};

namespace detail {

inline TestResult make_result(std::string name, double p, double alpha) {
    p = std::clamp(p, 0.0, 1.0);
    return {std::move(name), p, p >= alpha, true};
}

inline void require_length(const BitStream& s, std::size_t min, const char* test) {
    if (s.size() < min) {
        throw std::invalid_argument(std::string(test) + " needs at least " + std::to_string(min) +
                                    " bits, got " + std::to_string(s.size()));
    }
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace detail

/// Regularised upper incomplete gamma Q(a, x).
inline double igamc(double a, double x) { return boost::math::gamma_q(a, x); }

inline TestResult monobit_test(const BitStream& s, double alpha = kDefaultAlpha) {
    detail::require_length(s, 100, "monobit test");
    long long sum = 0;
    for (auto b : s.bits) sum += b ? 1 : -1;
    const double n = static_cast<double>(s.size());
    const double p = std::erfc(std::fabs(static_cast<double>(sum)) / std::sqrt(2.0 * n));
    return detail::make_result("monobit", p, alpha);
}

/// Block frequency; chi-square over floor(n / block_len) blocks.
inline TestResult block_frequency_test(const BitStream& s, std::size_t block_len = 128,
                                       double alpha = kDefaultAlpha) {
    if (block_len == 0) throw std::invalid_argument("block length must be positive");
    detail::require_length(s, block_len, "block frequency test");
    const std::size_t blocks = s.size() / block_len;
    double chi2 = 0;
    for (std::size_t i = 0; i < blocks; ++i) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < block_len; ++j) ones += s.bits[i * block_len + j];
        const double pi = static_cast<double>(ones) / static_cast<double>(block_len) - 0.5;
        chi2 += pi * pi;
    }
    chi2 *= 4.0 * static_cast<double>(block_len);
    const double p = igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0);
    return detail::make_result("block_frequency", p, alpha);
}

inline TestResult runs_test(const BitStream& s, double alpha = kDefaultAlpha) {
    detail::require_length(s, 100, "runs test");
    const double n = static_cast<double>(s.size());
    std::size_t ones = 0;
    for (auto b : s.bits) ones += b;
    const double pi = static_cast<double>(ones) / n;
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n)) {
        return {"runs", 0.0, false, false};
    }
    std::size_t v = 1;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) v += s.bits[k] != s.bits[k + 1];
    const double q = pi * (1.0 - pi);
    const double p = std::erfc(std::fabs(static_cast<double>(v) - 2.0 * n * q) /
                               (2.0 * std::sqrt(2.0 * n) * q));
    return detail::make_result("runs", p, alpha);
}

/// Cumulative sums, forward mode.
inline TestResult cusum_test(const BitStream& s, double alpha = kDefaultAlpha) {
    detail::require_length(s, 100, "cumulative sums test");
    long long partial = 0;
    long long z = 0;
    for (auto b : s.bits) {
        partial += b ? 1 : -1;
        z = std::max(z, std::llabs(partial));
    }
    const double n = static_cast<double>(s.size());
    const double zd = static_cast<double>(z);
    const double root_n = std::sqrt(n);
    double sum1 = 0;
    for (auto k = static_cast<long long>(std::floor((-n / zd + 1) / 4));
         k <= static_cast<long long>(std::floor((n / zd - 1) / 4)); ++k) {
        sum1 += detail::normal_cdf((4.0 * k + 1) * zd / root_n) -
                detail::normal_cdf((4.0 * k - 1) * zd / root_n);
    }
    double sum2 = 0;
    for (auto k = static_cast<long long>(std::floor((-n / zd - 3) / 4));
         k <= static_cast<long long>(std::floor((n / zd - 1) / 4)); ++k) {
        sum2 += detail::normal_cdf((4.0 * k + 3) * zd / root_n) -
                detail::normal_cdf((4.0 * k + 1) * zd / root_n);
    }
    return detail::make_result("cusum_forward", 1.0 - sum1 + sum2, alpha);
}

/// Concatenated packed keystream blocks E_K(iv + i), truncated to n_bits.
inline BitStream generate_stream(const Cipher& cipher, const Block& iv, std::size_t n_bits) {
    if (n_bits == 0) throw std::invalid_argument("n_bits must be >= 1");
    BitStream s;
    s.bits.reserve(n_bits);
    const auto base = pack_block(iv);
    for (std::uint64_t i = 0; s.size() < n_bits; ++i) {
        const auto ks = pack_block(cipher.encrypt(unpack_block(counter_add(base, i))));
        s.append_bytes(ks, n_bits);
    }
    s.origin = "ctr-keystream iv=" + to_hex(iv) + " bits=" + std::to_string(n_bits);
    return s;
}

inline BitStream generate_stream(const MasterKey& key, const Block& iv, std::size_t n_bits) {
    BitStream s = generate_stream(Cipher(key), iv, n_bits);
    s.origin = "key=" + to_hex(key) + " " + s.origin;
    return s;
}

// ---------------------------------------------------------------------------
// Battery

struct BatteryConfig {
    double alpha = kDefaultAlpha;
    std::size_t block_len = 128;
    /// Expected pass proportion for the acceptance interval p +- 3 sqrt(p (1 - p) / n).
    double expected_proportion = 0.99;
};

struct TestSummary {
    std::string test_name;
    std::size_t passed = 0;
    std::size_t total = 0;
    double proportion = 0;
    double interval_low = 0;
    double interval_high = 0;
    bool within_interval = false;
};

struct BatteryReport {
    std::vector<std::vector<TestResult>> sequences;  // [sequence][test]
    std::vector<std::string> origins;
    std::vector<TestSummary> summary;
    bool pass = false;

    void write(std::ostream& os) const;
    friend bool operator==(const BatteryReport& a, const BatteryReport& b);
};

inline std::vector<TestResult> apply_all(const BitStream& s, const BatteryConfig& cfg) {
    return {monobit_test(s, cfg.alpha), block_frequency_test(s, cfg.block_len, cfg.alpha),
            runs_test(s, cfg.alpha), cusum_test(s, cfg.alpha)};
}

using StreamSource = std::function<BitStream(std::size_t sequence_index)>;

inline BatteryReport run_battery(const StreamSource& source, std::size_t n_sequences,
                                 const BatteryConfig& cfg = {}) {
    if (n_sequences < 1) throw std::invalid_argument("n_sequences must be >= 1");
    BatteryReport r;
    for (std::size_t i = 0; i < n_sequences; ++i) {
        const BitStream s = source(i);
        r.origins.push_back(s.origin);
        r.sequences.push_back(apply_all(s, cfg));
    }
    const double n = static_cast<double>(n_sequences);
    const double p = cfg.expected_proportion;
    const double half_width = 3.0 * std::sqrt(p * (1.0 - p) / n);
    r.pass = true;
    for (std::size_t t = 0; t < r.sequences.front().size(); ++t) {
        TestSummary sum;
        sum.test_name = r.sequences.front()[t].test_name;
        sum.total = n_sequences;
        for (const auto& seq : r.sequences) sum.passed += seq[t].pass;
        sum.proportion = static_cast<double>(sum.passed) / n;
        sum.interval_low = p - half_width;
        sum.interval_high = p + half_width;
        sum.within_interval = sum.proportion >= sum.interval_low && sum.proportion <= sum.interval_high;
        r.pass = r.pass && sum.within_interval;
        r.summary.push_back(sum);
    }
    return r;
}

/// Sequence i is the CTR keystream under `key` with IV = i.
inline BatteryReport run_battery(const MasterKey& key, std::size_t n_sequences,
                                 std::size_t bits_per_sequence, const BatteryConfig& cfg = {}) {
    const Cipher cipher(key);
    const std::string key_hex = to_hex(key);
    return run_battery(
        [&](std::size_t i) {
            const Block iv = unpack_block(counter_add(PackedBlock{}, i));
            BitStream s = generate_stream(cipher, iv, bits_per_sequence);
            s.origin = "key=" + key_hex + " " + s.origin;
            return s;
        },
        n_sequences, cfg);
}

inline void BatteryReport::write(std::ostream& os) const {
    char buf[160];
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        for (const auto& t : sequences[i]) {
            std::snprintf(buf, sizeof buf, "seq %4zu  %-16s p=%.6f  %s\n", i, t.test_name.c_str(),
                          t.p_value, !t.applicable ? "N/A" : (t.pass ? "pass" : "fail"));
            os << buf;
        }
    }
    os << "SUMMARY\n";
    for (const auto& s : summary) {
        std::snprintf(buf, sizeof buf, "%-16s %zu/%zu  proportion=%.4f  interval=[%.4f, %.4f]  %s\n",
                      s.test_name.c_str(), s.passed, s.total, s.proportion, s.interval_low,
                      s.interval_high, s.within_interval ? "PASS" : "FAIL");
        os << buf;
    }
    os << "BATTERY " << (pass ? "PASS" : "FAIL") << '\n';
}

inline bool operator==(const TestResult& a, const TestResult& b) {
    return a.test_name == b.test_name && a.p_value == b.p_value && a.pass == b.pass &&
           a.applicable == b.applicable;
}

inline bool operator==(const BatteryReport& a, const BatteryReport& b) {
    if (a.pass != b.pass || a.origins != b.origins || a.sequences != b.sequences) return false;
    if (a.summary.size() != b.summary.size()) return false;
    for (std::size_t i = 0; i < a.summary.size(); ++i) {
        const auto& x = a.summary[i];
        const auto& y = b.summary[i];
        if (x.test_name != y.test_name || x.passed != y.passed || x.proportion != y.proportion) return false;
    }
    return true;
}

}  // namespace bea1::randtest
