#pragma once

// Command-line front end. run() is the whole program; main() only forwards to it
// so the tests can drive every subcommand in-process.
//
// Exit codes: 0 success or every claim holds, 1 usage error, 2 file format or
// I/O error, 3 claim or verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bea1/bea1.hpp"

namespace bea1::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kFormat = 2, kClaimFailed = 3 };

inline constexpr const char* kWarning =
    "WARNING: BEA-1 contains a deliberate backdoor. Use it for research only; never protect real data with it.";

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failed: " + path);
}

inline Block random_iv() {
    std::random_device rd;
    PackedBlock b;
    for (auto& byte : b) byte = static_cast<std::uint8_t>(rd());
    return unpack_block(b);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    err << kWarning << '\n';

    CLI::App app{"BEA-1 reference cipher and cryptanalysis workbench"};
    app.require_subcommand(1);

    std::string key_hex, in_path, out_path, iv_hex;

    auto* enc = app.add_subcommand("encrypt", "CTR-encrypt a file into the BEA1 container");
    enc->add_option("--key", key_hex, "master key, 30 hex digits")->required();
    enc->add_option("--in", in_path, "input file")->required();
    enc->add_option("--out", out_path, "output file")->required();
    enc->add_option("--iv", iv_hex, "IV, 20 hex digits (default: from the OS entropy source)");

    auto* dec = app.add_subcommand("decrypt", "decrypt a BEA1 container");
    dec->add_option("--key", key_hex, "master key, 30 hex digits")->required();
    dec->add_option("--in", in_path, "input file")->required();
    dec->add_option("--out", out_path, "output file")->required();

    auto* xk = app.add_subcommand("expand-key", "print the twelve round keys");
    xk->add_option("--key", key_hex, "master key, 30 hex digits")->required();

    auto* kat = app.add_subcommand("kat", "generate or verify known-answer test files");
    kat->require_subcommand(1);
    std::size_t kat_count = 100;
    std::uint64_t kat_seed = 0;
    std::string kat_path;
    auto* kgen = kat->add_subcommand("generate", "write seeded KAT records");
    kgen->add_option("path", kat_path, "output KAT file")->required();
    kgen->add_option("--count", kat_count, "number of records")->check(CLI::PositiveNumber);
    kgen->add_option("--seed", kat_seed, "mt19937_64 seed");
    auto* kver = kat->add_subcommand("verify", "recompute every record");
    kver->add_option("path", kat_path, "KAT file")->required();

    auto* ana = app.add_subcommand("analyze", "check the published security claims");
    ana->require_subcommand(1);
    std::vector<int> sbox_indices;
    std::string csv_ddt, csv_lat;
    auto* a_sbox = ana->add_subcommand("sbox", "DDT and LAT of the S-boxes");
    a_sbox->add_option("--index", sbox_indices, "S-box index 0..3 (repeatable; default all)")
        ->check(CLI::Range(0, 3));
    a_sbox->add_option("--csv-ddt", csv_ddt, "write the DDT of the (single) selected S-box as CSV");
    a_sbox->add_option("--csv-lat", csv_lat, "write the LAT of the (single) selected S-box as CSV");
    bool full_scan = false;
    auto* a_mat = ana->add_subcommand("matrix", "branch numbers of M");
    a_mat->add_flag("--full", full_scan,
                    "also run the long exhaustive scan over all inputs of bundle weight <= 3 (~4.3e9 evaluations)");
    int rounds = 10, branch = report::kClaimedBranchNumber;
    int du = report::kClaimedDifferentialUniformity, lu = report::kClaimedLinearUniformity;
    bool measured = false;
    auto* a_bounds = ana->add_subcommand("bounds", "trail probability and bias bounds");
    a_bounds->add_option("--rounds", rounds, "number of rounds")->check(CLI::PositiveNumber);
    a_bounds->add_option("--branch", branch, "branch number")->check(CLI::Range(2, 5));
    a_bounds->add_option("--du", du, "differential uniformity")->check(CLI::Range(1, 1024));
    a_bounds->add_option("--lu", lu, "linear uniformity (bias count)")->check(CLI::Range(1, 512));
    a_bounds->add_flag("--measured", measured, "use the measured S-box uniformities and branch number");

    auto* rt = app.add_subcommand("randtest", "statistical test battery on CTR keystream");
    std::size_t sequences = 50, bits = 100000;
    std::string stub;
    double alpha = randtest::kDefaultAlpha;
    bool quiet = false;
    rt->add_option("--key", key_hex, "master key, 30 hex digits");
    rt->add_option("--sequences", sequences, "number of sequences")->check(CLI::PositiveNumber);
    rt->add_option("--bits", bits, "bits per sequence")->check(CLI::Range(std::size_t{128}, std::size_t{1} << 32));
    rt->add_option("--alpha", alpha, "significance level")->check(CLI::Range(0.0, 1.0));
    rt->add_option("--stub", stub, "negative control instead of the cipher")
        ->check(CLI::IsMember({"constant", "alternating"}));
    rt->add_flag("--quiet", quiet, "print only the summary block");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*enc) {
            const MasterKey key = key_from_hex(key_hex);
            const Block iv = iv_hex.empty() ? random_iv() : block_from_hex(iv_hex);
            write_file(out_path, encrypt_file_bytes(key, iv, read_file(in_path)));
            return kOk;
        }
        if (*dec) {
            const MasterKey key = key_from_hex(key_hex);
            write_file(out_path, decrypt_file_bytes(key, read_file(in_path)));
            return kOk;
        }
        if (*xk) {
            const KeySchedule ks(key_from_hex(key_hex));
            for (const auto& rk : ks.round_keys()) out << to_hex(rk) << '\n';
            return kOk;
        }
        if (*kgen) {
            std::ostringstream os;
            write_kat(os, generate_kat(kat_count, kat_seed),
                      "BEA-1 KAT, generator mt19937_64 seed=" + std::to_string(kat_seed) +
                          " count=" + std::to_string(kat_count));
            const std::string s = os.str();
            write_file(kat_path, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
            out << "wrote " << kat_count << " records to " << kat_path << '\n';
            return kOk;
        }
        if (*kver) {
            const auto bytes = read_file(kat_path);
            std::vector<KatRecord> records;
            try {
                records = parse_kat(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
            } catch (const ParseError& e) {
                err << "format error: " << e.what() << '\n';
                return kFormat;
            }
            if (const auto bad = verify_kat(records)) {
                out << "MISMATCH at record " << *bad << " (KEY=" << to_hex(records[*bad].key) << ")\n";
                return kClaimFailed;
            }
            out << "OK " << records.size() << " records verified\n";
            return kOk;
        }
        if (*a_sbox) {
            std::vector<int> idx = sbox_indices.empty() ? std::vector<int>{0, 1, 2, 3} : sbox_indices;
            const auto& t = load_tables();
            if (!csv_ddt.empty() || !csv_lat.empty()) {
                if (idx.size() != 1) {
                    err << "usage error: CSV export needs exactly one --index\n";
                    return kUsage;
                }
                const auto& s = t.sbox[static_cast<std::size_t>(idx.front())];
                if (!csv_ddt.empty()) {
                    std::ofstream f(csv_ddt);
                    if (!f) throw IoError("cannot write " + csv_ddt);
                    analysis::write_csv(f, analysis::compute_ddt(s));
                }
                if (!csv_lat.empty()) {
                    std::ofstream f(csv_lat);
                    if (!f) throw IoError("cannot write " + csv_lat);
                    analysis::write_csv(f, analysis::compute_lat(s));
                }
            }
            const auto r = report::sbox_report(t, idx);
            r.write(out);
            return r.all_pass() ? kOk : kClaimFailed;
        }
        if (*a_mat) {
            const auto& t = load_tables();
            auto r = report::matrix_report(t);
            if (full_scan) {
                const auto scan = analysis::branch_number_exhaustive(t.m, 3);
                r.details.push_back("M: full scan of " + std::to_string(scan.inputs) +
                                    " inputs of bundle weight <= 3, min total weight " +
                                    std::to_string(scan.min_total_weight));
                r.claims.push_back({"exhaustive weight<=3 scan certifies branch number of M = 5",
                                    "lower bound=" + std::to_string(scan.certified_lower_bound()),
                                    scan.certified_lower_bound() == report::kClaimedBranchNumber});
            }
            r.write(out);
            return r.all_pass() ? kOk : kClaimFailed;
        }
        if (*a_bounds) {
            if (measured) {
                const auto& t = load_tables();
                du = lu = 0;
                for (const auto& s : t.sbox) {
                    du = std::max(du, analysis::compute_ddt(s).max_nontrivial);
                    lu = std::max(lu, analysis::compute_lat(s).max_nontrivial);
                }
                const auto bn = analysis::branch_number_submatrix(t.m.as_binary_matrix());
                branch = std::min(bn.differential, bn.linear);
            }
            const auto r = report::bounds_report(rounds, branch, du, lu);
            r.write(out);
            return r.all_pass() ? kOk : kClaimFailed;
        }
        if (*rt) {
            randtest::BatteryConfig cfg;
            cfg.alpha = alpha;
            randtest::BatteryReport rep;
            if (!stub.empty()) {
                rep = randtest::run_battery(
                    [&](std::size_t) {
                        randtest::BitStream s;
                        s.bits.resize(bits);
                        for (std::size_t i = 0; i < bits; ++i)
                            s.bits[i] = stub == "constant" ? 0 : static_cast<std::uint8_t>(i & 1);
                        s.origin = "stub " + stub;
                        return s;
                    },
                    sequences, cfg);
            } else {
                const MasterKey key = key_hex.empty() ? MasterKey{} : key_from_hex(key_hex);
                rep = randtest::run_battery(key, sequences, bits, cfg);
            }
            if (quiet) {
                std::ostringstream full;
                rep.write(full);
                const std::string s = full.str();
                out << s.substr(s.find("SUMMARY"));
            } else {
                rep.write(out);
            }
            return rep.pass ? kOk : kClaimFailed;
        }
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << '\n';
        return kFormat;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kFormat;
    } catch (const IntegrityError& e) {
        err << "table integrity failure: " << e.what() << '\n';
        return kClaimFailed;
    }
    return kUsage;
}

}  // namespace bea1::cli
