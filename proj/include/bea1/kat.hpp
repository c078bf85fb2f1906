#pragma once

// Known-answer test files.
//
// Plain text; records separated by blank lines; each record has KEY=, PT= and
// CT= lines in uppercase hex (30, 20 and 20 digits). Lines starting with '#'
// are comments.
//
// generate_kat() is fixed across versions: std::mt19937_64 seeded with `seed`;
// for each record draw 12 key bundles then 8 plaintext bundles, each bundle
// being the top 10 bits of one 64-bit output.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bea1/bundles.hpp"
#include "bea1/cipher.hpp"

namespace bea1 {

struct KatRecord {
    MasterKey key;
    Block pt;
    Block ct;

    friend bool operator==(const KatRecord&, const KatRecord&) = default;
};

inline std::vector<KatRecord> generate_kat(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto next_bundle = [&] { return Bundle(static_cast<unsigned>(gen() >> 54)); };
    std::vector<KatRecord> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        KatRecord r;
        for (auto& b : r.key.bundles) b = next_bundle();
        for (auto& b : r.pt.bundles) b = next_bundle();
        r.ct = Cipher(r.key).encrypt(r.pt);
        out.push_back(r);
    }
    return out;
}

inline void write_kat(std::ostream& os, const std::vector<KatRecord>& records,
                      std::string_view comment = {}) {
    if (!comment.empty()) os << "# " << comment << "\n\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i) os << '\n';
        os << "KEY=" << to_hex(records[i].key) << '\n'
           << "PT=" << to_hex(records[i].pt) << '\n'
           << "CT=" << to_hex(records[i].ct) << '\n';
    }
}

/// Parses a KAT file. Throws ParseError naming the offending line.
inline std::vector<KatRecord> parse_kat(std::istream& in) {
    std::vector<KatRecord> out;
    std::optional<MasterKey> key;
    std::optional<Block> pt, ct;
    std::size_t line_no = 0;
    auto flush = [&] {
        if (!key && !pt && !ct) return;
        if (!key || !pt || !ct) {
            throw ParseError("KAT record ending at line " + std::to_string(line_no) +
                             " is missing KEY, PT or CT");
        }
        out.push_back({*key, *pt, *ct});
        key.reset();
        pt.reset();
        ct.reset();
    };
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush();
            continue;
        }
        if (line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("KAT line " + std::to_string(line_no) + ": missing '='");
        const std::string field = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        try {
            if (field == "KEY") key = key_from_hex(value);
            else if (field == "PT") pt = block_from_hex(value);
            else if (field == "CT") ct = block_from_hex(value);
            else throw ParseError("unknown field '" + field + "'");
        } catch (const ParseError& e) {
            throw ParseError("KAT line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    flush();
    return out;
}

inline std::vector<KatRecord> parse_kat(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_kat(in);
}

/// Index of the first record whose ciphertext or decryption does not match.
inline std::optional<std::size_t> verify_kat(const std::vector<KatRecord>& records) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Cipher c(records[i].key);
        if (c.encrypt(records[i].pt) != records[i].ct || c.decrypt(records[i].ct) != records[i].pt) {
            return i;
        }
    }
    return std::nullopt;
}

}  // namespace bea1
