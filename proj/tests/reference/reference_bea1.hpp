#pragma once

// Straight-line transcription of ExpandKey / Encrypt / Decrypt used as a test
// oracle. Shares nothing with the library except the raw embedded asset text:
// its own parser, plain int arrays, and M applied bit by bit from the basis rows.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "bea1/table_assets.hpp"

namespace reference {

using Vec8 = std::array<int, 8>;
using Key12 = std::array<int, 12>;

inline std::vector<int> parse_hex_tokens(std::string_view text) {
    std::vector<int> v;
    std::string s(text);
    const char* p = s.c_str();
    unsigned value = 0;
    int consumed = 0;
    while (std::sscanf(p, "%x%n", &value, &consumed) == 1) {
        v.push_back(static_cast<int>(value));
        p += consumed;
    }
    return v;
}

struct RefTables {
    int s[4][1024];
    int si[4][1024];
    int m[40][4];
    int mi[40][4];

    RefTables() {
        const std::string_view boxes[4] = {bea1::assets::kSBox0, bea1::assets::kSBox1,
                                           bea1::assets::kSBox2, bea1::assets::kSBox3};
        for (int i = 0; i < 4; i++) {
            std::vector<int> v = parse_hex_tokens(boxes[i]);
            if (v.size() != 1024) std::abort();
            for (int x = 0; x < 1024; x++) {
                s[i][x] = v[x];
                si[i][v[x]] = x;
            }
        }
        std::vector<int> a = parse_hex_tokens(bea1::assets::kM);
        std::vector<int> b = parse_hex_tokens(bea1::assets::kMInv);
        if (a.size() != 160 || b.size() != 160) std::abort();
        for (int r = 0; r < 40; r++)
            for (int c = 0; c < 4; c++) {
                m[r][c] = a[4 * r + c];
                mi[r][c] = b[4 * r + c];
            }
    }
};

inline const RefTables& tables() {
    static const RefTables t;
    return t;
}

inline void apply(const int rows[40][4], const int in[4], int out[4]) {
    out[0] = out[1] = out[2] = out[3] = 0;
    for (int j = 0; j < 4; j++)
        for (int t = 0; t < 10; t++)
            if ((in[j] >> t) & 1)
                for (int c = 0; c < 4; c++)
                    out[c] ^= rows[10 * j + t][c];
}

inline std::array<Vec8, 12> expand_key(const Key12& K) {
    const RefTables& T = tables();
    int k[96];
    for (int i = 0; i < 12; i++) k[i] = K[i];
    int pow3 = 1;
    for (int i = 0; i <= 6; i++) {
        int in[4] = {k[12 * i + 8], k[12 * i + 9], k[12 * i + 10], k[12 * i + 11]};
        int x[4];
        apply(T.m, in, x);
        for (int j = 0; j < 4; j++) x[j] = T.s[j][x[j]];
        x[0] ^= pow3 % 1024;
        pow3 *= 3;
        for (int j = 0; j < 4; j++) k[12 * i + 12 + j] = k[12 * i + 0 + j] ^ x[j];
        for (int j = 0; j < 4; j++) k[12 * i + 16 + j] = k[12 * i + 4 + j] ^ k[12 * i + 12 + j];
        for (int j = 0; j < 4; j++) k[12 * i + 20 + j] = k[12 * i + 8 + j] ^ k[12 * i + 16 + j];
    }
    std::array<Vec8, 12> rk;
    for (int r = 0; r < 12; r++)
        for (int i = 0; i < 8; i++) rk[r][i] = k[8 * r + i];
    return rk;
}

inline Vec8 encrypt(const Key12& K, const Vec8& p) {
    const RefTables& T = tables();
    std::array<Vec8, 12> k = expand_key(K);
    Vec8 x = p;
    for (int r = 0; r <= 9; r++) {
        for (int i = 0; i < 8; i++) x[i] ^= k[r][i];
        for (int i = 0; i < 8; i++) x[i] = T.s[i % 4][x[i]];
        x = Vec8{x[0], x[5], x[2], x[7], x[4], x[1], x[6], x[3]};
        int a[4] = {x[0], x[1], x[2], x[3]}, b[4] = {x[4], x[5], x[6], x[7]};
        int ma[4], mb[4];
        apply(T.m, a, ma);
        apply(T.m, b, mb);
        x = Vec8{ma[0], ma[1], ma[2], ma[3], mb[0], mb[1], mb[2], mb[3]};
    }
    for (int i = 0; i < 8; i++) x[i] ^= k[10][i];
    for (int i = 0; i < 8; i++) x[i] = T.s[i % 4][x[i]];
    x = Vec8{x[0], x[5], x[2], x[7], x[4], x[1], x[6], x[3]};
    for (int i = 0; i < 8; i++) x[i] ^= k[11][i];
    return x;
}

inline Vec8 decrypt(const Key12& K, const Vec8& c) {
    const RefTables& T = tables();
    std::array<Vec8, 12> k = expand_key(K);
    Vec8 x = c;
    for (int i = 0; i < 8; i++) x[i] ^= k[11][i];
    x = Vec8{x[0], x[5], x[2], x[7], x[4], x[1], x[6], x[3]};
    for (int i = 0; i < 8; i++) x[i] = T.si[i % 4][x[i]];
    for (int i = 0; i < 8; i++) x[i] ^= k[10][i];
    for (int r = 9; r >= 0; r--) {
        int a[4] = {x[0], x[1], x[2], x[3]}, b[4] = {x[4], x[5], x[6], x[7]};
        int ma[4], mb[4];
        apply(T.mi, a, ma);
        apply(T.mi, b, mb);
        x = Vec8{ma[0], ma[1], ma[2], ma[3], mb[0], mb[1], mb[2], mb[3]};
        x = Vec8{x[0], x[5], x[2], x[7], x[4], x[1], x[6], x[3]};
        for (int i = 0; i < 8; i++) x[i] = T.si[i % 4][x[i]];
        for (int i = 0; i < 8; i++) x[i] ^= k[r][i];
    }
    return x;
}

}  // namespace reference
