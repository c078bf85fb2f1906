#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <sstream>
#include <thread>

#include "bea1/cipher.hpp"
#include "reference/reference_bea1.hpp"
#include "test_util.hpp"

using namespace bea1;

namespace {

reference::Key12 to_ref(const MasterKey& k) {
    reference::Key12 r{};
    for (std::size_t i = 0; i < 12; ++i) r[i] = k[i].value();
    return r;
}
reference::Vec8 to_ref(const Block& b) {
    reference::Vec8 r{};
    for (std::size_t i = 0; i < 8; ++i) r[i] = b[i].value();
    return r;
}
Block from_ref(const reference::Vec8& v) {
    Block b;
    for (std::size_t i = 0; i < 8; ++i) b[i] = Bundle(static_cast<unsigned>(v[i]));
    return b;
}

int bit_distance(const Block& a, const Block& b) {
    int d = 0;
    for (std::size_t i = 0; i < 8; ++i) d += std::popcount(static_cast<unsigned>(a[i].value() ^ b[i].value()));
    return d;
}

// Ciphertext of the all-zero plaintext under the all-zero key; agreed by the C++
// and Python reference transcriptions before pinning.
constexpr const char* kZeroKat = "E7045E29B908D2422FD3";

}  // namespace

TEST(KeySchedule, RoundConstants) {
    const std::uint16_t expect[] = {1, 3, 9, 27, 81, 243, 729};
    for (unsigned i = 0; i < 7; ++i) EXPECT_EQ(round_constant(i), expect[i]);
    EXPECT_EQ(round_constant(7), (2187 % 1024));
}

TEST(KeySchedule, PrefixIsMasterKey) {
    std::mt19937_64 g(21);
    for (int n = 0; n < 200; ++n) {
        const MasterKey k = test::random_array<MasterKey>(g);
        const KeySchedule ks(k);
        for (std::size_t i = 0; i < 8; ++i) ASSERT_EQ(ks.round_key(0)[i], k[i]);
        for (std::size_t i = 0; i < 4; ++i) ASSERT_EQ(ks.round_key(1)[i], k[8 + i]);
    }
}

TEST(KeySchedule, ZeroKeyPinned) {
    std::istringstream pinned(test::read_text(test::test_data("expand_key_zero.txt")));
    const KeySchedule ks{MasterKey{}};
    std::string line;
    std::size_t r = 0;
    while (std::getline(pinned, line)) {
        ASSERT_LT(r, 12u);
        EXPECT_EQ(to_hex(ks.round_key(r)), line) << "round key " << r;
        ++r;
    }
    EXPECT_EQ(r, 12u);
}

TEST(KeySchedule, MatchesReferenceTranscription) {
    std::mt19937_64 g(22);
    for (int n = 0; n < 500; ++n) {
        const MasterKey k = test::random_array<MasterKey>(g);
        const auto ref = reference::expand_key(to_ref(k));
        const KeySchedule ks(k);
        for (std::size_t r = 0; r < 12; ++r) ASSERT_EQ(ks.round_key(r), from_ref(ref[r]));
    }
}

TEST(Cipher, ZeroKnownAnswer) {
    EXPECT_EQ(to_hex(encrypt_block(MasterKey{}, Block{})), kZeroKat);
    EXPECT_EQ(decrypt_block(MasterKey{}, block_from_hex(kZeroKat)), Block{});
    EXPECT_EQ(to_hex(from_ref(reference::encrypt({}, {}))), kZeroKat);
}

TEST(Cipher, MatchesReferenceTranscription) {
    std::mt19937_64 g(23);
    for (int n = 0; n < 2000; ++n) {
        const MasterKey k = test::random_array<MasterKey>(g);
        const Block p = test::random_array<Block>(g);
        const Cipher c(k);
        const Block ct = c.encrypt(p);
        ASSERT_EQ(ct, from_ref(reference::encrypt(to_ref(k), to_ref(p))));
        ASSERT_EQ(from_ref(reference::decrypt(to_ref(k), to_ref(ct))), p);
    }
}

TEST(Cipher, RoundTrip) {
    std::mt19937_64 g(24);
    for (int n = 0; n < 10000; ++n) {
        const MasterKey k = test::random_array<MasterKey>(g);
        const Block p = test::random_array<Block>(g);
        const Cipher c(k);
        ASSERT_EQ(c.decrypt(c.encrypt(p)), p);
    }
}

TEST(Cipher, ShiftRowsAndKeyAdditionAreInvolutions) {
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(kShiftRows[kShiftRows[i]], i);
    std::mt19937_64 g(25);
    const Block x = test::random_array<Block>(g);
    const Block k = test::random_array<Block>(g);
    EXPECT_EQ((x ^ k) ^ k, x);
}

TEST(Cipher, DecryptTraceMirrorsEncryptTrace) {
    std::mt19937_64 g(26);
    const MasterKey k = test::random_array<MasterKey>(g);
    const Block p = test::random_array<Block>(g);
    const Cipher c(k);
    std::array<Cipher::State, 11> fwd{}, bwd{};
    std::array<int, 11> seen_fwd{}, seen_bwd{};
    const Block ct = c.encrypt(p, [&](std::size_t r, const Cipher::State& s) {
        fwd[r] = s;
        ++seen_fwd[r];
    });
    std::vector<std::size_t> order;
    const Block back = c.decrypt(ct, [&](std::size_t r, const Cipher::State& s) {
        bwd[r] = s;
        ++seen_bwd[r];
        order.push_back(r);
    });
    EXPECT_EQ(back, p);
    EXPECT_EQ(fwd[0], Cipher::to_state(p));
    for (std::size_t r = 0; r <= 10; ++r) {
        EXPECT_EQ(seen_fwd[r], 1);
        EXPECT_EQ(seen_bwd[r], 1);
        EXPECT_EQ(fwd[r], bwd[r]) << "round " << r;
    }
    // Decrypt visits the final-round input first, then round 9's input.
    ASSERT_GE(order.size(), 2u);
    EXPECT_EQ(order[0], 10u);
    EXPECT_EQ(order[1], 9u);
}

TEST(Cipher, Avalanche) {
    std::mt19937_64 g(27);
    double total = 0;
    const int trials = 1000;
    for (int n = 0; n < trials; ++n) {
        const MasterKey k = test::random_array<MasterKey>(g);
        Block p = test::random_array<Block>(g);
        const Cipher c(k);
        const Block c0 = c.encrypt(p);
        const std::size_t bit = g() % 80;
        p[bit / 10] = Bundle(p[bit / 10].value() ^ (1u << (9 - bit % 10)));
        total += bit_distance(c0, c.encrypt(p));
    }
    const double mean = total / trials;
    EXPECT_GE(mean, 36.0);
    EXPECT_LE(mean, 44.0);
}

TEST(Cipher, DeterministicAcrossThreads) {
    std::mt19937_64 g(28);
    const Cipher c(test::random_array<MasterKey>(g));
    std::vector<Block> inputs(4000);
    for (auto& b : inputs) b = test::random_array<Block>(g);
    std::vector<Block> serial;
    for (const auto& b : inputs) serial.push_back(c.encrypt(b));
    std::vector<Block> parallel(inputs.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < 4; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < inputs.size(); i += 4) parallel[i] = c.encrypt(inputs[i]);
        });
    }
    for (auto& th : pool) th.join();
    EXPECT_EQ(serial, parallel);
}
