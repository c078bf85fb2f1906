#pragma once

// BEA-1 block cipher: 80-bit blocks, 120-bit master key, 11 rounds.
//
// Research use only. BEA-1 carries a deliberate design-level backdoor and must
// never protect real data.

#include <array>
#include <cstdint>

#include "bea1/bundles.hpp"
#include "bea1/tables.hpp"

namespace bea1 {

inline constexpr std::size_t kFullRounds = 10;
inline constexpr std::size_t kRoundKeys = 12;
inline constexpr std::size_t kKeyScheduleIterations = 7;
inline constexpr std::size_t kScheduleBundles = kRoundKeys * Block::size;

static_assert(MasterKey::size + kKeyScheduleIterations * MasterKey::size == kScheduleBundles,
              "key schedule iterations must exactly fill the twelve round keys");

/// Round constant for key-schedule iteration i: integer 3^i reduced mod 1024.
constexpr std::uint16_t round_constant(unsigned i) noexcept {
    std::uint32_t v = 1;
    for (unsigned k = 0; k < i; ++k) v = (v * 3) & kBundleMask;
    return static_cast<std::uint16_t>(v);
}

/// ShiftRows and its inverse: the same involutive index permutation.
inline constexpr std::array<std::size_t, 8> kShiftRows = {0, 5, 2, 7, 4, 1, 6, 3};

class KeySchedule {
public:
    explicit KeySchedule(const MasterKey& key, const Tables& tables = load_tables()) {
        std::array<std::uint16_t, kScheduleBundles> k{};
        for (std::size_t i = 0; i < MasterKey::size; ++i) k[i] = key[i].value();

        for (unsigned i = 0; i < kKeyScheduleIterations; ++i) {
            const std::size_t base = 12 * i;
            std::uint64_t packed = 0;
            for (std::size_t j = 0; j < 4; ++j) packed = (packed << kBundleBits) | k[base + 8 + j];
            packed = tables.m.apply_packed(packed);
            std::array<std::uint16_t, 4> x{};
            for (std::size_t j = 0; j < 4; ++j) {
                const auto xj = static_cast<std::uint16_t>((packed >> (kBundleBits * (3 - j))) & kBundleMask);
                x[j] = tables.sbox[j](xj);
            }
            x[0] ^= round_constant(i);
            for (std::size_t j = 0; j < 4; ++j) k[base + 12 + j] = k[base + j] ^ x[j];
            for (std::size_t j = 0; j < 4; ++j) k[base + 16 + j] = k[base + 4 + j] ^ k[base + 12 + j];
            for (std::size_t j = 0; j < 4; ++j) k[base + 20 + j] = k[base + 8 + j] ^ k[base + 16 + j];
        }

        for (std::size_t r = 0; r < kRoundKeys; ++r)
            for (std::size_t i = 0; i < Block::size; ++i) raw_[r][i] = k[8 * r + i];
    }

    RoundKey round_key(std::size_t r) const {
        RoundKey rk;
        for (std::size_t i = 0; i < Block::size; ++i) rk[i] = Bundle(raw_[r][i]);
        return rk;
    }

    std::array<RoundKey, kRoundKeys> round_keys() const {
        std::array<RoundKey, kRoundKeys> out;
        for (std::size_t r = 0; r < kRoundKeys; ++r) out[r] = round_key(r);
        return out;
    }

    const std::array<std::uint16_t, 8>& raw(std::size_t r) const noexcept { return raw_[r]; }

    friend bool operator==(const KeySchedule&, const KeySchedule&) = default;

private:
    std::array<std::array<std::uint16_t, 8>, kRoundKeys> raw_{};
};

inline KeySchedule expand_key(const MasterKey& key) { return KeySchedule(key); }

/// Block cipher bound to one key schedule. Immutable; safe to share across threads.
class Cipher {
public:
    using State = std::array<std::uint16_t, 8>;

    explicit Cipher(const MasterKey& key, const Tables& tables = load_tables())
        : tables_(&tables), schedule_(key, tables) {}

    const KeySchedule& schedule() const noexcept { return schedule_; }

    Block encrypt(const Block& p) const {
        return from_state(encrypt_state(to_state(p), [](std::size_t, const State&) {}));
    }
    Block decrypt(const Block& c) const {
        return from_state(decrypt_state(to_state(c), [](std::size_t, const State&) {}));
    }

    /// Encrypts and reports the state at the start of each full round r = 0..9
    /// and before the final short round (r = 10).
    template <class Observer>
    Block encrypt(const Block& p, Observer&& observe) const {
        return from_state(encrypt_state(to_state(p), observe));
    }

    /// Decrypts and reports the state matching encrypt's round-r observation,
    /// for r = 10 down to 0.
    template <class Observer>
    Block decrypt(const Block& c, Observer&& observe) const {
        return from_state(decrypt_state(to_state(c), observe));
    }

    template <class Observer>
    State encrypt_state(State x, Observer&& observe) const {
        for (std::size_t r = 0; r < kFullRounds; ++r) {
            observe(r, x);
            add_round_key(x, r);
            sub_bundles(x);
            shift_rows(x);
            mix_columns(x, tables_->m);
        }
        observe(kFullRounds, x);
        add_round_key(x, 10);
        sub_bundles(x);
        shift_rows(x);
        add_round_key(x, 11);
        return x;
    }

    template <class Observer>
    State decrypt_state(State x, Observer&& observe) const {
        add_round_key(x, 11);
        shift_rows(x);
        inv_sub_bundles(x);
        add_round_key(x, 10);
        observe(kFullRounds, x);
        for (std::size_t r = kFullRounds; r-- > 0;) {
            mix_columns(x, tables_->m_inv);
            shift_rows(x);
            inv_sub_bundles(x);
            add_round_key(x, r);
            observe(r, x);
        }
        return x;
    }

    static State to_state(const Block& b) noexcept {
        State s;
        for (std::size_t i = 0; i < 8; ++i) s[i] = b[i].value();
        return s;
    }
    static Block from_state(const State& s) {
        Block b;
        for (std::size_t i = 0; i < 8; ++i) b[i] = Bundle(s[i]);
        return b;
    }

private:
    void add_round_key(State& x, std::size_t r) const noexcept {
        const auto& k = schedule_.raw(r);
        for (std::size_t i = 0; i < 8; ++i) x[i] ^= k[i];
    }
    void sub_bundles(State& x) const noexcept {
        for (std::size_t i = 0; i < 8; ++i) x[i] = tables_->sbox[i % 4](x[i]);
    }
    void inv_sub_bundles(State& x) const noexcept {
        for (std::size_t i = 0; i < 8; ++i) x[i] = tables_->sbox[i % 4].inv(x[i]);
    }
    static void shift_rows(State& x) noexcept {
        State y;
        for (std::size_t i = 0; i < 8; ++i) y[i] = x[kShiftRows[i]];
        x = y;
    }
    static void mix_columns(State& x, const LinearMapTable& map) noexcept {
        for (std::size_t half = 0; half < 2; ++half) {
            std::uint16_t* col = x.data() + 4 * half;
            std::uint64_t v = 0;
            for (std::size_t j = 0; j < 4; ++j) v = (v << kBundleBits) | col[j];
            v = map.apply_packed(v);
            for (std::size_t j = 0; j < 4; ++j)
                col[j] = static_cast<std::uint16_t>((v >> (kBundleBits * (3 - j))) & kBundleMask);
        }
    }

    const Tables* tables_;
    KeySchedule schedule_;
};

inline Block encrypt_block(const MasterKey& key, const Block& p) { return Cipher(key).encrypt(p); }
inline Block decrypt_block(const MasterKey& key, const Block& c) { return Cipher(key).decrypt(c); }

}  // namespace bea1
