#pragma once

// Counter mode and the encrypted file container.
//
// Container layout: "BEA1" | version 0x01 | mode 0x01 (CTR) | 10-byte IV | ciphertext.
// There is no padding and no authentication tag.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bea1/bundles.hpp"
#include "bea1/cipher.hpp"

namespace bea1 {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using PackedBlock = PackedBytes<8, BlockTag>;

/// iv + n modulo 2^80, on the packed big-endian integer.
inline PackedBlock counter_add(PackedBlock iv, std::uint64_t n) noexcept {
    unsigned carry = 0;
    for (std::size_t i = iv.size(); i-- > 0;) {
        const unsigned sum = iv[i] + static_cast<unsigned>(n & 0xFF) + carry;
        iv[i] = static_cast<std::uint8_t>(sum);
        carry = sum >> 8;
        n >>= 8;
    }
    return iv;
}

inline Block counter_block(const Block& iv, std::uint64_t n) {
    const auto packed = counter_add(pack_block(iv), n);
    return unpack_block(packed);
}

/// XORs data with keystream block i = E_K(iv + i). Applying it twice restores the input.
inline void ctr_transform_inplace(const Cipher& cipher, const Block& iv, std::span<std::uint8_t> data) {
    const PackedBlock base = pack_block(iv);
    std::uint64_t counter = 0;
    for (std::size_t off = 0; off < data.size(); off += Block::bytes, ++counter) {
        const PackedBlock ctr = counter_add(base, counter);
        const PackedBlock ks = pack_block(cipher.encrypt(unpack_block(ctr)));
        const std::size_t n = std::min(Block::bytes, data.size() - off);
        for (std::size_t i = 0; i < n; ++i) data[off + i] ^= ks[i];
    }
}

inline std::vector<std::uint8_t> ctr_transform(const MasterKey& key, const Block& iv,
                                               std::span<const std::uint8_t> data) {
    std::vector<std::uint8_t> out(data.begin(), data.end());
    ctr_transform_inplace(Cipher(key), iv, out);
    return out;
}

namespace container {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'B', 'E', 'A', '1'};
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::uint8_t kModeCtr = 0x01;
inline constexpr std::size_t kHeaderSize = kMagic.size() + 2 + Block::bytes;

}  // namespace container

inline std::vector<std::uint8_t> encrypt_file_bytes(const MasterKey& key, const Block& iv,
                                                    std::span<const std::uint8_t> plaintext) {
    std::vector<std::uint8_t> out;
    out.reserve(container::kHeaderSize + plaintext.size());
    out.insert(out.end(), container::kMagic.begin(), container::kMagic.end());
    out.push_back(container::kVersion);
    out.push_back(container::kModeCtr);
    const auto ivb = pack_block(iv);
    out.insert(out.end(), ivb.begin(), ivb.end());
    out.insert(out.end(), plaintext.begin(), plaintext.end());
    ctr_transform_inplace(Cipher(key), iv, std::span(out).subspan(container::kHeaderSize));
    return out;
}

struct ContainerHeader {
    std::uint8_t version;
    std::uint8_t mode;
    Block iv;
};

inline ContainerHeader parse_header(std::span<const std::uint8_t> file) {
    if (file.size() < container::kHeaderSize) throw FormatError("file shorter than BEA1 header");
    if (!std::equal(container::kMagic.begin(), container::kMagic.end(), file.begin())) {
        throw FormatError("bad magic: not a BEA1 file");
    }
    ContainerHeader h{file[4], file[5], {}};
    if (h.version != container::kVersion) throw FormatError("unsupported BEA1 container version");
    if (h.mode != container::kModeCtr) throw FormatError("unsupported BEA1 mode");
    h.iv = unpack_block(file.subspan<6, Block::bytes>());
    return h;
}

inline std::vector<std::uint8_t> decrypt_file_bytes(const MasterKey& key,
                                                    std::span<const std::uint8_t> file) {
    const ContainerHeader h = parse_header(file);
    std::vector<std::uint8_t> out(file.begin() + container::kHeaderSize, file.end());
    ctr_transform_inplace(Cipher(key), h.iv, out);
    return out;
}

}  // namespace bea1
