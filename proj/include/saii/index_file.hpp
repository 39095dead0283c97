#pragma once

// On-disk index layout, all integers little-endian:
//
//   offset  size            field
//   0       4               magic "SAII"
//   4       2               version (1)
//   6       2               flags (bit 0: built with the prefetch schedule)
//   8       8               n, BWT length including the sentinel
//   16      4               k, occurrence sampling rate
//   20      8               dollar_pos
//   28      32              C array, 4 x u64 (A, C, G, T)
//   60      ceil(n/4)       BWT, 2-bit codes, row i at bits 2*(i%4) of byte i/4;
//                           the sentinel row holds code 0
//   ...     (n/k+1)*32      occurrence checkpoints, 4 x u64 each
//   ...     4               crc32 of every preceding byte

#include "saii/bwt.hpp"
#include "saii/error.hpp"
#include "saii/fm_index.hpp"
#include "saii/occ.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace saii::io {

inline constexpr std::array<std::uint8_t, 4> kMagic{'S', 'A', 'I', 'I'};
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::uint16_t kFlagPrefetch = 1;
inline constexpr std::size_t kHeaderSize = 60;

namespace detail {

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i)
        out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * i)));
}

template <typename T>
T get(std::span<const std::uint8_t> in, std::size_t& pos) {
    if (in.size() - pos < sizeof(T)) throw FormatError("truncated index file");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{in[pos + i]} << (8 * i);
    pos += sizeof(T);
    return static_cast<T>(v);
}

inline std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in bounded pieces.
    constexpr std::size_t kPiece = std::size_t{1} << 30;
    for (std::size_t off = 0; off < bytes.size(); off += kPiece) {
        const std::size_t len = std::min(kPiece, bytes.size() - off);
        crc = ::crc32(crc, bytes.data() + off, static_cast<uInt>(len));
    }
    return static_cast<std::uint32_t>(crc);
}

}  // namespace detail

struct LoadedIndex {
    FmIndex index;
    std::uint16_t flags = 0;
};

inline std::vector<std::uint8_t> serialize(const FmIndex& index, std::uint16_t flags = 0) {
    if (index.k() > std::numeric_limits<std::uint32_t>::max())
        throw InvalidParams("sampling rate does not fit the file format");
    const std::size_t n = index.n();
    const std::size_t payload = (n + 3) / 4;
    const auto checkpoints = index.occ().checkpoints();

    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + payload + checkpoints.size() * 32 + 4);
    for (std::uint8_t b : kMagic) out.push_back(b);
    detail::put<std::uint16_t>(out, kVersion);
    detail::put<std::uint16_t>(out, flags);
    detail::put<std::uint64_t>(out, n);
    detail::put<std::uint32_t>(out, static_cast<std::uint32_t>(index.k()));
    detail::put<std::uint64_t>(out, index.bwt().dollar_pos());
    for (std::uint64_t c : index.c().counts) detail::put<std::uint64_t>(out, c);

    const auto words = index.bwt().symbols().words();
    for (std::size_t b = 0; b < payload; ++b)
        out.push_back(static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8))));

    for (const SymbolCounts& cp : checkpoints)
        for (std::uint64_t v : cp) detail::put<std::uint64_t>(out, v);

    detail::put<std::uint32_t>(out, detail::crc32_of(out));
    return out;
}

// Parses and fully validates a serialized index: checksum, header fields,
// padding, and that C and every checkpoint agree with the BWT.
inline LoadedIndex deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderSize + 4) throw FormatError("index file too short");
    const std::size_t body = bytes.size() - 4;
    std::size_t pos = body;
    const auto stored_crc = detail::get<std::uint32_t>(bytes, pos);
    if (stored_crc != detail::crc32_of(bytes.first(body))) throw FormatError("crc32 mismatch");

    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) throw FormatError("bad magic");
    pos = 4;
    const auto version = detail::get<std::uint16_t>(bytes, pos);
    if (version != kVersion) throw FormatError("unsupported index version " + std::to_string(version));
    const auto flags = detail::get<std::uint16_t>(bytes, pos);
    const auto n = detail::get<std::uint64_t>(bytes, pos);
    const auto k = detail::get<std::uint32_t>(bytes, pos);
    const auto dollar = detail::get<std::uint64_t>(bytes, pos);
    CArray c;
    for (auto& v : c.counts) v = detail::get<std::uint64_t>(bytes, pos);

    if (n < 1) throw FormatError("empty BWT");
    if (k < 1) throw FormatError("sampling rate must be positive");
    if (dollar >= n) throw FormatError("sentinel position out of range");
    const std::uint64_t payload = (n + 3) / 4;
    const std::uint64_t num_cp = n / k + 1;
    if (payload > body || num_cp > (body - payload) / 32 ||
        kHeaderSize + payload + num_cp * 32 != body)
        throw FormatError("index file size does not match header");

    std::vector<std::uint64_t> words(SymbolBuffer::words_for(n), 0);
    for (std::size_t b = 0; b < payload; ++b)
        words[b / 8] |= std::uint64_t{bytes[pos + b]} << (8 * (b % 8));
    pos += payload;
    SymbolBuffer symbols = SymbolBuffer::from_words(std::move(words), n);
    if (symbols[dollar] != Symbol::A) throw FormatError("sentinel slot must hold code 0");

    std::vector<SymbolCounts> checkpoints(num_cp);
    for (auto& cp : checkpoints)
        for (auto& v : cp) v = detail::get<std::uint64_t>(bytes, pos);

    Bwt bwt(std::move(symbols), dollar);
    if (c != CArray::from_tallies(bwt_tallies(bwt))) throw FormatError("C array inconsistent with BWT");
    SampledOccTable occ = SampledOccTable::from_checkpoints(k, std::move(checkpoints));
    if (occ != SampledOccTable::build(bwt, k))
        throw FormatError("occurrence checkpoints inconsistent with BWT");

    return {FmIndex(std::move(bwt), c, std::move(occ)), flags};
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed: " + path.string());
}

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void save_index(const std::filesystem::path& path, const FmIndex& index, std::uint16_t flags = 0) {
    write_file(path, serialize(index, flags));
}

inline LoadedIndex load_index(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    return deserialize(bytes);
}

}  // namespace saii::io
