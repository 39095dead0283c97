#pragma once

#include "saii/alphabet.hpp"
#include "saii/bwt.hpp"
#include "saii/error.hpp"

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace saii {

inline constexpr std::size_t kDefaultSamplingRate = 2048;

// Incomplete occurrence table: checkpoint j holds the raw symbol counts of
// bwt[0, j*k). Raw means the sentinel slot is counted as an A; Bwt-level
// queries subtract it again.
class SampledOccTable {
public:
    explicit SampledOccTable(std::size_t k = kDefaultSamplingRate) : k_(k), checkpoints_(1) {
        if (k_ == 0) throw InvalidParams("sampling rate k must be positive");
    }

    static SampledOccTable build(const SymbolBuffer& symbols, std::size_t k) {
        SampledOccTable table(k);
        table.reserve(symbols.size());
        table.rebuild_from(symbols, 0);
        return table;
    }

    static SampledOccTable build(const Bwt& bwt, std::size_t k) { return build(bwt.symbols(), k); }

    static SampledOccTable from_checkpoints(std::size_t k, std::vector<SymbolCounts> checkpoints) {
        SampledOccTable table(k);
        if (checkpoints.empty()) throw FormatError("occurrence table has no checkpoints");
        table.checkpoints_ = std::move(checkpoints);
        return table;
    }

    static constexpr std::size_t checkpoints_for(std::size_t len, std::size_t k) noexcept {
        return len / k + 1;
    }

    std::size_t k() const noexcept { return k_; }
    std::size_t num_checkpoints() const noexcept { return checkpoints_.size(); }
    std::size_t num_entries() const noexcept { return kAlphabetSize * checkpoints_.size(); }

    const SymbolCounts& checkpoint(std::size_t j) const noexcept { return checkpoints_[j]; }
    std::span<const SymbolCounts> checkpoints() const noexcept { return checkpoints_; }

    void reserve(std::size_t len) { checkpoints_.reserve(checkpoints_for(len, k_)); }

    // Recomputes checkpoints from_block+1 onward by one scan of the buffer
    // starting at block from_block; checkpoints 0..from_block are kept.
    void rebuild_from(const SymbolBuffer& symbols, std::size_t from_block) {
        assert(from_block < checkpoints_.size());
        const std::size_t target = checkpoints_for(symbols.size(), k_);
        if (from_block == 0) checkpoints_[0] = SymbolCounts{};
        checkpoints_.resize(target);
        for (std::size_t j = from_block; j + 1 < target; ++j) {
            const SymbolCounts block = symbols.count(j * k_, (j + 1) * k_);
            for (std::size_t a = 0; a < kAlphabetSize; ++a)
                checkpoints_[j + 1][a] = checkpoints_[j][a] + block[a];
        }
    }

    void rebuild_from(const Bwt& bwt, std::size_t from_block) { rebuild_from(bwt.symbols(), from_block); }

    // Raw count of a in symbols[0, i] (i == -1 yields 0).
    std::uint64_t raw_rank(const SymbolBuffer& symbols, Symbol a, std::int64_t i) const {
        if (i < 0) return 0;
        const auto pos = static_cast<std::size_t>(i);
        if (pos >= symbols.size()) throw IndexOutOfRange("occurrence query past end of BWT");
        const std::size_t block = pos / k_;
        return checkpoints_[block][code(a)] + symbols.count(a, block * k_, pos + 1);
    }

    // O(a, i): checkpoint at k*floor(i/k) plus a popcount scan up to i,
    // with the sentinel slot excluded from A.
    std::uint64_t rank(const Bwt& bwt, Symbol a, std::int64_t i) const {
        if (i < 0) return 0;
        const auto pos = static_cast<std::size_t>(i);
        if (pos >= bwt.size()) throw IndexOutOfRange("occurrence query past end of BWT");
        const std::size_t block = pos / k_;
        std::uint64_t base = checkpoints_[block][code(a)];
        if (a == Symbol::A && bwt.dollar_pos() < block * k_) --base;
        return base + bwt.count(a, block * k_, pos + 1);
    }

    friend bool operator==(const SampledOccTable&, const SampledOccTable&) = default;

private:
    std::size_t k_;
    std::vector<SymbolCounts> checkpoints_;
};

// Count of a in bwt[start, end] (inclusive), sentinel excluded for A.
inline std::uint64_t block_scan_count(const Bwt& bwt, Symbol a, std::size_t start, std::size_t end) {
    if (start > end || end >= bwt.size()) throw IndexOutOfRange("block scan range invalid");
    return bwt.count(a, start, end + 1);
}

}  // namespace saii
