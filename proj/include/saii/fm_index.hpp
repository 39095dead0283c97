#pragma once

#include "saii/alphabet.hpp"
#include "saii/bwt.hpp"
#include "saii/error.hpp"
#include "saii/occ.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace saii {

// counts[a] = number of text symbols (sentinel excluded) lexically smaller
// than a. There is deliberately no slot for the sentinel.
struct CArray {
    SymbolCounts counts{};

    std::uint64_t operator[](Symbol a) const noexcept { return counts[code(a)]; }

    // Accounts for one more text symbol a: every C(b) with b > a grows by one.
    void add(Symbol a) noexcept {
        for (unsigned b = code(a) + 1; b < kAlphabetSize; ++b) ++counts[b];
    }

    static CArray from_tallies(const SymbolCounts& tally) noexcept {
        CArray c;
        for (std::size_t a = 1; a < kAlphabetSize; ++a) c.counts[a] = c.counts[a - 1] + tally[a - 1];
        return c;
    }

    friend bool operator==(const CArray&, const CArray&) = default;
};

inline CArray build_c_array(const PackedSequence& seq) {
    SymbolCounts tally{};
    for (std::size_t i = 0; i < seq.size(); ++i) ++tally[code(seq[i])];
    return CArray::from_tallies(tally);
}

// Symbol tallies of the BWT with the sentinel slot excluded.
inline SymbolCounts bwt_tallies(const Bwt& bwt) noexcept {
    SymbolCounts tally = bwt.symbols().count(0, bwt.size());
    --tally[code(Symbol::A)];
    return tally;
}

// Closed row interval [low, high]; empty when low > high.
struct SearchRange {
    std::int64_t low = 0;
    std::int64_t high = -1;

    bool empty() const noexcept { return low > high; }
    std::uint64_t size() const noexcept {
        return empty() ? 0 : static_cast<std::uint64_t>(high - low + 1);
    }

    friend bool operator==(const SearchRange&, const SearchRange&) = default;
};

class FmIndex {
public:
    FmIndex(Bwt bwt, CArray c, SampledOccTable occ,
            std::optional<std::vector<std::uint64_t>> sa = std::nullopt)
        : bwt_(std::move(bwt)), c_(c), occ_(std::move(occ)), sa_(std::move(sa)) {
        if (occ_.num_checkpoints() != SampledOccTable::checkpoints_for(bwt_.size(), occ_.k()))
            throw FormatError("occurrence table does not match BWT length");
        if (sa_ && sa_->size() != bwt_.size())
            throw FormatError("suffix array does not match BWT length");
    }

    const Bwt& bwt() const noexcept { return bwt_; }
    const CArray& c() const noexcept { return c_; }
    const SampledOccTable& occ() const noexcept { return occ_; }
    const std::optional<std::vector<std::uint64_t>>& sa() const noexcept { return sa_; }

    // Text length including the sentinel.
    std::size_t n() const noexcept { return bwt_.size(); }
    std::size_t k() const noexcept { return occ_.k(); }

    SearchRange full_range() const noexcept {
        return {0, static_cast<std::int64_t>(n()) - 1};
    }

    // Equality on (bwt, c, occ); the optional suffix array is ignored.
    bool same_index(const FmIndex& other) const noexcept {
        return bwt_ == other.bwt_ && c_ == other.c_ && occ_ == other.occ_;
    }

private:
    Bwt bwt_;
    CArray c_;
    SampledOccTable occ_;
    std::optional<std::vector<std::uint64_t>> sa_;
};

// O(a, i) for i in [-1, n).
inline std::uint64_t occ_query(const FmIndex& index, Symbol a, std::int64_t i) {
    return index.occ().rank(index.bwt(), a, i);
}

inline SearchRange backward_extend(const FmIndex& index, SearchRange range, Symbol a) {
    const auto base = static_cast<std::int64_t>(index.c()[a]);
    return {base + static_cast<std::int64_t>(occ_query(index, a, range.low - 1)) + 1,
            base + static_cast<std::int64_t>(occ_query(index, a, range.high))};
}

// Runs every extension step even after the range has emptied, so low always
// equals the number of suffixes lexically smaller than the query.
inline SearchRange search(const FmIndex& index, const PackedSequence& query) {
    SearchRange range = index.full_range();
    for (std::size_t i = query.size(); i-- > 0;) range = backward_extend(index, range, query[i]);
    return range;
}

inline std::uint64_t count(const FmIndex& index, const PackedSequence& query) {
    SearchRange range = index.full_range();
    for (std::size_t i = query.size(); i-- > 0;) {
        range = backward_extend(index, range, query[i]);
        if (range.empty()) return 0;
    }
    return range.size();
}

struct Bracket {
    std::int64_t low = 0;
    bool is_substring = false;
};

// Position where the query falls among the sorted suffixes. When the query
// is absent, suffix(sa[low-1]) < query < suffix(sa[low]).
inline Bracket bracket(const FmIndex& index, const PackedSequence& query) {
    if (!index.sa()) throw MissingSuffixArray();
    const SearchRange range = search(index, query);
    return {range.low, !range.empty()};
}

// Text positions of every occurrence, ascending. Needs a suffix array.
inline std::vector<std::uint64_t> locate(const FmIndex& index, const PackedSequence& query) {
    if (!index.sa()) throw MissingSuffixArray();
    const SearchRange range = search(index, query);
    std::vector<std::uint64_t> out;
    for (std::int64_t r = range.low; r <= range.high; ++r) out.push_back((*index.sa())[static_cast<std::size_t>(r)]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace saii
