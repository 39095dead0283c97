#pragma once

// Brute-force reference constructions used as ground truth: comparison-sorted
// suffix array, BWT read off the suffix array, and a full occurrence table.
// Everything here works on plain symbol vectors and is deliberately naive.

#include "saii/alphabet.hpp"
#include "saii/bwt.hpp"
#include "saii/error.hpp"
#include "saii/fm_index.hpp"
#include "saii/occ.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace saii::oracle {

using SuffixArray = std::vector<std::uint64_t>;

// Row i holds O(a, i) for every a, sentinel excluded.
using FullOccTable = std::vector<SymbolCounts>;

// Suffixes of text$; the implicit sentinel makes a proper prefix sort first.
inline SuffixArray suffix_array(const PackedSequence& text) {
    if (text.empty()) throw EmptyText();
    const std::vector<Symbol> x = text.symbols();
    const std::size_t n = x.size() + 1;
    SuffixArray sa(n);
    std::iota(sa.begin(), sa.end(), std::uint64_t{0});
    std::sort(sa.begin(), sa.end(), [&](std::uint64_t a, std::uint64_t b) {
        return std::lexicographical_compare(x.begin() + static_cast<std::ptrdiff_t>(a), x.end(),
                                            x.begin() + static_cast<std::ptrdiff_t>(b), x.end());
    });
    return sa;
}

// BWT[i] = X[SA[i]-1], and the sentinel where SA[i] == 0.
inline Bwt bwt(const PackedSequence& text, const SuffixArray& sa) {
    std::vector<Symbol> out(sa.size(), Symbol::A);
    std::size_t dollar = sa.size();
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i] == 0)
            dollar = i;
        else
            out[i] = text[sa[i] - 1];
    }
    return Bwt(SymbolBuffer::from_symbols(out), dollar);
}

inline FullOccTable full_occ_table(const Bwt& b) {
    FullOccTable table(b.size());
    SymbolCounts running{};
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!b.is_sentinel(i)) ++running[code(b[i])];
        table[i] = running;
    }
    return table;
}

// Checkpoints every k rows, counted one symbol at a time with the sentinel
// slot tallied as A.
inline SampledOccTable sampled_occ(const Bwt& b, std::size_t k) {
    std::vector<SymbolCounts> checkpoints(b.size() / k + 1);
    SymbolCounts running{};
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i % k == 0) checkpoints[i / k] = running;
        ++running[code(b[i])];
    }
    if (b.size() % k == 0) checkpoints.back() = running;
    return SampledOccTable::from_checkpoints(k, std::move(checkpoints));
}

inline CArray c_array(const PackedSequence& text) {
    CArray c;
    for (std::size_t a = 0; a < kAlphabetSize; ++a)
        for (std::size_t j = 0; j < text.size(); ++j)
            if (code(text[j]) < a) ++c.counts[a];
    return c;
}

inline FmIndex full_index(const PackedSequence& text, std::size_t k = kDefaultSamplingRate) {
    SuffixArray sa = suffix_array(text);
    Bwt b = bwt(text, sa);
    SampledOccTable occ = sampled_occ(b, k);
    return FmIndex(std::move(b), c_array(text), std::move(occ), std::move(sa));
}

// Recovers the text from a BWT by LF-walking from the sentinel row, using
// only counts taken directly from the BWT.
inline PackedSequence invert_bwt(const Bwt& b) {
    const std::size_t n = b.size();
    const FullOccTable occ = full_occ_table(b);
    SymbolCounts first{};  // rows before the first suffix starting with a
    {
        SymbolCounts tally{};
        for (std::size_t i = 0; i < n; ++i)
            if (!b.is_sentinel(i)) ++tally[code(b[i])];
        std::uint64_t acc = 1;  // the sentinel row
        for (std::size_t a = 0; a < kAlphabetSize; ++a) {
            first[a] = acc;
            acc += tally[a];
        }
    }
    std::vector<Symbol> text(n - 1);
    std::size_t row = 0;  // row 0 is the suffix "$", preceded by the last symbol
    for (std::size_t out = n - 1; out-- > 0;) {
        const Symbol s = b[row];
        text[out] = s;
        row = first[code(s)] + occ[row][code(s)] - 1;
    }
    return PackedSequence::from_symbols(text);
}

// Name of the first field where got differs from want, if any. The suffix
// array is not compared.
inline std::optional<std::string> first_difference(const FmIndex& got, const FmIndex& want) {
    if (got.n() != want.n()) return "n";
    if (got.bwt().dollar_pos() != want.bwt().dollar_pos()) return "dollar_pos";
    if (got.bwt().symbols() != want.bwt().symbols()) return "bwt";
    if (got.c() != want.c()) return "c";
    if (got.k() != want.k()) return "k";
    if (got.occ() != want.occ()) return "occ";
    return std::nullopt;
}

// Every text of the given length over {A,C,G,T}, in lexical order.
inline std::vector<PackedSequence> all_texts(std::size_t len) {
    std::vector<PackedSequence> out;
    const std::size_t total = std::size_t{1} << (2 * len);
    out.reserve(total);
    for (std::size_t v = 0; v < total; ++v) {
        PackedSequence seq(len);
        for (std::size_t i = 0; i < len; ++i)
            seq.set(len - 1 - i, symbol_from_code(static_cast<unsigned>(v >> (2 * i))));
        out.push_back(std::move(seq));
    }
    return out;
}

inline std::size_t count_naive(const PackedSequence& text, const PackedSequence& query) {
    if (query.size() > text.size()) return 0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i + query.size() <= text.size(); ++i) {
        std::size_t j = 0;
        while (j < query.size() && text[i + j] == query[j]) ++j;
        if (j == query.size()) ++hits;
    }
    return hits;
}

}  // namespace saii::oracle
