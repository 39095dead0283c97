#pragma once

#include "saii/alphabet.hpp"
#include "saii/error.hpp"

#include <array>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace saii {

using SymbolCounts = std::array<std::uint64_t, kAlphabetSize>;

// Flat, insertable 2-bit symbol buffer. Symbol i sits in word i/32 at bits
// 2*(i%32); bits past size() are always zero.
class SymbolBuffer {
public:
    static constexpr std::size_t kSymbolsPerWord = 32;

    SymbolBuffer() = default;

    template <typename Range>
    static SymbolBuffer from_symbols(const Range& symbols) {
        SymbolBuffer buf;
        buf.reserve(std::size(symbols));
        for (Symbol s : symbols) buf.push_back(s);
        return buf;
    }

    // Rebuilds a buffer from raw words; bits past len must be zero.
    static SymbolBuffer from_words(std::vector<std::uint64_t> words, std::size_t len) {
        SymbolBuffer buf;
        if (words.size() != words_for(len)) throw FormatError("symbol buffer word count mismatch");
        buf.words_ = std::move(words);
        buf.len_ = len;
        if (len % kSymbolsPerWord != 0 &&
            (buf.words_.back() >> (2 * (len % kSymbolsPerWord))) != 0)
            throw FormatError("nonzero padding bits in symbol buffer");
        return buf;
    }

    static constexpr std::size_t words_for(std::size_t len) noexcept {
        return (len + kSymbolsPerWord - 1) / kSymbolsPerWord;
    }

    std::size_t size() const noexcept { return len_; }
    bool empty() const noexcept { return len_ == 0; }

    void reserve(std::size_t symbols) { words_.reserve(words_for(symbols)); }
    std::size_t capacity() const noexcept { return words_.capacity() * kSymbolsPerWord; }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    Symbol operator[](std::size_t i) const noexcept {
        assert(i < len_);
        return symbol_from_code(
            static_cast<unsigned>(words_[i / kSymbolsPerWord] >> (2 * (i % kSymbolsPerWord))));
    }

    void set(std::size_t i, Symbol s) noexcept {
        assert(i < len_);
        const unsigned shift = 2 * (i % kSymbolsPerWord);
        std::uint64_t& w = words_[i / kSymbolsPerWord];
        w = (w & ~(std::uint64_t{3} << shift)) | (std::uint64_t{code(s)} << shift);
    }

    void push_back(Symbol s) { insert(len_, s); }

    // Inserts s before position pos, moving [pos, size()) one slot right.
    void insert(std::size_t pos, Symbol s) {
        assert(pos <= len_);
        if (len_ % kSymbolsPerWord == 0) words_.push_back(0);
        const std::size_t last = len_ / kSymbolsPerWord;
        std::size_t wi = pos / kSymbolsPerWord;
        const unsigned shift = 2 * (pos % kSymbolsPerWord);
        const std::uint64_t keep = shift == 0 ? 0 : (std::uint64_t{1} << shift) - 1;

        std::uint64_t old = words_[wi];
        std::uint64_t carry = old >> 62;
        words_[wi] = (old & keep) | ((old & ~keep) << 2) | (std::uint64_t{code(s)} << shift);
        for (++wi; wi <= last; ++wi) {
            old = words_[wi];
            words_[wi] = (old << 2) | carry;
            carry = old >> 62;
        }
        ++len_;
    }

    // Occurrences of each code in [begin, end), by word-wide popcount.
    SymbolCounts count(std::size_t begin, std::size_t end) const noexcept {
        assert(begin <= end && end <= len_);
        SymbolCounts out{};
        if (begin == end) return out;
        const std::size_t first = begin / kSymbolsPerWord;
        const std::size_t last = (end - 1) / kSymbolsPerWord;
        for (std::size_t wi = first; wi <= last; ++wi) {
            std::uint64_t mask = kLowBits;
            std::size_t lo = 0, hi = kSymbolsPerWord;
            if (wi == first) lo = begin % kSymbolsPerWord;
            if (wi == last) hi = (end - 1) % kSymbolsPerWord + 1;
            if (lo > 0) mask &= ~((std::uint64_t{1} << (2 * lo)) - 1);
            if (hi < kSymbolsPerWord) mask &= (std::uint64_t{1} << (2 * hi)) - 1;
            const std::uint64_t w = words_[wi];
            const std::uint64_t low = w & mask;
            const std::uint64_t high = (w >> 1) & mask;
            const auto t = static_cast<std::uint64_t>(std::popcount(low & high));
            const auto g = static_cast<std::uint64_t>(std::popcount(high)) - t;
            const auto c = static_cast<std::uint64_t>(std::popcount(low)) - t;
            out[3] += t;
            out[2] += g;
            out[1] += c;
            out[0] += (hi - lo) - t - g - c;
        }
        return out;
    }

    // Occurrences of a in [begin, end).
    std::uint64_t count(Symbol a, std::size_t begin, std::size_t end) const noexcept {
        assert(begin <= end && end <= len_);
        if (begin == end) return 0;
        const std::uint64_t pattern = kLowBits * code(a);
        const std::size_t first = begin / kSymbolsPerWord;
        const std::size_t last = (end - 1) / kSymbolsPerWord;
        std::uint64_t total = 0;
        for (std::size_t wi = first; wi <= last; ++wi) {
            std::uint64_t mask = kLowBits;
            if (wi == first) mask &= ~((std::uint64_t{1} << (2 * (begin % kSymbolsPerWord))) - 1);
            if (wi == last) {
                const std::size_t hi = (end - 1) % kSymbolsPerWord + 1;
                if (hi < kSymbolsPerWord) mask &= (std::uint64_t{1} << (2 * hi)) - 1;
            }
            const std::uint64_t x = words_[wi] ^ pattern;
            total += static_cast<std::uint64_t>(std::popcount(~(x | (x >> 1)) & mask));
        }
        return total;
    }

    friend bool operator==(const SymbolBuffer& a, const SymbolBuffer& b) noexcept {
        return a.len_ == b.len_ && a.words_ == b.words_;
    }

private:
    static constexpr std::uint64_t kLowBits = 0x5555555555555555ULL;

    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;
};

// BWT string with the sentinel kept as a position. The sentinel slot stores
// code A in the buffer and is excluded from A counts by comparing against
// dollar_pos().
class Bwt {
public:
    // The BWT of the empty text: "$".
    Bwt() { symbols_.push_back(Symbol::A); }

    Bwt(SymbolBuffer symbols, std::size_t dollar_pos)
        : symbols_(std::move(symbols)), dollar_pos_(dollar_pos) {
        if (dollar_pos_ >= symbols_.size()) throw IndexOutOfRange("sentinel position out of range");
    }

    // Parses a string over {A,C,G,T,$} containing exactly one '$'.
    static Bwt from_string(std::string_view s) {
        SymbolBuffer buf;
        buf.reserve(s.size());
        std::size_t dollar = s.size();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '$') {
                if (dollar != s.size()) throw InvalidCharacter(i, '$');
                dollar = i;
                buf.push_back(Symbol::A);
                continue;
            }
            const int c = char_code(s[i]);
            if (c < 0) throw InvalidCharacter(i, s[i]);
            buf.push_back(symbol_from_code(static_cast<unsigned>(c)));
        }
        if (dollar == s.size()) throw FormatError("BWT string has no sentinel");
        return Bwt(std::move(buf), dollar);
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    std::size_t dollar_pos() const noexcept { return dollar_pos_; }
    bool is_sentinel(std::size_t i) const noexcept { return i == dollar_pos_; }

    Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }

    const SymbolBuffer& symbols() const noexcept { return symbols_; }

    // Occurrences of a in [begin, end), sentinel slot excluded.
    std::uint64_t count(Symbol a, std::size_t begin, std::size_t end) const noexcept {
        std::uint64_t n = symbols_.count(a, begin, end);
        if (a == Symbol::A && dollar_pos_ >= begin && dollar_pos_ < end) --n;
        return n;
    }

    std::string to_string() const {
        std::string out(size(), '\0');
        for (std::size_t i = 0; i < size(); ++i) out[i] = is_sentinel(i) ? '$' : to_char(symbols_[i]);
        return out;
    }

    // Construction-side mutators; the caller keeps dollar_pos() meaningful.
    void reserve(std::size_t len) { symbols_.reserve(len); }
    void set(std::size_t i, Symbol s) noexcept { symbols_.set(i, s); }
    void insert(std::size_t pos, Symbol s) { symbols_.insert(pos, s); }
    void set_dollar_pos(std::size_t pos) noexcept { dollar_pos_ = pos; }

    friend bool operator==(const Bwt&, const Bwt&) = default;

private:
    SymbolBuffer symbols_;
    std::size_t dollar_pos_ = 0;
};

}  // namespace saii
