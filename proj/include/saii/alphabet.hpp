#pragma once

#include "saii/error.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace saii {

// DNA symbol. Code order equals lexical order A < C < G < T. The end-of-string
// sentinel is deliberately not a Symbol; it only exists as Bwt::dollar_pos().
enum class Symbol : std::uint8_t { A = 0, C = 1, G = 2, T = 3 };

inline constexpr std::size_t kAlphabetSize = 4;
inline constexpr std::array<Symbol, kAlphabetSize> kSymbols{Symbol::A, Symbol::C, Symbol::G,
                                                            Symbol::T};

constexpr unsigned code(Symbol s) noexcept { return static_cast<unsigned>(s); }

constexpr Symbol symbol_from_code(unsigned c) noexcept {
    return static_cast<Symbol>(c & 3u);
}

constexpr char to_char(Symbol s) noexcept { return "ACGT"[code(s)]; }

// Case-folding lookup; returns -1 for anything outside {A,C,G,T,a,c,g,t}.
constexpr int char_code(char ch) noexcept {
    switch (ch) {
        case 'A': case 'a': return 0;
        case 'C': case 'c': return 1;
        case 'G': case 'g': return 2;
        case 'T': case 't': return 3;
        default: return -1;
    }
}

struct EncodeOptions {
    // Replace non-ACGT characters by A instead of throwing InvalidCharacter.
    bool substitute_invalid = false;
};

// 2-bit packed DNA text; symbol i lives in byte i/4 at bits 2*(i%4).
class PackedSequence {
public:
    PackedSequence() = default;

    explicit PackedSequence(std::size_t len) : data_((len + 3) / 4, 0), len_(len) {}

    template <typename Range>
    static PackedSequence from_symbols(const Range& symbols) {
        PackedSequence seq(std::size(symbols));
        std::size_t i = 0;
        for (Symbol s : symbols) seq.set(i++, s);
        return seq;
    }

    std::size_t size() const noexcept { return len_; }
    bool empty() const noexcept { return len_ == 0; }

    Symbol operator[](std::size_t i) const noexcept {
        return symbol_from_code(data_[i >> 2] >> ((i & 3) * 2));
    }

    void set(std::size_t i, Symbol s) noexcept {
        const unsigned shift = (i & 3) * 2;
        data_[i >> 2] = static_cast<std::uint8_t>((data_[i >> 2] & ~(3u << shift)) |
                                                  (code(s) << shift));
    }

    const std::vector<std::uint8_t>& bytes() const noexcept { return data_; }

    std::vector<Symbol> symbols() const {
        std::vector<Symbol> out(len_);
        for (std::size_t i = 0; i < len_; ++i) out[i] = (*this)[i];
        return out;
    }

    // Subsequence [pos, pos + count).
    PackedSequence slice(std::size_t pos, std::size_t count) const {
        PackedSequence out(count);
        for (std::size_t i = 0; i < count; ++i) out.set(i, (*this)[pos + i]);
        return out;
    }

    friend bool operator==(const PackedSequence& a, const PackedSequence& b) noexcept {
        return a.len_ == b.len_ && a.data_ == b.data_;
    }

    // Lexical order with A < C < G < T; a proper prefix sorts first.
    friend std::strong_ordering operator<=>(const PackedSequence& a,
                                            const PackedSequence& b) noexcept {
        const std::size_t common = a.len_ < b.len_ ? a.len_ : b.len_;
        for (std::size_t i = 0; i < common; ++i) {
            if (auto c = code(a[i]) <=> code(b[i]); c != 0) return c;
        }
        return a.len_ <=> b.len_;
    }

private:
    std::vector<std::uint8_t> data_;
    std::size_t len_ = 0;
};

inline PackedSequence encode_text(std::string_view text, EncodeOptions options = {}) {
    if (text.empty()) throw EmptyText();
    PackedSequence seq(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        int c = char_code(text[i]);
        if (c < 0) {
            if (!options.substitute_invalid) throw InvalidCharacter(i, text[i]);
            c = 0;
        }
        seq.set(i, symbol_from_code(static_cast<unsigned>(c)));
    }
    return seq;
}

inline std::string decode(const PackedSequence& seq) {
    std::string out(seq.size(), '\0');
    for (std::size_t i = 0; i < seq.size(); ++i) out[i] = to_char(seq[i]);
    return out;
}

}  // namespace saii
