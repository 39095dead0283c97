#pragma once

#include "saii/alphabet.hpp"

#include <cstddef>
#include <cstdint>
#include <random>

namespace saii {

// Uniform random DNA text. Takes the top two bits of each 64-bit draw so the
// sequence for a given seed is the same on every standard library.
inline PackedSequence random_text(std::mt19937_64& rng, std::size_t len) {
    PackedSequence seq(len);
    for (std::size_t i = 0; i < len; ++i) seq.set(i, symbol_from_code(static_cast<unsigned>(rng() >> 62)));
    return seq;
}

// Uniform in [lo, hi].
inline std::size_t random_length(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

}  // namespace saii
