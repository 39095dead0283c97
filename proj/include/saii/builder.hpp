#pragma once

#include "saii/alphabet.hpp"
#include "saii/bwt.hpp"
#include "saii/error.hpp"
#include "saii/fm_index.hpp"
#include "saii/occ.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>

namespace saii {

// Longest text the reference hardware constructor accepts.
inline constexpr std::size_t kHardwareMaxLength = 131072;

enum class Schedule { standard, prefetch };

struct BuildOptions {
    std::size_t k = kDefaultSamplingRate;
    Schedule schedule = Schedule::standard;
    // Enforce max_length; off by default since software has no BRAM limit.
    bool strict_capacity = false;
    std::size_t max_length = kHardwareMaxLength;
};

/// Running index of the suffix absorbed so far.
///
/// After absorbing L = X[i..n-2]$ the members equal the FM-index of L, and
/// `q` is the sentinel row, which is also the row of L itself among its
/// sorted suffixes.
struct SaiiState {
    Bwt bwt;
    CArray c;
    SampledOccTable occ;
    std::size_t q = 0;
    std::size_t chars_consumed = 0;
    std::optional<std::size_t> capacity_limit;

    FmIndex index() const { return FmIndex(bwt, c, occ); }
};

inline void check_capacity(const std::optional<std::size_t>& limit, std::size_t consumed) {
    if (limit && consumed + 1 > *limit) throw CapacityExceeded(consumed + 1, *limit);
}

// Index of the empty text: BWT "$", q = 0. expected_length reserves storage
// for a text of that many symbols so later steps never reallocate.
inline SaiiState init_state(const BuildOptions& options = {}, std::size_t expected_length = 0) {
    SaiiState s{Bwt(), CArray{}, SampledOccTable(options.k), 0, 0, std::nullopt};
    if (options.strict_capacity) s.capacity_limit = options.max_length;
    s.bwt.reserve(expected_length + 1);
    s.occ.reserve(expected_length + 1);
    return s;
}

// Absorbs the next symbol to the left. Returns the new sentinel row.
inline std::size_t step(SaiiState& s, Symbol a) {
    check_capacity(s.capacity_limit, s.chars_consumed);
    const std::size_t old_q = s.q;

    s.bwt.set(old_q, a);

    // Rows above old_q are untouched by the overwrite and hold no sentinel,
    // so the raw rank over [0, old_q) is exact. Its checkpoint lies at or
    // below old_q and is still valid.
    const std::size_t new_q = static_cast<std::size_t>(
        s.c[a] + s.occ.raw_rank(s.bwt.symbols(), a, static_cast<std::int64_t>(old_q) - 1) + 1);

    s.bwt.insert(new_q, Symbol::A);
    s.bwt.set_dollar_pos(new_q);
    s.c.add(a);
    s.occ.rebuild_from(s.bwt, std::min(old_q, new_q) / s.occ.k());

    s.q = new_q;
    ++s.chars_consumed;
    return new_q;
}

// Tracks the sentinel insertion that the prefetch schedule has deferred.
// pending_pos is the sentinel row in standard-schedule coordinates; the stored
// buffer is the standard BWT with that slot removed.
struct PrefetchMonitor {
    std::size_t pending_pos = 0;

    // Maps a standard-schedule prefix [0, i] onto the stored buffer.
    std::int64_t stored_end(std::int64_t i) const noexcept {
        return i < static_cast<std::int64_t>(pending_pos) ? i : i - 1;
    }
};

struct PrefetchState {
    SymbolBuffer symbols;
    CArray c;
    SampledOccTable occ;
    PrefetchMonitor monitor;
    std::size_t chars_consumed = 0;
    std::optional<std::size_t> capacity_limit;
    bool flushed = false;
};

inline PrefetchState init_prefetch_state(const BuildOptions& options = {},
                                         std::size_t expected_length = 0) {
    PrefetchState s{SymbolBuffer{}, CArray{}, SampledOccTable(options.k), PrefetchMonitor{}, 0,
                    std::nullopt, false};
    if (options.strict_capacity) s.capacity_limit = options.max_length;
    s.symbols.reserve(expected_length + 1);
    s.occ.reserve(expected_length + 1);
    return s;
}

// O(a, i) of the standard-schedule BWT, answered from a prefetch state. The
// deferred slot is the sentinel and contributes to no symbol.
inline std::uint64_t monitored_rank(const PrefetchState& s, Symbol a, std::int64_t i) {
    return s.occ.raw_rank(s.symbols, a, s.monitor.stored_end(i));
}

// Writes the deferred sentinel into the buffer. Only legal once.
inline void flush(PrefetchState& s) {
    if (s.flushed) return;
    s.symbols.insert(s.monitor.pending_pos, Symbol::A);
    s.occ.rebuild_from(s.symbols, s.monitor.pending_pos / s.occ.k());
    s.flushed = true;
}

// One prefetch iteration: the search runs against the monitored view, then a
// single insert of a at the pending slot stands in for both the previous
// iteration's sentinel insertion and this iteration's overwrite. With
// last = true the new sentinel is written immediately.
inline std::size_t step_prefetch(PrefetchState& s, Symbol a, bool last) {
    if (s.flushed) throw Error("prefetch state already flushed");
    check_capacity(s.capacity_limit, s.chars_consumed);
    const std::size_t pending = s.monitor.pending_pos;

    const std::size_t new_q = static_cast<std::size_t>(
        s.c[a] + monitored_rank(s, a, static_cast<std::int64_t>(pending) - 1) + 1);

    s.symbols.insert(pending, a);
    s.c.add(a);
    s.occ.rebuild_from(s.symbols, pending / s.occ.k());

    s.monitor.pending_pos = new_q;
    ++s.chars_consumed;
    if (last) flush(s);
    return new_q;
}

inline SaiiState to_standard_state(PrefetchState&& s) {
    flush(s);
    const std::size_t q = s.monitor.pending_pos;
    return SaiiState{Bwt(std::move(s.symbols), q), s.c, std::move(s.occ), q, s.chars_consumed,
                     s.capacity_limit};
}

inline FmIndex to_index(SaiiState&& s) {
    return FmIndex(std::move(s.bwt), s.c, std::move(s.occ));
}

// Builds the FM-index of text$ by absorbing the text right to left.
inline FmIndex build(const PackedSequence& text, const BuildOptions& options = {}) {
    if (text.empty()) throw EmptyText();
    if (options.strict_capacity && text.size() > options.max_length)
        throw CapacityExceeded(text.size(), options.max_length);

    if (options.schedule == Schedule::standard) {
        SaiiState s = init_state(options, text.size());
        for (std::size_t i = text.size(); i-- > 0;) step(s, text[i]);
        return to_index(std::move(s));
    }
    PrefetchState s = init_prefetch_state(options, text.size());
    for (std::size_t i = text.size(); i-- > 0;) step_prefetch(s, text[i], i == 0);
    return to_index(to_standard_state(std::move(s)));
}

}  // namespace saii
