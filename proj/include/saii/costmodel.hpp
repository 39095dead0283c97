#pragma once

#include "saii/alphabet.hpp"
#include "saii/error.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace saii::cost {

struct HardwareParams {
    std::uint64_t m = 3;                // cycles per Search state
    std::uint64_t k = 2048;             // occurrence sampling rate, one segment per k symbols
    std::uint64_t words_per_cycle = 2;  // segments refreshed per cycle
    double clock_hz = 120'000'000.0;

    void validate() const {
        if (m < 1) throw InvalidParams("m must be at least 1");
        if (k < 1) throw InvalidParams("k must be at least 1");
        if (words_per_cycle < 1) throw InvalidParams("words_per_cycle must be at least 1");
        if (!(clock_hz > 0.0)) throw InvalidParams("clock_hz must be positive");
    }
};

enum class FsmState { initial, search, update, insert, finish };

constexpr std::string_view to_string(FsmState s) noexcept {
    switch (s) {
        case FsmState::initial: return "Initial";
        case FsmState::search: return "Search";
        case FsmState::update: return "Update";
        case FsmState::insert: return "Insert";
        case FsmState::finish: return "Finish";
    }
    return "?";
}

struct FsmEvent {
    FsmState state;
    std::uint64_t iteration;  // 1-based; 0 for Initial/Finish
    double cycles;
};

struct CostReport {
    std::uint64_t n = 0;
    std::uint64_t cycles_prefetch = 0;
    std::uint64_t cycles_baseline = 0;
    double wall_time_s = 0.0;
    std::vector<double> per_chunk;  // m + c/words_per_cycle for chunk c = 1, 2, ...
    std::vector<FsmEvent> trace;    // only filled by simulate_fsm on request

    double wall_ms() const noexcept { return wall_time_s * 1e3; }
    double speedup() const noexcept {
        return static_cast<double>(cycles_baseline) / static_cast<double>(cycles_prefetch);
    }
};

namespace detail {

constexpr std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) noexcept {
    return (a + b - 1) / b;
}

inline std::vector<double> chunk_costs(const HardwareParams& p, std::uint64_t n) {
    std::vector<double> out(ceil_div(n, p.k));
    for (std::size_t c = 0; c < out.size(); ++c)
        out[c] = static_cast<double>(p.m) +
                 static_cast<double>(c + 1) / static_cast<double>(p.words_per_cycle);
    return out;
}

}  // namespace detail

/// Closed-form cycle count T = k * sum_{c=1}^{n/k} (m + c/2).
///
/// Work is done in integer units of 1/words_per_cycle cycles, so the half
/// cycles of the refresh series stay exact until the single final ceiling.
/// A partial last chunk of r = n mod k iterations is charged r * (m + c/2)
/// with c its chunk index. The baseline (no prefetch) pays the refresh term
/// twice per iteration, once for Update and once for Insert; m is paid once.
inline CostReport predict_cycles(const HardwareParams& p, std::uint64_t n) {
    p.validate();
    if (n < 1) throw InvalidParams("n must be at least 1");
    const std::uint64_t w = p.words_per_cycle;
    const std::uint64_t chunks = n / p.k;
    const std::uint64_t rem = n % p.k;
    const std::uint64_t search = p.m * w;
    const std::uint64_t series = chunks * (chunks + 1) / 2;

    const std::uint64_t prefetch_units =
        p.k * (search * chunks + series) + rem * (search + (chunks + 1));
    const std::uint64_t baseline_units =
        p.k * (search * chunks + 2 * series) + rem * (search + 2 * (chunks + 1));

    CostReport r;
    r.n = n;
    r.cycles_prefetch = detail::ceil_div(prefetch_units, w);
    r.cycles_baseline = detail::ceil_div(baseline_units, w);
    r.wall_time_s = static_cast<double>(r.cycles_prefetch) / p.clock_hz;
    r.per_chunk = detail::chunk_costs(p, n);
    return r;
}

struct SimulationOptions {
    bool prefetch = true;
    bool record_trace = false;
};

/// Replays Initial -> (Search -> Update [-> Insert])* -> Finish one iteration
/// at a time. Search costs m cycles. Each refresh rewrites every occurrence
/// segment present so far (one per k absorbed symbols, the partial one
/// included) at words_per_cycle segments per cycle. Without prefetch the
/// Update and Insert phases each refresh; with prefetch a single fused
/// Update does. Both totals are accumulated; the trace follows options.
inline CostReport simulate_fsm(const HardwareParams& p, std::uint64_t n,
                               SimulationOptions options = {}) {
    p.validate();
    if (n < 1) throw InvalidParams("n must be at least 1");
    const std::uint64_t w = p.words_per_cycle;
    const auto cycles = [w](std::uint64_t units) {
        return static_cast<double>(units) / static_cast<double>(w);
    };

    CostReport r;
    r.n = n;
    auto emit = [&](FsmState s, std::uint64_t it, std::uint64_t units) {
        if (options.record_trace) r.trace.push_back({s, it, cycles(units)});
    };

    emit(FsmState::initial, 0, 0);
    std::uint64_t prefetch_units = 0;
    std::uint64_t baseline_units = 0;
    for (std::uint64_t it = 1; it <= n; ++it) {
        const std::uint64_t segments = detail::ceil_div(it, p.k);
        const std::uint64_t search = p.m * w;
        prefetch_units += search + segments;
        baseline_units += search + 2 * segments;

        emit(FsmState::search, it, search);
        emit(FsmState::update, it, segments);
        if (!options.prefetch) emit(FsmState::insert, it, segments);
    }
    emit(FsmState::finish, 0, 0);

    r.cycles_prefetch = detail::ceil_div(prefetch_units, w);
    r.cycles_baseline = detail::ceil_div(baseline_units, w);
    r.wall_time_s = static_cast<double>(r.cycles_prefetch) / p.clock_hz;
    r.per_chunk = detail::chunk_costs(p, n);
    return r;
}

inline CostReport simulate_fsm(const HardwareParams& p, const PackedSequence& text,
                               SimulationOptions options = {}) {
    return simulate_fsm(p, static_cast<std::uint64_t>(text.size()), options);
}

struct ScalingRow {
    std::uint64_t n;
    std::uint64_t cycles_prefetch;
    std::uint64_t cycles_baseline;
    double wall_ms;
};

// One row per length, ascending by n.
inline std::vector<ScalingRow> emit_scaling_table(const HardwareParams& p,
                                                  std::span<const std::uint64_t> lengths) {
    if (lengths.empty()) throw InvalidParams("no lengths given");
    std::vector<std::uint64_t> sorted(lengths.begin(), lengths.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<ScalingRow> rows;
    rows.reserve(sorted.size());
    for (std::uint64_t n : sorted) {
        const CostReport r = predict_cycles(p, n);
        rows.push_back({n, r.cycles_prefetch, r.cycles_baseline, r.wall_ms()});
    }
    return rows;
}

inline constexpr std::string_view kScalingCsvHeader = "n,cycles_prefetch,cycles_baseline,wall_ms";

inline void write_scaling_csv(std::ostream& os, std::span<const ScalingRow> rows) {
    os << kScalingCsvHeader << '\n';
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << std::fixed << std::setprecision(3);
    for (const ScalingRow& row : rows)
        os << row.n << ',' << row.cycles_prefetch << ',' << row.cycles_baseline << ','
           << row.wall_ms << '\n';
    os.flags(flags);
    os.precision(precision);
}

}  // namespace saii::cost
