#pragma once

// Subcommand implementations for the `saii` tool. Each returns the process
// exit code and writes only to the streams it is given, so tests can drive
// them directly.

#include "saii/builder.hpp"
#include "saii/costmodel.hpp"
#include "saii/fasta.hpp"
#include "saii/index_file.hpp"
#include "saii/oracle.hpp"
#include "saii/random.hpp"

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace saii::cli {

inline std::uint16_t flags_for(Schedule s) {
    return s == Schedule::prefetch ? io::kFlagPrefetch : std::uint16_t{0};
}

inline std::filesystem::path output_path(const std::filesystem::path& out, std::size_t ordinal,
                                         std::size_t records) {
    if (records == 1) return out;
    return std::filesystem::path(out.string() + "." + std::to_string(ordinal) + ".saii");
}

// --- build -----------------------------------------------------------------

struct BuildArgs {
    std::filesystem::path input;
    std::filesystem::path out;
    BuildOptions options;
    bool substitute_invalid = false;
    unsigned threads = 0;  // 0: hardware concurrency
};

inline int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err) {
    std::vector<io::FastaRecord> records;
    try {
        records = io::read_records(args.input);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    std::vector<std::string> errors(records.size());
    std::vector<std::size_t> lengths(records.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            try {
                const PackedSequence text =
                    encode_text(records[i].sequence, {.substitute_invalid = args.substitute_invalid});
                const FmIndex index = build(text, args.options);
                io::save_index(output_path(args.out, i, records.size()), index,
                               flags_for(args.options.schedule));
                lengths[i] = index.n();
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    unsigned threads = args.threads ? args.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, records.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    int status = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!errors[i].empty()) {
            err << "error: record " << i << " ('" << records[i].id << "'): " << errors[i] << '\n';
            status = 1;
            continue;
        }
        out << output_path(args.out, i, records.size()).string() << " n=" << lengths[i]
            << " id=" << records[i].id << '\n';
    }
    return status;
}

// --- count -----------------------------------------------------------------

inline int cmd_count(const std::filesystem::path& index_path, const std::string& query,
                     std::ostream& out, std::ostream& err) {
    try {
        const io::LoadedIndex loaded = io::load_index(index_path);
        const SearchRange range = search(loaded.index, encode_text(query));
        out << range.size() << ' ' << range.low << ' ' << range.high << '\n';
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::optional<std::filesystem::path> input;
    std::size_t max_len = 64;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::size_t k = 4;
    bool exhaustive = false;
    bool quiet = false;
    bool inject_fault = false;  // test hook
};

struct Mismatch {
    std::size_t step;  // symbols absorbed when the difference was seen
    std::string field;
};

// Texts longer than this are only compared after the last step.
inline constexpr std::size_t kPerStepCheckLimit = 1024;

// Runs both schedules over text and compares against the oracle, after every
// step for short texts.
inline std::optional<Mismatch> verify_text(const PackedSequence& text, std::size_t k,
                                           bool inject_fault = false) {
    const BuildOptions options{.k = k};
    SaiiState standard = init_state(options, text.size());
    PrefetchState prefetch = init_prefetch_state(options, text.size());
    const bool per_step = text.size() <= kPerStepCheckLimit;

    for (std::size_t i = text.size(); i-- > 0;) {
        const std::size_t step_no = text.size() - i;
        const std::size_t q = step(standard, text[i]);
        if (step_prefetch(prefetch, text[i], i == 0) != q) return Mismatch{step_no, "q (prefetch)"};
        if (inject_fault && i == 0) {
            const std::size_t pos = (standard.bwt.dollar_pos() + 1) % standard.bwt.size();
            standard.bwt.set(pos, symbol_from_code(code(standard.bwt[pos]) ^ 1u));
        }
        if (per_step || i == 0) {
            const FmIndex want = oracle::full_index(text.slice(i, text.size() - i), k);
            if (auto field = oracle::first_difference(standard.index(), want))
                return Mismatch{step_no, *field};
        }
    }
    const FmIndex want = oracle::full_index(text, k);
    if (auto field = oracle::first_difference(to_index(to_standard_state(std::move(prefetch))), want))
        return Mismatch{text.size(), "prefetch " + *field};
    return std::nullopt;
}

inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    std::vector<PackedSequence> texts;
    try {
        if (args.input) {
            for (const auto& rec : io::read_records(*args.input)) texts.push_back(encode_text(rec.sequence));
        } else if (args.exhaustive) {
            for (std::size_t len = 1; len <= args.max_len; ++len)
                for (auto& t : oracle::all_texts(len)) texts.push_back(std::move(t));
        } else {
            if (args.max_len < 1) throw InvalidParams("max_len must be at least 1");
            std::mt19937_64 rng(args.seed);
            for (std::size_t t = 0; t < args.trials; ++t)
                texts.push_back(random_text(rng, random_length(rng, 1, args.max_len)));
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    out << "seed=" << args.seed << " k=" << args.k << " trials=" << texts.size() << '\n';
    std::size_t failed = 0;
    for (std::size_t t = 0; t < texts.size(); ++t) {
        const auto mismatch = verify_text(texts[t], args.k, args.inject_fault && t == 0);
        if (mismatch) {
            ++failed;
            out << "FAIL trial=" << t << " len=" << texts[t].size() << " step=" << mismatch->step
                << " field=" << mismatch->field << " text=" << decode(texts[t]) << '\n';
        } else if (!args.quiet) {
            out << "PASS trial=" << t << " len=" << texts[t].size() << '\n';
        }
    }
    out << "summary: " << texts.size() - failed << " passed, " << failed << " failed (seed="
        << args.seed << ")\n";
    return failed == 0 ? 0 : 2;
}

// --- bench -----------------------------------------------------------------

enum class BenchMode { model, measure, both };

struct BenchArgs {
    std::vector<std::uint64_t> lengths;
    cost::HardwareParams params;
    BenchMode mode = BenchMode::model;
    Schedule schedule = Schedule::prefetch;
    std::uint64_t seed = 1;
};

// Software build time of a seeded random text, in milliseconds.
inline double measure_build_ms(std::uint64_t n, std::size_t k, Schedule schedule, std::mt19937_64& rng) {
    const PackedSequence text = random_text(rng, n);
    const auto start = std::chrono::steady_clock::now();
    const FmIndex index = build(text, {.k = k, .schedule = schedule});
    const auto stop = std::chrono::steady_clock::now();
    if (index.n() != n + 1) throw Error("unexpected index length");
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    try {
        args.params.validate();
        for (std::uint64_t n : args.lengths)
            if (n < 1) throw InvalidParams("lengths must be positive");
        const std::vector<cost::ScalingRow> rows = cost::emit_scaling_table(args.params, args.lengths);

        if (args.mode == BenchMode::model) {
            cost::write_scaling_csv(out, rows);
            return 0;
        }
        err << "# seed=" << args.seed << '\n';
        std::mt19937_64 rng(args.seed);
        out << (args.mode == BenchMode::both ? std::string(cost::kScalingCsvHeader) + ",measured_ms"
                                             : std::string("n,measured_ms"))
            << '\n';
        out << std::fixed << std::setprecision(3);
        for (const cost::ScalingRow& row : rows) {
            const double ms = measure_build_ms(row.n, args.params.k, args.schedule, rng);
            out << row.n << ',';
            if (args.mode == BenchMode::both)
                out << row.cycles_prefetch << ',' << row.cycles_baseline << ',' << row.wall_ms << ',';
            out << ms << '\n';
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace saii::cli
