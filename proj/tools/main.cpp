#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv) {
    using namespace saii;

    CLI::App app{"Incremental FM-index construction, search and cost model"};
    app.require_subcommand(1);

    const std::map<std::string, Schedule> schedules{{"standard", Schedule::standard},
                                                    {"prefetch", Schedule::prefetch}};

    cli::BuildArgs build_args;
    auto* build_cmd = app.add_subcommand("build", "Build one index per input record");
    build_cmd->add_option("input", build_args.input, "FASTA or raw sequence file")->required()->check(CLI::ExistingFile);
    build_cmd->add_option("-o,--out", build_args.out, "Output index path")->required();
    build_cmd->add_option("--k", build_args.options.k, "Occurrence sampling rate")->capture_default_str()->check(CLI::PositiveNumber);
    build_cmd->add_option("--schedule", build_args.options.schedule, "standard or prefetch")
        ->transform(CLI::CheckedTransformer(schedules, CLI::ignore_case));
    build_cmd->add_flag("--strict-capacity", build_args.options.strict_capacity,
                        "Reject texts longer than the hardware limit (131072)");
    build_cmd->add_flag("--substitute", build_args.substitute_invalid, "Replace non-ACGT characters by A");
    build_cmd->add_option("--threads", build_args.threads, "Worker threads (0: all cores)");

    std::string index_path, query;
    auto* count_cmd = app.add_subcommand("count", "Count occurrences of a query; prints `count low high`");
    count_cmd->add_option("index", index_path, "Index file")->required();
    count_cmd->add_option("query", query, "ACGT query")->required();

    cli::VerifyArgs verify_args;
    std::string verify_input;
    auto* verify_cmd = app.add_subcommand("verify", "Cross-check both schedules against the brute-force oracle");
    verify_cmd->add_option("--input", verify_input, "Verify the records of this file instead of random texts");
    verify_cmd->add_option("--max-len", verify_args.max_len, "Maximum random/exhaustive text length")->capture_default_str();
    verify_cmd->add_option("--trials", verify_args.trials, "Number of random texts")->capture_default_str();
    verify_cmd->add_option("--seed", verify_args.seed, "PRNG seed")->capture_default_str();
    verify_cmd->add_option("--k", verify_args.k, "Occurrence sampling rate")->capture_default_str()->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--exhaustive", verify_args.exhaustive, "Every text of length 1..max-len");
    verify_cmd->add_flag("-q,--quiet", verify_args.quiet, "Only print failures and the summary");
    verify_cmd->add_flag("--inject-fault", verify_args.inject_fault)->group("");

    cli::BenchArgs bench_args;
    std::string mode = "model";
    auto* bench_cmd = app.add_subcommand("bench", "Cycle model and/or measured build times as CSV");
    bench_cmd->add_option("--lengths", bench_args.lengths, "Comma-separated text lengths")->required()->delimiter(',');
    bench_cmd->add_option("--k", bench_args.params.k, "Occurrence sampling rate")->capture_default_str();
    bench_cmd->add_option("--m", bench_args.params.m, "Search cycles per iteration")->capture_default_str();
    bench_cmd->add_option("--clock-hz", bench_args.params.clock_hz, "Clock frequency")->capture_default_str();
    bench_cmd->add_option("--mode", mode, "model, measure or both")
        ->capture_default_str()
        ->check(CLI::IsMember({"model", "measure", "both"}));
    bench_cmd->add_option("--schedule", bench_args.schedule, "Schedule used by measure")
        ->transform(CLI::CheckedTransformer(schedules, CLI::ignore_case));
    bench_cmd->add_option("--seed", bench_args.seed, "PRNG seed for measured texts")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (*build_cmd) return cli::cmd_build(build_args, std::cout, std::cerr);
    if (*count_cmd) return cli::cmd_count(index_path, query, std::cout, std::cerr);
    if (*verify_cmd) {
        if (!verify_input.empty()) verify_args.input = verify_input;
        return cli::cmd_verify(verify_args, std::cout, std::cerr);
    }
    bench_args.mode = mode == "measure" ? cli::BenchMode::measure
                      : mode == "both"  ? cli::BenchMode::both
                                        : cli::BenchMode::model;
    return cli::cmd_bench(bench_args, std::cout, std::cerr);
}
