#include "commands.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace saii;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("saii_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& content) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << content;
        return p;
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, BuildRawTextThenCount) {
    cli::BuildArgs args{write("x.txt", "ACGCTTG\n"), dir_ / "x.saii", {.k = 4}};
    ASSERT_EQ(cli::cmd_build(args, out_, err_), 0) << err_.str();
    EXPECT_EQ(io::load_index(dir_ / "x.saii").index.bwt().to_string(), "G$AGTCTC");

    std::ostringstream o1, o2, o3;
    EXPECT_EQ(cli::cmd_count(dir_ / "x.saii", "CT", o1, err_), 0);
    EXPECT_EQ(o1.str(), "1 3 3\n");
    EXPECT_EQ(cli::cmd_count(dir_ / "x.saii", "T", o2, err_), 0);
    EXPECT_EQ(o2.str(), "2 6 7\n");
    EXPECT_EQ(cli::cmd_count(dir_ / "x.saii", "GG", o3, err_), 0);
    std::istringstream miss(o3.str());
    std::int64_t n = -1, low = 0, high = 0;
    miss >> n >> low >> high;
    EXPECT_EQ(n, 0);
    EXPECT_GT(low, high);
}

TEST_F(CliTest, BuildFastaFansOutPerRecord) {
    const fs::path fa = write("reads.fa", ">a\nACGT\n>b\nGGCA\nTT\n>c\nT\n");
    cli::BuildArgs args{fa, dir_ / "reads", {.k = 2, .schedule = Schedule::prefetch}, false, 2};
    ASSERT_EQ(cli::cmd_build(args, out_, err_), 0) << err_.str();
    for (int i = 0; i < 3; ++i) {
        const fs::path p = dir_ / ("reads." + std::to_string(i) + ".saii");
        ASSERT_TRUE(fs::exists(p)) << p;
        EXPECT_EQ(io::load_index(p).flags, io::kFlagPrefetch);
    }
    EXPECT_EQ(io::load_index(dir_ / "reads.1.saii").index.n(), 7u);
}

TEST_F(CliTest, BuildErrors) {
    const fs::path big = write("big.txt", std::string(kHardwareMaxLength + 1, 'A'));
    cli::BuildArgs strict{big, dir_ / "big.saii", {.strict_capacity = true}};
    EXPECT_EQ(cli::cmd_build(strict, out_, err_), 1);
    EXPECT_NE(err_.str().find("capacity"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir_ / "big.saii"));

    cli::BuildArgs bad{write("n.txt", "ACGN"), dir_ / "n.saii"};
    EXPECT_EQ(cli::cmd_build(bad, out_, err_), 1);
    bad.substitute_invalid = true;
    EXPECT_EQ(cli::cmd_build(bad, out_, err_), 0);

    cli::BuildArgs missing{dir_ / "nope.fa", dir_ / "nope.saii"};
    EXPECT_EQ(cli::cmd_build(missing, out_, err_), 1);
}

TEST_F(CliTest, CountErrors) {
    cli::BuildArgs args{write("x.txt", "ACGCTTG"), dir_ / "x.saii", {.k = 4}};
    ASSERT_EQ(cli::cmd_build(args, out_, err_), 0);
    EXPECT_EQ(cli::cmd_count(dir_ / "x.saii", "CN", out_, err_), 1);

    auto bytes = io::read_file(dir_ / "x.saii");
    bytes[61] ^= 0xFF;
    io::write_file(dir_ / "bad.saii", bytes);
    EXPECT_EQ(cli::cmd_count(dir_ / "bad.saii", "CT", out_, err_), 1);
    EXPECT_NE(err_.str().find("crc32"), std::string::npos);
}

TEST_F(CliTest, LoadedIndexCountsMatchInMemory) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 1000; ++trial) {
        const PackedSequence text = random_text(rng, random_length(rng, 1, 200));
        const PackedSequence query = random_text(rng, random_length(rng, 1, 6));
        const FmIndex index = build(text, {.k = 8});
        const io::LoadedIndex loaded = io::deserialize(io::serialize(index));
        ASSERT_EQ(search(loaded.index, query), search(index, query));
        ASSERT_EQ(count(loaded.index, query), count(index, query));
    }
    // A few through the actual command and the filesystem.
    for (int trial = 0; trial < 20; ++trial) {
        const PackedSequence text = random_text(rng, random_length(rng, 1, 200));
        const PackedSequence query = random_text(rng, random_length(rng, 1, 3));
        const fs::path p = dir_ / "t.saii";
        io::save_index(p, build(text, {.k = 8}));
        std::ostringstream o;
        ASSERT_EQ(cli::cmd_count(p, decode(query), o, err_), 0);
        const SearchRange r = search(build(text, {.k = 8}), query);
        EXPECT_EQ(o.str(), std::to_string(r.size()) + " " + std::to_string(r.low) + " " +
                               std::to_string(r.high) + "\n");
    }
}

TEST_F(CliTest, VerifyExhaustiveSmall) {
    cli::VerifyArgs args{.max_len = 5, .k = 2, .exhaustive = true, .quiet = true};
    EXPECT_EQ(cli::cmd_verify(args, out_, err_), 0) << out_.str();
    EXPECT_NE(out_.str().find("1364 passed, 0 failed"), std::string::npos) << out_.str();
}

TEST_F(CliTest, VerifyIsDeterministicPerSeed) {
    cli::VerifyArgs args{.max_len = 40, .trials = 30, .seed = 99};
    std::ostringstream a, b, c;
    EXPECT_EQ(cli::cmd_verify(args, a, err_), 0);
    EXPECT_EQ(cli::cmd_verify(args, b, err_), 0);
    EXPECT_EQ(a.str(), b.str());
    args.seed = 100;
    EXPECT_EQ(cli::cmd_verify(args, c, err_), 0);
    EXPECT_NE(a.str(), c.str());
    EXPECT_NE(a.str().find("seed=99"), std::string::npos);
}

TEST_F(CliTest, VerifyReportsInjectedFault) {
    cli::VerifyArgs args{.max_len = 20, .trials = 3, .seed = 5, .inject_fault = true};
    EXPECT_EQ(cli::cmd_verify(args, out_, err_), 2);
    const std::string report = out_.str();
    EXPECT_NE(report.find("FAIL trial=0"), std::string::npos) << report;
    EXPECT_NE(report.find("field=bwt"), std::string::npos) << report;
    EXPECT_NE(report.find("text="), std::string::npos) << report;
    EXPECT_NE(report.find("1 failed"), std::string::npos) << report;
}

TEST_F(CliTest, VerifyInputFile) {
    cli::VerifyArgs args{.input = write("in.fa", ">a\nACGCTTG\n>b\nGATTACA\n")};
    EXPECT_EQ(cli::cmd_verify(args, out_, err_), 0) << out_.str();
    EXPECT_NE(out_.str().find("2 passed"), std::string::npos);
}

TEST_F(CliTest, BenchModel) {
    cli::BenchArgs args{.lengths = {131072}};
    ASSERT_EQ(cli::cmd_bench(args, out_, err_), 0);
    EXPECT_EQ(out_.str(), "n,cycles_prefetch,cycles_baseline,wall_ms\n131072,2523136,4653056,21.026\n");

    std::ostringstream four;
    args.lengths = {16384, 32768, 65536, 131072};
    ASSERT_EQ(cli::cmd_bench(args, four, err_), 0);
    std::istringstream lines(four.str());
    std::string line;
    int rows = -1;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 4);
}

TEST_F(CliTest, BenchMeasureAndBoth) {
    cli::BenchArgs args{.lengths = {3000, 1000}, .mode = cli::BenchMode::measure, .seed = 3};
    ASSERT_EQ(cli::cmd_bench(args, out_, err_), 0);
    std::istringstream in(out_.str());
    std::string header, row;
    std::getline(in, header);
    EXPECT_EQ(header, "n,measured_ms");
    std::getline(in, row);
    EXPECT_EQ(row.substr(0, 5), "1000,");
    EXPECT_GT(std::stod(row.substr(5)), 0.0);
    EXPECT_NE(err_.str().find("seed=3"), std::string::npos);

    std::ostringstream both;
    args.mode = cli::BenchMode::both;
    ASSERT_EQ(cli::cmd_bench(args, both, err_), 0);
    EXPECT_EQ(both.str().substr(0, both.str().find('\n')),
              "n,cycles_prefetch,cycles_baseline,wall_ms,measured_ms");
}

TEST_F(CliTest, BenchRejectsInvalidParams) {
    cli::BenchArgs args{.lengths = {0}};
    EXPECT_EQ(cli::cmd_bench(args, out_, err_), 1);
    args.lengths = {1024};
    args.params.m = 0;
    EXPECT_EQ(cli::cmd_bench(args, out_, err_), 1);
}
