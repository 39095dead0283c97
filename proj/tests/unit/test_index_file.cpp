#include "saii/builder.hpp"
#include "saii/index_file.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace saii;
using saii::test::seq;

namespace {

// Re-seal a tampered buffer so only the semantic checks can reject it.
void reseal(std::vector<std::uint8_t>& bytes) {
    bytes.resize(bytes.size() - 4);
    const std::uint32_t crc = io::detail::crc32_of(bytes);
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(crc >> (8 * i)));
}

}  // namespace

TEST(IndexFile, ExampleLayout) {
    const auto bytes = io::serialize(build(seq("ACGCTTG"), {.k = 4}), io::kFlagPrefetch);
    ASSERT_EQ(bytes.size(), 60u + 2u + 3u * 32u + 4u);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "SAII");
    EXPECT_EQ(bytes[4], 1);   // version
    EXPECT_EQ(bytes[6], 1);   // flags
    EXPECT_EQ(bytes[8], 8);   // n
    EXPECT_EQ(bytes[16], 4);  // k
    EXPECT_EQ(bytes[20], 1);  // dollar_pos
    EXPECT_EQ(bytes[28 + 8], 1);   // C(C)
    EXPECT_EQ(bytes[28 + 16], 3);  // C(G)
    EXPECT_EQ(bytes[28 + 24], 5);  // C(T)
    EXPECT_EQ(bytes[60], 0x82);    // G $ A G
    EXPECT_EQ(bytes[61], 0x77);    // T C T C
}

TEST(IndexFile, RoundTripIsByteIdentical) {
    for (const auto& text : test::random_texts(61, 100, 1, 700)) {
        const auto bytes = io::serialize(build(text, {.k = 16}), 0);
        const io::LoadedIndex loaded = io::deserialize(bytes);
        EXPECT_EQ(loaded.flags, 0);
        ASSERT_EQ(io::serialize(loaded.index, loaded.flags), bytes);
    }
}

TEST(IndexFile, AnySingleByteCorruptionIsDetected) {
    const auto bytes = io::serialize(build(seq("GATTACAGATTACACCGT"), {.k = 4}), 0);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        auto bad = bytes;
        bad[i] ^= 0x5A;
        EXPECT_THROW(io::deserialize(bad), FormatError) << "byte " << i;
    }
    EXPECT_THROW(io::deserialize(std::span(bytes).first(bytes.size() - 1)), FormatError);
    EXPECT_THROW(io::deserialize(std::span(bytes).first(10)), FormatError);
}

TEST(IndexFile, SemanticChecksBehindValidCrc) {
    const auto good = io::serialize(build(seq("GATTACAGATTACACCGT"), {.k = 4}), 0);

    auto version = good;
    version[4] = 2;
    reseal(version);
    EXPECT_THROW(io::deserialize(version), FormatError);

    auto magic = good;
    magic[0] = 'X';
    reseal(magic);
    EXPECT_THROW(io::deserialize(magic), FormatError);

    auto checkpoint = good;
    checkpoint[checkpoint.size() - 4 - 8] ^= 1;  // last checkpoint, T count
    reseal(checkpoint);
    EXPECT_THROW(io::deserialize(checkpoint), FormatError);

    auto carray = good;
    carray[28 + 8] ^= 1;
    reseal(carray);
    EXPECT_THROW(io::deserialize(carray), FormatError);

    auto dollar = good;
    dollar[20] = 200;
    reseal(dollar);
    EXPECT_THROW(io::deserialize(dollar), FormatError);
}

TEST(IndexFile, SaveAndLoadThroughDisk) {
    const auto path = std::filesystem::temp_directory_path() / "saii_index_file_test.saii";
    const FmIndex index = build(seq("ACGCTTG"), {.k = 2});
    io::save_index(path, index, io::kFlagPrefetch);
    const io::LoadedIndex loaded = io::load_index(path);
    EXPECT_EQ(loaded.flags, io::kFlagPrefetch);
    EXPECT_TRUE(loaded.index.same_index(index));
    std::filesystem::remove(path);
    EXPECT_THROW(io::load_index(path), Error);
}
