#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "pcbz/block_codec.hpp"

using namespace pcbz;

namespace {

std::vector<std::uint8_t> random_stream(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> s(n);
    for (auto& b : s) b = static_cast<std::uint8_t>(rng());
    return s;
}

}  // namespace

TEST(BlockPlanTest, Counts) {
    EXPECT_EQ(BlockPlan::for_stream(0, 10).block_count, 0u);
    EXPECT_EQ(BlockPlan::for_stream(1, 10).block_count, 1u);
    EXPECT_EQ(BlockPlan::for_stream(10, 10).block_count, 1u);
    EXPECT_EQ(BlockPlan::for_stream(11, 10).block_count, 2u);
    EXPECT_EQ(BlockPlan::for_stream(11, 10).block_length(1), 1u);
    EXPECT_THROW(BlockPlan::for_stream(5, 0), Error);
}

TEST(BlockCodecTest, EmptyStream) {
    const auto c = compress_blocks({}, 1024, 4);
    EXPECT_EQ(c.plan.block_count, 0u);
    EXPECT_TRUE(c.payloads.empty());
    EXPECT_TRUE(decompress_blocks(c, 4).empty());
}

TEST(BlockCodecTest, SingleByteAndTinyBlocks) {
    const std::vector<std::uint8_t> one{0xAB};
    EXPECT_EQ(decompress_blocks(compress_blocks(one, 1)), one);
    const auto s = random_stream(37, 1);
    const auto c = compress_blocks(s, 5, 3);
    EXPECT_EQ(c.plan.block_count, 8u);
    EXPECT_EQ(decompress_blocks(c, 2), s);
}

TEST(BlockCodecTest, ZerosTenMiB) {
    const std::vector<std::uint8_t> zeros(10u << 20, 0);
    const auto c = compress_blocks(zeros, 1u << 20, 4);
    ASSERT_EQ(c.plan.block_count, 10u);
    for (std::size_t i = 0; i < c.payloads.size(); ++i) {
        CompressedBlocks single;
        single.plan = BlockPlan::for_stream(1u << 20, 1u << 20);
        single.payloads = {c.payloads[i]};
        EXPECT_EQ(decompress_blocks(single), std::vector<std::uint8_t>(1u << 20, 0));
        EXPECT_EQ(c.payloads[i][0], 'B');
        EXPECT_EQ(c.payloads[i][1], 'Z');
        EXPECT_EQ(c.payloads[i][2], 'h');
    }
}

TEST(BlockCodecTest, RandomRoundTripAndDeterminism) {
    const auto s = random_stream(4u << 20, 2);
    const auto one = compress_blocks(s, 1u << 20, 1);
    const auto eight = compress_blocks(s, 1u << 20, 8);
    EXPECT_EQ(one, eight);
    EXPECT_EQ(decompress_blocks(one, 3), s);
}

TEST(BlockCodecTest, RepetitiveShrinks) {
    std::vector<std::uint8_t> s;
    for (int i = 0; i < 200000; ++i) s.push_back(static_cast<std::uint8_t>("abcabd"[i % 6]));
    const auto c = compress_blocks(s, 64 * 1024, 2);
    EXPECT_LT(c.compressed_bytes() * 50, s.size());
    EXPECT_EQ(decompress_blocks(c, 2), s);
}

TEST(BlockCodecTest, TruncatedPayloadReportsBlockIndex) {
    const auto s = random_stream(50000, 3);
    auto c = compress_blocks(s, 10000, 2);
    c.payloads[3].resize(c.payloads[3].size() / 2);
    try {
        decompress_blocks(c, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::block_decode);
        ASSERT_TRUE(e.where().block.has_value());
        EXPECT_EQ(*e.where().block, 3u);
    }
}

TEST(BlockCodecTest, MismatchedPlanRejected) {
    auto c = compress_blocks(random_stream(100, 4), 10);
    c.payloads.pop_back();
    EXPECT_THROW(decompress_blocks(c), Error);
}

TEST(BlockCodecTest, PayloadsDecodeWithSystemBzip2) {
    if (std::system("bzip2 --help >/dev/null 2>&1") != 0) GTEST_SKIP() << "bzip2 tool not available";
    const auto s = random_stream(30000, 5);
    const auto c = compress_blocks(s, 12000);
    const auto dir = std::filesystem::temp_directory_path() / "pcbz_interop";
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < c.payloads.size(); ++i) {
        const auto bz = dir / ("b" + std::to_string(i) + ".bz2");
        const auto out = dir / ("b" + std::to_string(i));
        {
            std::ofstream f(bz, std::ios::binary);
            f.write(reinterpret_cast<const char*>(c.payloads[i].data()), static_cast<std::streamsize>(c.payloads[i].size()));
        }
        ASSERT_EQ(std::system(("bzip2 -dc '" + bz.string() + "' > '" + out.string() + "'").c_str()), 0);
        std::ifstream f(out, std::ios::binary);
        std::vector<std::uint8_t> got((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        const auto off = c.plan.block_offset(i);
        EXPECT_EQ(got, std::vector<std::uint8_t>(s.begin() + static_cast<std::ptrdiff_t>(off),
                                                 s.begin() + static_cast<std::ptrdiff_t>(off + c.plan.block_length(i))));
    }
    std::filesystem::remove_all(dir);
}
