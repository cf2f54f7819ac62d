#pragma once

// Fixed-size block splitting with independent bzip2 streams per block.
//
// Each payload is a complete standard bzip2 stream ("BZh9..."), so any single
// block is decodable on its own by any conforming decoder. Block boundaries
// depend only on block_size, never on the worker count.

#include <bzlib.h>

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pcbz/core.hpp"
#include "pcbz/parallel.hpp"

namespace pcbz {

inline constexpr std::uint32_t kDefaultBlockSize = 4u << 20;

struct BlockPlan {
    std::uint64_t stream_length = 0;
    std::uint32_t block_size = kDefaultBlockSize;
    std::uint64_t block_count = 0;

    static BlockPlan for_stream(std::uint64_t length, std::uint32_t block_size) {
        if (block_size == 0) throw Error(Errc::invalid_argument, "block size must be >= 1");
        return {length, block_size, (length + block_size - 1) / block_size};
    }

    std::uint64_t block_offset(std::uint64_t i) const { return i * block_size; }
    std::uint64_t block_length(std::uint64_t i) const {
        const std::uint64_t off = block_offset(i);
        return std::min<std::uint64_t>(block_size, stream_length - off);
    }

    friend bool operator==(const BlockPlan&, const BlockPlan&) = default;
};

struct CompressedBlocks {
    BlockPlan plan;
    std::vector<std::vector<std::uint8_t>> payloads;

    std::uint64_t compressed_bytes() const {
        std::uint64_t n = 0;
        for (const auto& p : payloads) n += p.size();
        return n;
    }

    friend bool operator==(const CompressedBlocks&, const CompressedBlocks&) = default;
};

namespace detail {

inline constexpr int kBzBlockSize100k = 9;

inline std::vector<std::uint8_t> bz_compress(std::span<const std::uint8_t> in) {
    if (in.size() > std::numeric_limits<unsigned>::max() / 2)
        throw Error(Errc::invalid_argument, "block too large for one bzip2 stream");
    // Worst case expansion documented for bzip2: 1% + 600 bytes.
    unsigned cap = static_cast<unsigned>(in.size() + in.size() / 100 + 600);
    std::vector<std::uint8_t> out(cap);
    const int rc = BZ2_bzBuffToBuffCompress(reinterpret_cast<char*>(out.data()), &cap,
                                            const_cast<char*>(reinterpret_cast<const char*>(in.data())),
                                            static_cast<unsigned>(in.size()), kBzBlockSize100k, 0, 0);
    if (rc != BZ_OK) throw Error(Errc::invalid_argument, "bzip2 compression failed, code " + std::to_string(rc));
    out.resize(cap);
    return out;
}

inline void bz_decompress(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, std::size_t block) {
    unsigned produced = static_cast<unsigned>(out.size());
    // BuffToBuff rejects a zero-capacity destination even for empty streams.
    std::uint8_t dummy = 0;
    char* dst = out.empty() ? reinterpret_cast<char*>(&dummy) : reinterpret_cast<char*>(out.data());
    if (out.empty()) produced = 1;
    const int rc = BZ2_bzBuffToBuffDecompress(dst, &produced,
                                              const_cast<char*>(reinterpret_cast<const char*>(in.data())),
                                              static_cast<unsigned>(in.size()), 0, 0);
    if (rc != BZ_OK)
        throw Error(Errc::block_decode, "bzip2 decode failed, code " + std::to_string(rc), {.block = block});
    if (produced != out.size())
        throw Error(Errc::block_decode,
                    "decoded " + std::to_string(produced) + " bytes, expected " + std::to_string(out.size()),
                    {.block = block});
}

}  // namespace detail

inline CompressedBlocks compress_blocks(std::span<const std::uint8_t> stream, std::uint32_t block_size,
                                        unsigned workers = 1) {
    CompressedBlocks out;
    out.plan = BlockPlan::for_stream(stream.size(), block_size);
    out.payloads.resize(out.plan.block_count);
    parallel_for(out.payloads.size(), workers, [&](std::size_t i) {
        out.payloads[i] = detail::bz_compress(stream.subspan(out.plan.block_offset(i), out.plan.block_length(i)));
    });
    return out;
}

/// Decodes every block into its slot of the output. Errors carry the index
/// of the failing block.
inline std::vector<std::uint8_t> decompress_blocks(const CompressedBlocks& blocks, unsigned workers = 1) {
    const BlockPlan& plan = blocks.plan;
    if (plan.block_size == 0 || blocks.payloads.size() != plan.block_count ||
        plan.block_count != BlockPlan::for_stream(plan.stream_length, plan.block_size).block_count)
        throw Error(Errc::corrupt_container, "block table does not match block plan");
    std::vector<std::uint8_t> out(plan.stream_length);
    parallel_for(blocks.payloads.size(), workers, [&](std::size_t i) {
        detail::bz_decompress(blocks.payloads[i],
                              std::span(out).subspan(plan.block_offset(i), plan.block_length(i)), i);
    });
    return out;
}

}  // namespace pcbz
