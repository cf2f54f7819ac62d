#pragma once

// On-disk archive layout (all integers little-endian):
//
//   header (28 bytes)
//     0  magic "PCBZ"          4  version u8 = 1      5  flags u8
//     6  bit_depth u8 = 16     7  reserved u8 = 0     8  width u32
//    12  height u32           16  frame_count u32    20  pitch_x u16
//    22  pitch_y u16          24  block_size u32
//   frame_count records, each
//     predictor u8, reserved 3 x u8 = 0, block_count u32,
//     block_count x u64 compressed block sizes
//   payload: every block of every frame, frame-major then block-minor
//
// flags bit 0 is set when any frame uses the temporal predictor. Frame 0
// never does. See FORMAT.md for an annotated example.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcbz/block_codec.hpp"
#include "pcbz/core.hpp"

namespace pcbz {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'P', 'C', 'B', 'Z'};
inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::uint8_t kBitDepth = 16;
inline constexpr std::size_t kHeaderBytes = 28;
inline constexpr std::uint8_t kFlagTemporal = 0x01;

struct ContainerHeader {
    std::uint8_t version = kFormatVersion;
    std::uint8_t flags = 0;
    std::uint8_t bit_depth = kBitDepth;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t frame_count = 0;
    std::uint16_t pitch_x = 1;
    std::uint16_t pitch_y = 1;
    std::uint32_t block_size = kDefaultBlockSize;

    /// Uncompressed bytes of one frame's serialized residual.
    std::uint64_t frame_stream_bytes() const { return 2ull * width * height; }

    friend bool operator==(const ContainerHeader&, const ContainerHeader&) = default;
};

struct FrameRecord {
    std::uint8_t predictor_byte = 0;
    std::vector<std::uint64_t> block_sizes;

    PredictorSpec predictor() const { return decode_predictor_spec(predictor_byte); }

    friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

/// What the writer packs for one frame.
struct FrameEntry {
    PredictorSpec predictor;
    CompressedBlocks blocks;
};

/// Parsed container. Payload slices point into the buffer handed to
/// read_container and are valid only as long as it is.
struct ContainerView {
    ContainerHeader header;
    std::vector<FrameRecord> records;
    std::vector<std::vector<std::span<const std::uint8_t>>> payloads;

    std::uint64_t payload_bytes() const {
        std::uint64_t n = 0;
        for (const auto& r : records)
            for (auto s : r.block_sizes) n += s;
        return n;
    }

    /// Rebuilds the codec-side view of one frame (copies the payload).
    CompressedBlocks frame_blocks(std::size_t frame) const {
        CompressedBlocks b;
        b.plan = BlockPlan::for_stream(header.frame_stream_bytes(), header.block_size);
        for (auto s : payloads.at(frame)) b.payloads.emplace_back(s.begin(), s.end());
        return b;
    }
};

/// Exact container overhead: header plus per-frame records.
inline std::uint64_t container_overhead(std::uint64_t frames, std::uint64_t blocks_per_frame) {
    return kHeaderBytes + frames * (8 + 8 * blocks_per_frame);
}

namespace detail {

class LeWriter {
public:
    explicit LeWriter(std::vector<std::uint8_t>& out) : out_(out) {}
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) { put(v, 2); }
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }

private:
    void put(std::uint64_t v, int n) {
        for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    std::vector<std::uint8_t>& out_;
};

class LeReader {
public:
    explicit LeReader(std::span<const std::uint8_t> in) : in_(in) {}
    std::uint8_t u8(const char* what) { return static_cast<std::uint8_t>(get(1, what)); }
    std::uint16_t u16(const char* what) { return static_cast<std::uint16_t>(get(2, what)); }
    std::uint32_t u32(const char* what) { return static_cast<std::uint32_t>(get(4, what)); }
    std::uint64_t u64(const char* what) { return get(8, what); }
    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return in_.size() - pos_; }

    ErrorLocation frame_loc;

private:
    std::uint64_t get(std::size_t n, const char* what) {
        if (remaining() < n) {
            ErrorLocation loc = frame_loc;
            loc.offset = pos_;
            throw Error(Errc::corrupt_container, std::string("truncated while reading ") + what, loc);
        }
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
        pos_ += n;
        return v;
    }
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Serializes header, records and payloads. `meta` supplies geometry and
/// block size; frame_count and flags are derived from `frames`.
inline std::vector<std::uint8_t> write_container(const ContainerHeader& meta, std::span<const FrameEntry> frames) {
    if (frames.empty()) throw Error(Errc::invalid_record, "container needs at least one frame");
    if (frames.front().predictor.temporal)
        throw Error(Errc::invalid_record, "frame 0 cannot use a temporal predictor", {.frame = 0});
    if (meta.width == 0 || meta.height == 0 || meta.pitch_x == 0 || meta.pitch_y == 0 || meta.block_size == 0)
        throw Error(Errc::invalid_record, "header fields must be positive");

    const BlockPlan plan = BlockPlan::for_stream(meta.frame_stream_bytes(), meta.block_size);
    std::uint8_t flags = 0;
    std::uint64_t payload = 0;
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const auto& b = frames[f].blocks;
        if (b.plan != plan || b.payloads.size() != plan.block_count)
            throw Error(Errc::invalid_record, "block table does not match header geometry", {.frame = f});
        if (frames[f].predictor.temporal) flags |= kFlagTemporal;
        payload += b.compressed_bytes();
    }

    std::vector<std::uint8_t> out;
    out.reserve(container_overhead(frames.size(), plan.block_count) + payload);
    detail::LeWriter w(out);
    for (std::uint8_t c : kMagic) w.u8(c);
    w.u8(kFormatVersion);
    w.u8(flags);
    w.u8(kBitDepth);
    w.u8(0);
    w.u32(meta.width);
    w.u32(meta.height);
    w.u32(static_cast<std::uint32_t>(frames.size()));
    w.u16(meta.pitch_x);
    w.u16(meta.pitch_y);
    w.u32(meta.block_size);
    for (const auto& fe : frames) {
        w.u8(encode_predictor_spec(fe.predictor));
        w.u8(0);
        w.u8(0);
        w.u8(0);
        w.u32(static_cast<std::uint32_t>(fe.blocks.payloads.size()));
        for (const auto& p : fe.blocks.payloads) w.u64(p.size());
    }
    for (const auto& fe : frames)
        for (const auto& p : fe.blocks.payloads) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline ContainerView read_container(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin()))
        throw Error(Errc::not_a_container, "missing PCBZ magic");
    detail::LeReader r(bytes.subspan(kMagic.size()));
    ContainerView v;
    auto& h = v.header;
    h.version = r.u8("version");
    if (h.version != kFormatVersion)
        throw Error(Errc::unsupported_version, "format version " + std::to_string(h.version));
    h.flags = r.u8("flags");
    h.bit_depth = r.u8("bit depth");
    if (h.bit_depth != kBitDepth)
        throw Error(Errc::unsupported_version, "bit depth " + std::to_string(h.bit_depth));
    r.u8("reserved");
    h.width = r.u32("width");
    h.height = r.u32("height");
    h.frame_count = r.u32("frame count");
    h.pitch_x = r.u16("pitch x");
    h.pitch_y = r.u16("pitch y");
    h.block_size = r.u32("block size");
    if (h.width == 0 || h.height == 0 || h.frame_count == 0 || h.pitch_x == 0 || h.pitch_y == 0 ||
        h.block_size == 0)
        throw Error(Errc::corrupt_header, "zero-valued header field");

    const std::uint64_t expected_blocks = BlockPlan::for_stream(h.frame_stream_bytes(), h.block_size).block_count;
    bool temporal_seen = false;
    v.records.reserve(std::min<std::size_t>(h.frame_count, r.remaining() / 8));
    for (std::uint32_t f = 0; f < h.frame_count; ++f) {
        r.frame_loc = {.frame = f};
        FrameRecord rec;
        rec.predictor_byte = r.u8("predictor byte");
        PredictorSpec spec;
        try {
            spec = decode_predictor_spec(rec.predictor_byte);
        } catch (const Error& e) {
            throw Error(Errc::corrupt_header, e.message(), {.frame = f});
        }
        if (f == 0 && spec.temporal)
            throw Error(Errc::corrupt_header, "frame 0 has the temporal flag", {.frame = 0});
        temporal_seen |= spec.temporal;
        for (int i = 0; i < 3; ++i) r.u8("record reserved");
        const std::uint32_t count = r.u32("block count");
        if (count != expected_blocks)
            throw Error(Errc::corrupt_header,
                        "block count " + std::to_string(count) + ", geometry implies " +
                            std::to_string(expected_blocks),
                        {.frame = f});
        rec.block_sizes.resize(count);
        for (auto& s : rec.block_sizes) s = r.u64("block size");
        v.records.push_back(std::move(rec));
    }
    if (((h.flags & kFlagTemporal) != 0) != temporal_seen)
        throw Error(Errc::corrupt_header, "temporal flag disagrees with frame records");

    std::size_t pos = kMagic.size() + r.offset();
    v.payloads.resize(v.records.size());
    for (std::size_t f = 0; f < v.records.size(); ++f) {
        for (std::size_t b = 0; b < v.records[f].block_sizes.size(); ++b) {
            const std::uint64_t len = v.records[f].block_sizes[b];
            if (len > bytes.size() - pos)
                throw Error(Errc::corrupt_container, "payload truncated", {.frame = f, .block = b, .offset = pos});
            v.payloads[f].push_back(bytes.subspan(pos, static_cast<std::size_t>(len)));
            pos += static_cast<std::size_t>(len);
        }
    }
    if (pos != bytes.size())
        throw Error(Errc::corrupt_container,
                    std::to_string(bytes.size() - pos) + " trailing bytes after payload", {.offset = pos});
    return v;
}

}  // namespace pcbz
