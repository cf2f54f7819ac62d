#pragma once

// Text renderings shared by the command-line tool and its tests.

#include <cstdio>
#include <sstream>
#include <string>

#include "pcbz/container.hpp"
#include "pcbz/pipeline.hpp"

namespace pcbz {

inline std::string hex_byte(std::uint8_t b) {
    char buf[5];
    std::snprintf(buf, sizeof buf, "0x%02X", b);
    return buf;
}

/// Line-oriented `key value...` description of a container. Stable across
/// runs; one `frame` line per frame followed by its `block` lines.
inline std::string inspect_text(const ContainerView& v, std::uint64_t file_bytes) {
    std::ostringstream o;
    const auto& h = v.header;
    o << "magic PCBZ\n";
    o << "version " << int(h.version) << "\n";
    o << "flags " << hex_byte(h.flags) << "\n";
    o << "bit_depth " << int(h.bit_depth) << "\n";
    o << "width " << h.width << "\n";
    o << "height " << h.height << "\n";
    o << "frames " << h.frame_count << "\n";
    o << "pitch " << h.pitch_x << "x" << h.pitch_y << "\n";
    o << "block_size " << h.block_size << "\n";
    for (std::size_t f = 0; f < v.records.size(); ++f) {
        const auto& r = v.records[f];
        std::uint64_t total = 0;
        for (auto s : r.block_sizes) total += s;
        o << "frame " << f << " predictor " << hex_byte(r.predictor_byte) << " " << predictor_name(r.predictor())
          << " blocks " << r.block_sizes.size() << " compressed_bytes " << total << "\n";
        for (std::size_t b = 0; b < r.block_sizes.size(); ++b)
            o << "block " << f << " " << b << " " << r.block_sizes[b] << "\n";
    }
    o << "payload_bytes " << v.payload_bytes() << "\n";
    o << "overhead_bytes " << file_bytes - v.payload_bytes() << "\n";
    o << "container_bytes " << file_bytes << "\n";
    return o.str();
}

/// One-line summary printed after compression.
inline std::string summary_line(const CompressResult& r, const FrameStack& stack) {
    const Metrics m = size_metrics(r.container.size(), stack);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "frames=%zu width=%u height=%u container_bytes=%llu ratio=%.4f bits_per_dim=%.4f "
                  "select_ms=%.1f compress_ms=%.1f",
                  stack.size(), stack.width(), stack.height(), static_cast<unsigned long long>(m.container_bytes),
                  m.compression_ratio, m.bits_per_dim, r.select_ms, r.total_ms);
    return buf;
}

}  // namespace pcbz
