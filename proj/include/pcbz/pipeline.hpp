#pragma once

// End-to-end compression of frame stacks:
//   select predictor -> residual -> big-endian bytes -> bzip2 blocks -> container
// and the exact inverse.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcbz/block_codec.hpp"
#include "pcbz/container.hpp"
#include "pcbz/core.hpp"
#include "pcbz/criterion.hpp"
#include "pcbz/parallel.hpp"
#include "pcbz/predictors.hpp"

namespace pcbz {

struct CompressOptions {
    /// Candidate predictors for the criterion. Empty means all intra ids,
    /// plus their temporal variants when temporal mode is on.
    std::vector<PredictorSpec> candidates;
    /// Bypasses the criterion when set.
    std::optional<PredictorSpec> forced;
    std::uint32_t block_size = kDefaultBlockSize;
    unsigned workers = 1;
    bool temporal = true;
};

struct CompressResult {
    std::vector<std::uint8_t> container;
    std::vector<PredictorSpec> predictors;
    /// Criterion reports, absent for frames with a forced predictor.
    std::vector<std::optional<EntropyReport>> reports;
    double select_ms = 0.0;
    double encode_ms = 0.0;
    double total_ms = 0.0;
};

struct Metrics {
    std::uint64_t uncompressed_bytes = 0;
    std::uint64_t container_bytes = 0;
    double compression_ratio = 0.0;
    double bits_per_dim = 0.0;
    double compress_ms = 0.0;
    double decompress_ms = 0.0;
    bool lossless = false;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Temporal candidates degrade to their intra part where no previous frame
/// is usable.
inline PredictorSpec usable(PredictorSpec s, bool temporal_ok) {
    return temporal_ok ? s : PredictorSpec{false, s.intra_id};
}

inline std::vector<PredictorSpec> frame_candidates(const CompressOptions& opts, bool temporal_ok) {
    if (opts.candidates.empty()) return default_candidates(temporal_ok);
    std::vector<PredictorSpec> c;
    c.reserve(opts.candidates.size());
    for (auto s : opts.candidates) c.push_back(usable(s, temporal_ok));
    return c;
}

}  // namespace detail

inline CompressResult compress_stack_detailed(const FrameStack& stack, const CompressOptions& opts) {
    if (stack.empty()) throw Error(Errc::invalid_argument, "empty stack");
    if (opts.workers == 0) throw Error(Errc::invalid_argument, "workers must be >= 1");
    if (opts.forced) encode_predictor_spec(*opts.forced);
    for (auto s : opts.candidates) encode_predictor_spec(s);
    const auto& g = stack.geometry();
    if (g.pitch_x > 0xFFFF || g.pitch_y > 0xFFFF)
        throw Error(Errc::invalid_argument, "lenslet pitch exceeds 65535");

    const auto t_start = detail::Clock::now();
    CompressResult res;
    std::vector<FrameEntry> entries(stack.size());
    res.predictors.resize(stack.size());
    res.reports.resize(stack.size());
    ResidualFrame residual;
    for (std::size_t f = 0; f < stack.size(); ++f) {
        const Frame& frame = stack[f];
        const Frame* prev = f > 0 ? &stack[f - 1] : nullptr;
        const bool temporal_ok = opts.temporal && prev != nullptr;

        auto t0 = detail::Clock::now();
        PredictorSpec spec;
        if (opts.forced) {
            spec = detail::usable(*opts.forced, temporal_ok);
        } else {
            const auto cands = detail::frame_candidates(opts, temporal_ok);
            res.reports[f] = select_predictor(frame, prev, cands, opts.workers);
            spec = res.reports[f]->selected;
        }
        res.select_ms += detail::ms_since(t0);

        t0 = detail::Clock::now();
        residual = apply_predictor(frame, prev, spec);
        const ByteString bytes = serialize_frame(residual);
        entries[f] = {spec, compress_blocks(bytes, opts.block_size, opts.workers)};
        res.predictors[f] = spec;
        res.encode_ms += detail::ms_since(t0);
    }

    ContainerHeader meta;
    meta.width = stack.width();
    meta.height = stack.height();
    meta.pitch_x = static_cast<std::uint16_t>(g.pitch_x);
    meta.pitch_y = static_cast<std::uint16_t>(g.pitch_y);
    meta.block_size = opts.block_size;
    res.container = write_container(meta, entries);
    res.total_ms = detail::ms_since(t_start);
    return res;
}

inline std::vector<std::uint8_t> compress_stack(const FrameStack& stack, const CompressOptions& opts = {}) {
    return compress_stack_detailed(stack, opts).container;
}

/// Frames are restored in order; a temporal frame needs its reconstructed
/// predecessor. Blocks within a frame decode in parallel.
inline FrameStack decompress_stack(std::span<const std::uint8_t> container, unsigned workers = 1) {
    const ContainerView view = read_container(container);
    const auto& h = view.header;
    const LensletGeometry geometry(h.pitch_x, h.pitch_y);
    std::vector<Frame> frames;
    frames.reserve(h.frame_count);
    for (std::size_t f = 0; f < view.records.size(); ++f) {
        std::vector<std::uint8_t> bytes;
        try {
            bytes = decompress_blocks(view.frame_blocks(f), workers);
        } catch (const Error& e) {
            ErrorLocation loc = e.where();
            loc.frame = f;
            throw Error(e.code(), e.message(), loc);
        }
        const ResidualFrame residual = deserialize_frame(bytes, h.width, h.height, geometry);
        const Frame* prev = f > 0 ? &frames.back() : nullptr;
        frames.push_back(invert_predictor(residual, prev, view.records[f].predictor()));
    }
    return FrameStack(std::move(frames));
}

/// Size-only metrics: ratio = raw / container, bits/dim = 8 * container /
/// samples (16.0 for an uncompressed 16-bit frame).
inline Metrics size_metrics(std::uint64_t container_bytes, const FrameStack& stack) {
    Metrics m;
    m.uncompressed_bytes = stack.raw_bytes();
    m.container_bytes = container_bytes;
    m.compression_ratio = static_cast<double>(m.uncompressed_bytes) / static_cast<double>(m.container_bytes);
    m.bits_per_dim = 8.0 * static_cast<double>(m.container_bytes) /
                     (static_cast<double>(stack.width()) * stack.height() * stack.size());
    return m;
}

/// Ratio and bits/dim of `container` against `stack`, timing one
/// decompression and checking it reproduces the stack.
inline Metrics measure(std::span<const std::uint8_t> container, const FrameStack& stack, unsigned workers = 1,
                       double compress_ms = 0.0) {
    Metrics m = size_metrics(container.size(), stack);
    m.compress_ms = compress_ms;
    const auto t0 = detail::Clock::now();
    const FrameStack back = decompress_stack(container, workers);
    m.decompress_ms = detail::ms_since(t0);
    m.lossless = back == stack;
    return m;
}

inline Metrics compress_and_measure(const FrameStack& stack, const CompressOptions& opts,
                                    CompressResult* result = nullptr) {
    CompressResult r = compress_stack_detailed(stack, opts);
    Metrics m = measure(r.container, stack, opts.workers, r.total_ms);
    if (result) *result = std::move(r);
    return m;
}

}  // namespace pcbz
