#pragma once

// Causal intra-frame predictors over pixel-adjacent, lenslet-stride and
// combined (phase-space) neighbor sets, plus the temporal delta.
//
// Residuals are mapped to the positive interval by wrapping modulo 2^16, so
// predict/unpredict are exact inverses for every input. Out-of-bounds
// neighbors read as 0.

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <string>
#include <type_traits>

#include "pcbz/core.hpp"

namespace pcbz {

/// Which neighbor system a triple comes from.
enum class NeighborMode { pixel_adjacent, lenslet_stride };

/// A = left-type, B = top-type, C = top-left-type neighbor.
struct NeighborTriple {
    std::int32_t a = 0;
    std::int32_t b = 0;
    std::int32_t c = 0;

    friend bool operator==(const NeighborTriple&, const NeighborTriple&) = default;
};

namespace detail {

/// Integer division rounding toward negative infinity.
constexpr std::int32_t floor_div2(std::int32_t v) noexcept { return v >> 1; }

template <int F>
constexpr std::int32_t base_predict(std::int32_t a, std::int32_t b, std::int32_t c) noexcept {
    static_assert(F >= 1 && F <= 4);
    if constexpr (F == 1) return a + b - c;
    else if constexpr (F == 2) return a + floor_div2(b - c);
    else if constexpr (F == 3) return b + floor_div2(a - c);
    else return floor_div2(a + b);
}

inline void check_intra_id(int intra_id) {
    if (intra_id < 0 || intra_id > kMaxIntraId)
        throw Error(Errc::invalid_spec, "intra id " + std::to_string(intra_id) + " out of range");
}

// Runs `op(index, prediction)` over the frame in row-major order. `src` is
// read through `read(index)`, which may alias the output of `op` as long as
// only already-visited pixels are read (true for every causal neighbor).
// Pixels whose neighbors are all in bounds take an unchecked path, handed
// to `run(index, count)` when one is given.
template <int F, int Family, class Read, class Op, class Run = std::nullptr_t>
void scan(std::uint32_t w, std::uint32_t h, LensletGeometry g, Read&& read, Op&& op, Run&& run = nullptr) {
    const std::int64_t px = g.pitch_x;
    const std::int64_t py = g.pitch_y;
    const std::int64_t min_x = Family == 0 ? 1 : Family == 1 ? px : std::max<std::int64_t>(1, px);
    const std::int64_t min_y = Family == 0 ? 1 : Family == 1 ? py : std::max<std::int64_t>(1, py);
    auto sample = [&](std::int64_t x, std::int64_t y) -> std::int32_t {
        return (x < 0 || y < 0) ? 0 : static_cast<std::int32_t>(read(static_cast<std::size_t>(y) * w + x));
    };
    auto at = [&](std::size_t i) -> std::int32_t { return static_cast<std::int32_t>(read(i)); };
    const std::size_t up = w;
    const std::size_t lup = static_cast<std::size_t>(py) * w;
    const std::size_t left = static_cast<std::size_t>(px);
    std::size_t idx = 0;
    for (std::int64_t y = 0; y < h; ++y) {
        const std::int64_t checked_end = y < min_y ? std::int64_t{w} : std::min<std::int64_t>(w, min_x);
        for (std::int64_t x = 0; x < checked_end; ++x, ++idx) {
            std::int32_t pred;
            if constexpr (Family == 0) {
                pred = base_predict<F>(sample(x - 1, y), sample(x, y - 1), sample(x - 1, y - 1));
            } else if constexpr (Family == 1) {
                pred = base_predict<F>(sample(x - px, y), sample(x, y - py), sample(x - px, y - py));
            } else {
                const std::int32_t p = base_predict<F>(sample(x - 1, y), sample(x, y - 1), sample(x - 1, y - 1));
                const std::int32_t l = base_predict<F>(sample(x - px, y), sample(x, y - py), sample(x - px, y - py));
                pred = floor_div2(p + l);
            }
            op(idx, pred);
        }
        if constexpr (!std::is_null_pointer_v<std::remove_cvref_t<Run>>) {
            const auto count = static_cast<std::size_t>(w - checked_end);
            if (count > 0) run(idx, count);
            idx += count;
            continue;
        }
        for (std::int64_t x = checked_end; x < w; ++x, ++idx) {
            std::int32_t pred;
            if constexpr (Family == 0) {
                pred = base_predict<F>(at(idx - 1), at(idx - up), at(idx - up - 1));
            } else if constexpr (Family == 1) {
                pred = base_predict<F>(at(idx - left), at(idx - lup), at(idx - lup - left));
            } else {
                const std::int32_t p = base_predict<F>(at(idx - 1), at(idx - up), at(idx - up - 1));
                const std::int32_t l = base_predict<F>(at(idx - left), at(idx - lup), at(idx - lup - left));
                pred = floor_div2(p + l);
            }
            op(idx, pred);
        }
    }
}

// Residuals for `count` pixels starting at `src`, all neighbors in bounds.
// Offsets are distances back from the current pixel.
template <int F, int Family>
void predict_run(const std::uint16_t* __restrict src, std::uint16_t* __restrict dst, std::size_t count,
                 std::ptrdiff_t up, std::ptrdiff_t left, std::ptrdiff_t lup) {
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
        auto at = [&](std::ptrdiff_t back) { return static_cast<std::int32_t>(src[k - back]); };
        std::int32_t pred;
        if constexpr (Family == 0) {
            pred = base_predict<F>(at(1), at(up), at(up + 1));
        } else if constexpr (Family == 1) {
            pred = base_predict<F>(at(left), at(lup), at(lup + left));
        } else {
            pred = floor_div2(base_predict<F>(at(1), at(up), at(up + 1)) +
                              base_predict<F>(at(left), at(lup), at(lup + left)));
        }
        dst[k] = static_cast<std::uint16_t>(static_cast<std::uint32_t>(src[k] - pred));
    }
}

template <class Fn>
void dispatch_intra(int intra_id, Fn&& fn) {
    switch (intra_id) {
        case 1: fn.template operator()<1, 0>(); break;
        case 2: fn.template operator()<2, 0>(); break;
        case 3: fn.template operator()<3, 0>(); break;
        case 4: fn.template operator()<4, 0>(); break;
        case 5: fn.template operator()<1, 1>(); break;
        case 6: fn.template operator()<2, 1>(); break;
        case 7: fn.template operator()<3, 1>(); break;
        case 8: fn.template operator()<4, 1>(); break;
        case 9: fn.template operator()<1, 2>(); break;
        case 10: fn.template operator()<2, 2>(); break;
        case 11: fn.template operator()<3, 2>(); break;
        case 12: fn.template operator()<4, 2>(); break;
        default: check_intra_id(intra_id);
    }
}

}  // namespace detail

/// Raw (signed) prediction of base function f_id in [1,4].
inline std::int32_t predict_value(int f_id, NeighborTriple t) {
    switch (f_id) {
        case 1: return detail::base_predict<1>(t.a, t.b, t.c);
        case 2: return detail::base_predict<2>(t.a, t.b, t.c);
        case 3: return detail::base_predict<3>(t.a, t.b, t.c);
        case 4: return detail::base_predict<4>(t.a, t.b, t.c);
        default: throw Error(Errc::invalid_spec, "predictor function " + std::to_string(f_id) + " out of range");
    }
}

inline NeighborTriple gather_neighbors(const Frame& frame, std::int64_t x, std::int64_t y, NeighborMode mode) {
    if (x < 0 || y < 0 || x >= frame.width() || y >= frame.height())
        throw Error(Errc::invalid_argument, "coordinate outside frame");
    const std::int64_t dx = mode == NeighborMode::pixel_adjacent ? 1 : frame.geometry().pitch_x;
    const std::int64_t dy = mode == NeighborMode::pixel_adjacent ? 1 : frame.geometry().pitch_y;
    auto get = [&](std::int64_t xx, std::int64_t yy) -> std::int32_t {
        if (xx < 0 || yy < 0) return 0;
        return frame.at(static_cast<std::uint32_t>(xx), static_cast<std::uint32_t>(yy));
    };
    return {get(x - dx, y), get(x, y - dy), get(x - dx, y - dy)};
}

/// Residual of the single pixel (x, y); equals predict_frame(frame, id).at(x, y).
inline std::uint16_t residual_at(const Frame& frame, int intra_id, std::uint32_t x, std::uint32_t y) {
    detail::check_intra_id(intra_id);
    const std::int32_t sample = frame.at(x, y);
    if (intra_id == 0) return static_cast<std::uint16_t>(sample);
    const int f = (intra_id - 1) % 4 + 1;
    const int family = (intra_id - 1) / 4;
    const std::int32_t p = predict_value(f, gather_neighbors(frame, x, y, NeighborMode::pixel_adjacent));
    const std::int32_t l = predict_value(f, gather_neighbors(frame, x, y, NeighborMode::lenslet_stride));
    const std::int32_t pred = family == 0 ? p : family == 1 ? l : detail::floor_div2(p + l);
    return static_cast<std::uint16_t>(static_cast<std::uint32_t>(sample - pred));
}

/// Writes the residual of `frame` under `intra_id` into `out`, reusing its
/// storage. `out` must not alias `frame`.
inline void predict_frame_into(const Frame& frame, int intra_id, ResidualFrame& out) {
    detail::check_intra_id(intra_id);
    if (!out.same_shape(frame)) out = Frame(frame.width(), frame.height(), frame.geometry());
    const std::uint16_t* src = frame.samples().data();
    std::uint16_t* dst = out.samples().data();
    if (intra_id == 0) {
        std::copy(src, src + frame.size(), dst);
        return;
    }
    const auto up = static_cast<std::ptrdiff_t>(frame.width());
    const auto left = static_cast<std::ptrdiff_t>(frame.geometry().pitch_x);
    const auto lup = static_cast<std::ptrdiff_t>(frame.geometry().pitch_y) * up;
    detail::dispatch_intra(intra_id, [&]<int F, int Family>() {
        detail::scan<F, Family>(
            frame.width(), frame.height(), frame.geometry(), [src](std::size_t i) { return src[i]; },
            [src, dst](std::size_t i, std::int32_t pred) {
                dst[i] = static_cast<std::uint16_t>(static_cast<std::uint32_t>(src[i] - pred));
            },
            [&](std::size_t i, std::size_t count) {
                detail::predict_run<F, Family>(src + i, dst + i, count, up, left, lup);
            });
    });
}

inline ResidualFrame predict_frame(const Frame& frame, int intra_id) {
    ResidualFrame out(frame.width(), frame.height(), frame.geometry());
    predict_frame_into(frame, intra_id, out);
    return out;
}

/// Exact inverse of predict_frame. Reconstructs in scan order so each
/// prediction sees only already-restored samples.
inline Frame unpredict_frame(const ResidualFrame& residual, int intra_id) {
    detail::check_intra_id(intra_id);
    Frame out = residual;
    if (intra_id == 0) return out;
    std::uint16_t* dst = out.samples().data();
    detail::dispatch_intra(intra_id, [&]<int F, int Family>() {
        detail::scan<F, Family>(
            out.width(), out.height(), out.geometry(), [dst](std::size_t i) { return dst[i]; },
            [dst](std::size_t i, std::int32_t pred) {
                dst[i] = static_cast<std::uint16_t>(static_cast<std::uint32_t>(dst[i] + pred));
            });
    });
    return out;
}

/// (curr - prev) mod 2^16, pixelwise.
inline Frame temporal_delta(const Frame& curr, const Frame& prev) {
    if (!curr.same_shape(prev)) throw Error(Errc::shape_mismatch, "temporal delta needs equal shapes");
    Frame out = curr;
    auto& d = out.samples();
    const auto& p = prev.samples();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<std::uint16_t>(d[i] - p[i]);
    return out;
}

inline Frame temporal_undelta(const Frame& delta, const Frame& prev) {
    if (!delta.same_shape(prev)) throw Error(Errc::shape_mismatch, "temporal undelta needs equal shapes");
    Frame out = delta;
    auto& d = out.samples();
    const auto& p = prev.samples();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<std::uint16_t>(d[i] + p[i]);
    return out;
}

/// Full forward transform for one frame: optional temporal delta against
/// `prev`, then intra prediction.
inline ResidualFrame apply_predictor(const Frame& frame, const Frame* prev, PredictorSpec spec) {
    encode_predictor_spec(spec);
    if (!spec.temporal) return predict_frame(frame, spec.intra_id);
    if (prev == nullptr) throw Error(Errc::invalid_candidate, "temporal predictor requires a previous frame");
    return predict_frame(temporal_delta(frame, *prev), spec.intra_id);
}

inline Frame invert_predictor(const ResidualFrame& residual, const Frame* prev, PredictorSpec spec) {
    encode_predictor_spec(spec);
    Frame intra = unpredict_frame(residual, spec.intra_id);
    if (!spec.temporal) return intra;
    if (prev == nullptr) throw Error(Errc::invalid_candidate, "temporal predictor requires a previous frame");
    return temporal_undelta(intra, *prev);
}

}  // namespace pcbz
