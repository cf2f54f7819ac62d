#pragma once

// Reference implementations used only by tests. Each one follows the
// textbook definition as directly as possible and shares no code with the
// library paths it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "pcbz/core.hpp"

namespace pcbz::oracle {

/// Builds every cyclic rotation explicitly, stable-sorts them by first byte
/// and returns the last column.
inline std::vector<std::uint8_t> rotation_sort_bwt(const std::vector<std::uint8_t>& s) {
    const std::size_t n = s.size();
    std::vector<std::vector<std::uint8_t>> rotations;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint8_t> r(s.begin() + static_cast<std::ptrdiff_t>(i), s.end());
        r.insert(r.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i));
        rotations.push_back(std::move(r));
    }
    std::stable_sort(rotations.begin(), rotations.end(),
                     [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<std::uint8_t> out;
    for (const auto& r : rotations) out.push_back(r.back());
    return out;
}

/// Cheaper equivalent for long strings: stable sort of rotation indices.
inline std::vector<std::uint8_t> index_sort_bwt(const std::vector<std::uint8_t>& s) {
    const std::size_t n = s.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });
    std::vector<std::uint8_t> out;
    for (std::size_t i : idx) out.push_back(s[(i + n - 1) % n]);
    return out;
}

/// Full lexicographic rotation sort (the canonical sentinel-free BWT).
inline std::vector<std::uint8_t> canonical_bwt(const std::vector<std::uint8_t>& s) {
    const std::size_t n = s.size();
    std::vector<std::vector<std::uint8_t>> rotations;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint8_t> r(s.begin() + static_cast<std::ptrdiff_t>(i), s.end());
        r.insert(r.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i));
        rotations.push_back(std::move(r));
    }
    std::sort(rotations.begin(), rotations.end());
    std::vector<std::uint8_t> out;
    for (const auto& r : rotations) out.push_back(r.back());
    return out;
}

/// -sum p log2 p over a sparse map of counts, accumulated in long double.
inline double entropy_from_counts(const std::map<std::uint32_t, std::uint64_t>& counts) {
    std::uint64_t total = 0;
    for (const auto& [t, c] : counts) total += c;
    if (total == 0) return 0.0;
    long double e = 0;
    for (const auto& [t, c] : counts) {
        if (c == 0) continue;
        const long double p = static_cast<long double>(c) / total;
        e -= p * std::log2(p);
    }
    return static_cast<double>(e);
}

inline std::map<std::uint32_t, std::uint64_t> pair_counts(const std::vector<std::uint8_t>& s) {
    std::map<std::uint32_t, std::uint64_t> m;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) ++m[s[i] * 256u + s[i + 1]];
    return m;
}

/// Neighbor lookup by explicit coordinates; anything off the top/left edge
/// reads as zero.
inline std::int64_t sample_or_zero(const Frame& f, std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0 || x >= f.width() || y >= f.height()) return 0;
    return f.samples()[static_cast<std::size_t>(y) * f.width() + static_cast<std::size_t>(x)];
}

/// The four base functions written with floating-point floor.
inline std::int64_t base_function(int f, std::int64_t a, std::int64_t b, std::int64_t c) {
    auto fl = [](std::int64_t num) { return static_cast<std::int64_t>(std::floor(num / 2.0)); };
    switch (f) {
        case 1: return a + b - c;
        case 2: return a + fl(b - c);
        case 3: return b + fl(a - c);
        default: return fl(a + b);
    }
}

/// Per-pixel prediction straight from the predictor table.
inline std::int64_t predict_pixel(const Frame& f, int intra_id, std::int64_t x, std::int64_t y) {
    if (intra_id == 0) return 0;
    const int fn = (intra_id - 1) % 4 + 1;
    const int family = (intra_id - 1) / 4;
    const std::int64_t px = f.geometry().pitch_x, py = f.geometry().pitch_y;
    const std::int64_t pixel = base_function(fn, sample_or_zero(f, x - 1, y), sample_or_zero(f, x, y - 1),
                                             sample_or_zero(f, x - 1, y - 1));
    const std::int64_t lenslet = base_function(fn, sample_or_zero(f, x - px, y), sample_or_zero(f, x, y - py),
                                               sample_or_zero(f, x - px, y - py));
    if (family == 0) return pixel;
    if (family == 1) return lenslet;
    return static_cast<std::int64_t>(std::floor((pixel + lenslet) / 2.0));
}

inline Frame residual(const Frame& f, int intra_id) {
    std::vector<std::uint16_t> out(f.size());
    for (std::int64_t y = 0; y < f.height(); ++y)
        for (std::int64_t x = 0; x < f.width(); ++x) {
            const std::int64_t d = sample_or_zero(f, x, y) - predict_pixel(f, intra_id, x, y);
            out[static_cast<std::size_t>(y) * f.width() + static_cast<std::size_t>(x)] =
                static_cast<std::uint16_t>(((d % 65536) + 65536) % 65536);
        }
    return Frame(f.width(), f.height(), std::move(out), f.geometry());
}

inline Frame random_frame(std::uint32_t w, std::uint32_t h, LensletGeometry g, std::mt19937_64& rng,
                          std::uint16_t max = 65535) {
    std::uniform_int_distribution<int> d(0, max);
    std::vector<std::uint16_t> s(static_cast<std::size_t>(w) * h);
    for (auto& v : s) v = static_cast<std::uint16_t>(d(rng));
    return Frame(w, h, std::move(s), g);
}

}  // namespace pcbz::oracle
