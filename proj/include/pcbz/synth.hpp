#pragma once

// Synthetic light-field frames for tests and benchmarks.
//
// smooth_lenslet renders a band-limited random 4D field over (lenslet
// column, lenslet row, intra-lenslet u, v) under a circular aperture, so
// both neighboring pixels and same-offset pixels of neighboring lenslets are
// correlated. beads renders sparse bright disks on a dark background. Both
// then receive optional shot noise and Gaussian read noise.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pcbz/core.hpp"
#include "pcbz/parallel.hpp"

namespace pcbz {

enum class SynthMode { smooth_lenslet, beads };

inline const char* synth_mode_name(SynthMode m) {
    return m == SynthMode::smooth_lenslet ? "smooth_lenslet" : "beads";
}

inline SynthMode parse_synth_mode(const std::string& s) {
    if (s == "smooth_lenslet") return SynthMode::smooth_lenslet;
    if (s == "beads") return SynthMode::beads;
    throw Error(Errc::invalid_argument, "unknown synth mode '" + s + "'");
}

struct SynthParams {
    std::uint32_t width = 150;
    std::uint32_t height = 150;
    std::uint32_t pitch_x = 15;
    std::uint32_t pitch_y = 15;
    SynthMode mode = SynthMode::smooth_lenslet;
    /// Peak signal above background, in counts.
    double signal_amplitude = 20000.0;
    /// Gaussian read noise standard deviation, in counts.
    double noise_sigma = 0.0;
    /// Counts per detected photon; 0 disables shot noise.
    double photon_scale = 0.0;
    /// Dark offset added to every pixel, in counts.
    double background = 100.0;
    std::uint32_t frames = 1;
    /// Translation of the scene per frame, in sensor pixels along x.
    double drift = 0.0;
    std::uint64_t seed = 1;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

struct Wave {
    double fx, fy, fu, fv, phase, weight;
};

struct Bead {
    double x, y, radius, brightness;
};

inline void validate(const SynthParams& p) {
    if (p.width == 0 || p.height == 0 || p.frames == 0 || p.pitch_x == 0 || p.pitch_y == 0)
        throw Error(Errc::invalid_argument, "synth dimensions must be positive");
    if (p.signal_amplitude < 0 || p.noise_sigma < 0 || p.photon_scale < 0 || p.background < 0)
        throw Error(Errc::invalid_argument, "synth amplitudes must be non-negative");
    const double peak = p.background + p.signal_amplitude;
    const double headroom = 6.0 * std::sqrt(p.noise_sigma * p.noise_sigma + p.photon_scale * peak);
    if (peak + headroom > 65535.0)
        throw Error(Errc::invalid_argument, "signal plus noise headroom exceeds 16 bits");
}

// Circular aperture falloff within one lenslet; u, v in [-0.5, 0.5].
inline double aperture(double u, double v) {
    const double r = std::sqrt(u * u + v * v);
    if (r >= 0.5) return 0.0;
    const double c = std::cos(std::numbers::pi * r);
    return c * c;
}

inline double noisy(double signal, const SynthParams& p, std::mt19937_64& rng) {
    double v = signal;
    if (p.photon_scale > 0.0) {
        const double mean = signal / p.photon_scale;
        double photons;
        if (mean > 1000.0) {
            photons = std::normal_distribution<double>(mean, std::sqrt(mean))(rng);
        } else {
            photons = static_cast<double>(std::poisson_distribution<long>(mean)(rng));
        }
        v = photons * p.photon_scale;
    }
    if (p.noise_sigma > 0.0) v += std::normal_distribution<double>(0.0, p.noise_sigma)(rng);
    return std::clamp(std::round(v), 0.0, 65535.0);
}

}  // namespace detail

/// Deterministic in `seed`; frame t uses an independent noise stream derived
/// from (seed, t), so frames can be rendered in any order.
inline FrameStack generate(const SynthParams& p, unsigned workers = 1) {
    detail::validate(p);
    std::mt19937_64 scene(detail::splitmix64(p.seed));
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    std::vector<detail::Wave> waves;
    std::vector<detail::Bead> beads;
    if (p.mode == SynthMode::smooth_lenslet) {
        // Low spatial frequency (cycles per lenslet) and low angular frequency
        // (cycles per aperture) keep the field smooth along both neighbor axes.
        for (int k = 0; k < 6; ++k) {
            detail::Wave w;
            w.fx = (uni(scene) - 0.5) * 0.5;
            w.fy = (uni(scene) - 0.5) * 0.5;
            w.fu = (uni(scene) - 0.5) * 1.5;
            w.fv = (uni(scene) - 0.5) * 1.5;
            w.phase = uni(scene) * 2.0 * std::numbers::pi;
            w.weight = 0.3 + uni(scene);
            waves.push_back(w);
        }
    } else {
        const double area = static_cast<double>(p.width) * p.height;
        const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(area / 900.0));
        for (std::size_t k = 0; k < count; ++k)
            beads.push_back({uni(scene) * p.width, uni(scene) * p.height, 1.5 + 2.5 * uni(scene),
                             0.5 + 0.5 * uni(scene)});
    }
    double weight_sum = 0.0;
    for (const auto& w : waves) weight_sum += w.weight;

    std::vector<Frame> frames(p.frames);
    const LensletGeometry geometry(p.pitch_x, p.pitch_y);
    parallel_for(p.frames, workers, [&](std::size_t t) {
        std::mt19937_64 rng(detail::splitmix64(p.seed ^ detail::splitmix64(t + 1)));
        const double shift = p.drift * static_cast<double>(t);
        std::vector<std::uint16_t> s(static_cast<std::size_t>(p.width) * p.height);
        std::size_t i = 0;
        for (std::uint32_t y = 0; y < p.height; ++y) {
            for (std::uint32_t x = 0; x < p.width; ++x, ++i) {
                double norm;
                if (p.mode == SynthMode::smooth_lenslet) {
                    const double u = ((x % p.pitch_x) + 0.5) / p.pitch_x - 0.5;
                    const double v = ((y % p.pitch_y) + 0.5) / p.pitch_y - 0.5;
                    const double sx = (static_cast<double>(x / p.pitch_x) * p.pitch_x - shift) / p.pitch_x;
                    const double sy = static_cast<double>(y / p.pitch_y);
                    double f = 0.0;
                    for (const auto& w : waves)
                        f += w.weight * std::cos(2.0 * std::numbers::pi * (w.fx * sx + w.fy * sy + w.fu * u + w.fv * v) +
                                                 w.phase);
                    norm = detail::aperture(u, v) * (0.5 + 0.5 * f / weight_sum);
                } else {
                    norm = 0.0;
                    for (const auto& b : beads) {
                        const double dx = x + 0.5 - (b.x + shift);
                        const double dy = y + 0.5 - b.y;
                        const double d = std::sqrt(dx * dx + dy * dy);
                        norm += b.brightness * std::clamp(b.radius - d + 0.5, 0.0, 1.0);
                    }
                    norm = std::min(norm, 1.0);
                }
                s[i] = static_cast<std::uint16_t>(detail::noisy(p.background + p.signal_amplitude * norm, p, rng));
            }
        }
        frames[t] = Frame(p.width, p.height, std::move(s), geometry);
    });
    return FrameStack(std::move(frames));
}

}  // namespace pcbz
