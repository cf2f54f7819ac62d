// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and corpus sizes are fixed here; timings are
// wall clock on whatever machine runs the suite.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "pcbz/pcbz.hpp"

using namespace pcbz;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::size_t compressed_size(const FrameStack& s, std::optional<PredictorSpec> forced, bool temporal = true,
                            std::uint32_t block_size = kDefaultBlockSize, unsigned workers = 1) {
    CompressOptions o;
    o.forced = forced;
    o.temporal = temporal;
    o.block_size = block_size;
    o.workers = workers;
    return compress_stack(s, o).size();
}

double bits_per_dim(std::size_t bytes, const FrameStack& s) {
    return 8.0 * static_cast<double>(bytes) / static_cast<double>(s.size() * s[0].size());
}

// ---------------------------------------------------------------------------
// 1. Losslessness over a property corpus.

Frame property_frame(int kind, std::uint32_t w, std::uint32_t h, LensletGeometry g, std::uint32_t t,
                     std::mt19937_64& rng) {
    Frame f(w, h, g);
    std::uint32_t walk = static_cast<std::uint32_t>(rng());
    for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x) {
            std::uint32_t v = 0;
            switch (kind) {
                case 0: v = 0; break;
                case 1: v = 65535; break;
                case 2: v = static_cast<std::uint32_t>(rng()); break;
                case 3: v = x * 257u + t * 13u; break;
                case 4: v = y * 1031u + t; break;
                case 5: v = x * 4099u + y * 8209u + t * 7u; break;
                case 6: v = ((x + y + t) & 1u) ? 65535u : 0u; break;
                default: walk += static_cast<std::uint32_t>(rng() % 65) - 32u; v = walk; break;
            }
            f.at(x, y) = static_cast<std::uint16_t>(v & 0xFFFFu);
        }
    return f;
}

std::vector<FrameStack> property_corpus() {
    struct Shape {
        std::uint32_t w, h, px, py;
    };
    const std::vector<Shape> shapes = {{1, 1, 1, 1},   {1, 17, 1, 1},  {17, 1, 3, 1},  {2, 2, 1, 1},
                                       {31, 37, 5, 5}, {53, 29, 7, 4}, {50, 40, 7, 6}, {13, 97, 5, 3},
                                       {64, 64, 8, 8}, {4, 4, 9, 9}};
    std::vector<FrameStack> corpus;
    std::mt19937_64 rng(2024);
    for (const auto& sh : shapes)
        for (int kind = 0; kind < 8; ++kind)
            for (std::uint32_t frames : {1u, 3u}) {
                std::vector<Frame> fs;
                for (std::uint32_t t = 0; t < frames; ++t)
                    fs.push_back(property_frame(kind, sh.w, sh.h, LensletGeometry(sh.px, sh.py), t, rng));
                corpus.emplace_back(std::move(fs));
            }
    struct SynthShape {
        std::uint32_t w, h, px, py, frames;
    };
    const std::vector<SynthShape> synth_shapes = {{45, 45, 9, 9, 1},    {50, 40, 7, 6, 3}, {61, 59, 10, 10, 2},
                                                  {37, 41, 5, 7, 1},    {30, 30, 15, 15, 3}, {64, 48, 8, 8, 2}};
    std::uint64_t seed = 1;
    for (SynthMode mode : {SynthMode::smooth_lenslet, SynthMode::beads})
        for (double noise : {0.0, 50.0, 200.0, 800.0})
            for (const auto& sh : synth_shapes) {
                SynthParams p;
                p.mode = mode;
                p.width = sh.w;
                p.height = sh.h;
                p.pitch_x = sh.px;
                p.pitch_y = sh.py;
                p.frames = sh.frames;
                p.drift = 1;
                p.noise_sigma = noise;
                p.photon_scale = seed % 2;
                p.background = 1000;
                p.signal_amplitude = mode == SynthMode::smooth_lenslet ? 20000 : 4000;
                p.seed = seed++;
                corpus.push_back(generate(p));
            }
    return corpus;
}

Outcome criterion_lossless() {
    const auto t0 = Clock::now();
    const auto corpus = property_corpus();
    const std::uint32_t block_sizes[] = {kDefaultBlockSize, 4096, 333};
    std::size_t runs = 0, failures = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& s = corpus[i];
        for (bool temporal : {false, true}) {
            CompressOptions o;
            o.temporal = temporal;
            o.block_size = block_sizes[i % 3];
            o.workers = 1 + static_cast<unsigned>(i % 3);
            for (int id = -1; id <= kMaxIntraId; ++id) {
                if (id < 0)
                    o.forced.reset();
                else
                    o.forced = PredictorSpec{temporal, id};
                ++runs;
                if (decompress_stack(compress_stack(s, o), o.workers) != s) ++failures;
            }
        }
    }
    const double secs = seconds_since(t0);
    return {corpus.size() >= 200 && failures == 0 && secs < 300.0,
            fmt("%zu stacks, %zu round trips, %zu mismatches, %.1f s (need >=200 stacks, 0 mismatches, <300 s)",
                corpus.size(), runs, failures, secs)};
}

// ---------------------------------------------------------------------------
// 2. Approximate BWT against the stable rotation-sort oracle.

Outcome criterion_approx_bwt() {
    const auto t0 = Clock::now();
    std::size_t exhaustive = 0, random = 0, mismatches = 0;
    for (std::size_t len = 0; len <= 10; ++len) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < len; ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            ByteString s(len);
            std::size_t c = code;
            for (std::size_t i = 0; i < len; ++i, c /= 3) s[i] = static_cast<std::uint8_t>('a' + c % 3);
            if (approx_bwt(s) != oracle::rotation_sort_bwt(s)) ++mismatches;
            ++exhaustive;
        }
    }
    std::mt19937_64 rng(77);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t len = rng() % 4097;
        const unsigned alphabet = (i % 4 == 0) ? 2 : (i % 4 == 1) ? 4 : (i % 4 == 2) ? 17 : 256;
        ByteString s(len);
        for (auto& b : s) b = static_cast<std::uint8_t>(rng() % alphabet);
        const auto got = approx_bwt(s);
        if (got != oracle::index_sort_bwt(s)) ++mismatches;
        // The materialized rotation oracle is quadratic; spot-check it too.
        if (i % 50 == 0 && len <= 1024 && got != oracle::rotation_sort_bwt(s)) ++mismatches;
        ++random;
    }
    const ByteString banana{'b', 'a', 'n', 'a', 'n', 'a'};
    const ByteString expect{'b', 'n', 'n', 'a', 'a', 'a'};
    const ByteString canonical{'n', 'n', 'b', 'a', 'a', 'a'};
    const bool banana_ok = approx_bwt(banana) == expect && oracle::canonical_bwt(banana) == canonical &&
                           approx_bwt(banana) != canonical;
    const double secs = seconds_since(t0);
    return {mismatches == 0 && banana_ok && secs < 60.0,
            fmt("%zu exhaustive + %zu random strings, %zu mismatches, banana->bnnaaa %s, %.1f s (need 0, <60 s)",
                exhaustive, random, mismatches, banana_ok ? "ok" : "WRONG", secs)};
}

// ---------------------------------------------------------------------------
// 3. entropy2d against the direct formula.

ByteString de_bruijn_256() {
    // Order-2 de Bruijn sequence over 256 symbols (Fredricksen-Kessler-Maiorana).
    ByteString seq;
    std::vector<int> a(3, 0);
    std::function<void(int, int)> db = [&](int t, int p) {
        if (t > 2) {
            if (2 % p == 0)
                for (int j = 1; j <= p; ++j) seq.push_back(static_cast<std::uint8_t>(a[j]));
        } else {
            a[t] = a[t - p];
            db(t + 1, p);
            for (int j = a[t - p] + 1; j < 256; ++j) {
                a[t] = j;
                db(t + 1, t);
            }
        }
    };
    db(1, 1);
    return seq;
}

Outcome criterion_entropy() {
    std::mt19937_64 rng(99);
    double worst_rel = 0;
    for (int i = 0; i < 1000; ++i) {
        PairHistogram h;
        std::map<std::uint32_t, std::uint64_t> ref;
        const std::size_t bins = 1 + rng() % (i % 10 == 0 ? 65536 : 600);
        const std::uint64_t cap = (i % 3 == 0) ? 3 : (i % 3 == 1) ? 1000 : 1000000000ull;
        for (std::size_t b = 0; b < bins; ++b) {
            const std::uint32_t t = static_cast<std::uint32_t>(rng() % 65536);
            const std::uint64_t c = 1 + rng() % cap;
            h.counts[t] += c;
            h.total += c;
            ref[t] += c;
        }
        const double want = oracle::entropy_from_counts(ref);
        const double got = entropy2d(h);
        const double rel = std::abs(got - want) / std::max(std::abs(want), 1e-300);
        if (want == 0.0 ? got != 0.0 : true) worst_rel = std::max(worst_rel, want == 0.0 ? 1.0 : rel);
    }
    bool constant_ok = true;
    for (std::size_t len : {0u, 1u, 2u, 3u, 100u, 65537u})
        for (int v : {0, 7, 255}) constant_ok &= entropy2d(pair_histogram(ByteString(len, static_cast<std::uint8_t>(v)))) == 0.0;

    const ByteString db = de_bruijn_256();
    double worst_uniform = 0;
    for (std::size_t n : {2u, 3u, 10u, 257u, 1000u, 4097u, 65536u, 65537u}) {
        ByteString s(db.begin(), db.begin() + std::min<std::size_t>(n, db.size()));
        if (n == db.size() + 1) s.push_back(db[0]);
        const double err = std::abs(entropy2d(pair_histogram(s)) - std::log2(static_cast<double>(n - 1)));
        worst_uniform = std::max(worst_uniform, err);
    }
    return {worst_rel <= 1e-12 && constant_ok && worst_uniform <= 1e-12,
            fmt("1000 histograms worst rel err %.2e, constant strings %s, uniform-pair worst abs err %.2e "
                "(need <=1e-12, exactly 0, <=1e-12)",
                worst_rel, constant_ok ? "0" : "NONZERO", worst_uniform)};
}

// ---------------------------------------------------------------------------
// Shared synthetic corpus for criteria 4 and 7. Shot noise is always on;
// noise cycles through four read-noise levels and every fourth sample is a
// three-frame drifting stack so temporal candidates compete.

SynthParams corpus_params(std::uint32_t k) {
    SynthParams p;
    p.mode = k % 2 ? SynthMode::beads : SynthMode::smooth_lenslet;
    p.signal_amplitude = default_amplitude(p.mode);
    p.noise_sigma = std::array{0.0, 50.0, 200.0, 800.0}[(k / 2) % 4];
    p.photon_scale = 1;
    p.background = 1000;
    p.frames = k % 4 == 3 ? 3 : 1;
    p.drift = 1;
    p.seed = 5000 + k;
    return p;
}

Outcome criterion_selection() {
    const auto t0 = Clock::now();
    std::size_t within = 0, total = 0;
    double worst = 0, sum_ratio = 0;
    for (std::uint32_t k = 0; k < 100; ++k) {
        const FrameStack s = generate(corpus_params(k));
        const std::size_t chosen = compressed_size(s, std::nullopt);
        std::size_t best = SIZE_MAX;
        for (const auto& spec : default_candidates(s.size() > 1)) best = std::min(best, compressed_size(s, spec));
        const double ratio = static_cast<double>(chosen) / static_cast<double>(best);
        worst = std::max(worst, ratio);
        sum_ratio += ratio;
        within += ratio <= 1.02;
        ++total;
    }
    const double frac = static_cast<double>(within) / static_cast<double>(total);
    const double secs = seconds_since(t0);
    return {frac >= 0.90 && secs < 600.0,
            fmt("%zu/%zu samples within 1.02x of best candidate (%.0f%%), mean %.4fx, worst %.4fx, %.1f s "
                "(need >=90%%, <600 s)",
                within, total, 100 * frac, sum_ratio / static_cast<double>(total), worst, secs)};
}

// ---------------------------------------------------------------------------
// 5. Gain over identity on structured data, no loss on noise-dominated data.

Outcome criterion_structured() {
    std::size_t improved = 0, n_smooth = 20;
    double best_gain_sum = 0, best_gain_max = 0, auto_gain_sum = 0;
    for (std::uint32_t k = 0; k < n_smooth; ++k) {
        SynthParams p;
        p.mode = SynthMode::smooth_lenslet;
        p.signal_amplitude = 20000;
        p.photon_scale = 1;
        p.background = 1000;
        p.seed = 7000 + k;
        const FrameStack s = generate(p);
        const std::size_t identity = compressed_size(s, PredictorSpec{false, 0});
        const std::size_t chosen = compressed_size(s, std::nullopt);
        std::size_t best = identity;
        for (int id = 1; id <= kMaxIntraId; ++id) best = std::min(best, compressed_size(s, PredictorSpec{false, id}));
        improved += static_cast<double>(chosen) <= 0.95 * static_cast<double>(identity);
        const double gain = bits_per_dim(identity, s) - bits_per_dim(best, s);
        best_gain_sum += gain;
        best_gain_max = std::max(best_gain_max, gain);
        auto_gain_sum += 1.0 - static_cast<double>(chosen) / static_cast<double>(identity);
    }
    std::size_t n_beads = 20, never_worse = 0;
    double worst_beads = 0;
    for (std::uint32_t k = 0; k < n_beads; ++k) {
        SynthParams p;
        p.mode = SynthMode::beads;
        p.signal_amplitude = 4000;
        p.noise_sigma = k % 2 ? 800 : 200;
        p.photon_scale = 1;
        p.background = 1000;
        p.seed = 8000 + k;
        const FrameStack s = generate(p);
        const double ratio = static_cast<double>(compressed_size(s, std::nullopt)) /
                             static_cast<double>(compressed_size(s, PredictorSpec{false, 0}));
        worst_beads = std::max(worst_beads, ratio);
        never_worse += ratio <= 1.01;
    }
    const double frac = static_cast<double>(improved) / static_cast<double>(n_smooth);
    return {frac >= 0.80 && never_worse == n_beads,
            fmt("high-SNR smooth: %zu/%zu auto >=5%% smaller than identity (%.0f%%, mean %.1f%% smaller), "
                "best-predictor gain %.3f bits/dim mean, %.3f max; low-SNR beads: worst auto/identity %.4f "
                "(need >=80%%, all <=1.01)",
                improved, n_smooth, 100 * frac, 100 * auto_gain_sum / static_cast<double>(n_smooth),
                best_gain_sum / static_cast<double>(n_smooth), best_gain_max, worst_beads)};
}

// ---------------------------------------------------------------------------
// 6. bits/dim rises with noise at fixed signal.

Outcome criterion_snr_trend() {
    const double levels[] = {0.0, 50.0, 200.0, 800.0};
    std::size_t monotone = 0, seeds = 0;
    std::string first_break;
    for (SynthMode mode : {SynthMode::smooth_lenslet, SynthMode::beads})
        for (std::uint32_t k = 0; k < 10; ++k) {
            double prev = -1;
            bool ok = true;
            for (double noise : levels) {
                SynthParams p;
                p.mode = mode;
                p.signal_amplitude = default_amplitude(mode);
                p.noise_sigma = noise;
                p.photon_scale = 1;
                p.background = 1000;
                p.seed = 9000 + k;
                const FrameStack s = generate(p);
                const double bpd = bits_per_dim(compressed_size(s, std::nullopt), s);
                if (bpd < prev) {
                    ok = false;
                    if (first_break.empty())
                        first_break = fmt(", first break %s seed %u at noise %g", synth_mode_name(mode), k, noise);
                }
                prev = bpd;
            }
            monotone += ok;
            ++seeds;
        }
    const double frac = static_cast<double>(monotone) / static_cast<double>(seeds);
    return {frac >= 0.90, fmt("%zu/%zu seeds non-decreasing over noise {0,50,200,800} (%.0f%%)%s (need >=90%%)",
                              monotone, seeds, 100 * frac, first_break.c_str())};
}

// ---------------------------------------------------------------------------
// 7. Determinism across worker counts and repeat runs.

Outcome criterion_determinism() {
    std::size_t identical = 0;
    for (std::uint32_t k = 0; k < 20; ++k) {
        CompressOptions o;
        o.block_size = k % 2 ? 8192 : kDefaultBlockSize;
        o.workers = 1;
        const auto ref = compress_stack(generate(corpus_params(k)), o);
        bool same = true;
        for (unsigned w : {1u, 2u, 8u}) {
            o.workers = w;
            same &= compress_stack(generate(corpus_params(k), w), o) == ref;
            same &= compress_stack(generate(corpus_params(k), w), o) == ref;
        }
        identical += same;
    }
    return {identical == 20, fmt("%zu/20 samples byte-identical across workers {1,2,8} and repeat runs (need 20)",
                                 identical)};
}

// ---------------------------------------------------------------------------
// 8. Temporal prediction.

Outcome criterion_temporal() {
    std::string detail;
    bool pass = true;
    for (SynthMode mode : {SynthMode::smooth_lenslet, SynthMode::beads}) {
        SynthParams p;
        p.mode = mode;
        p.signal_amplitude = default_amplitude(mode);
        p.noise_sigma = 10;
        p.photon_scale = 1;
        p.background = 1000;
        p.seed = 11;
        const Frame f = generate(p)[0];
        const FrameStack s(std::vector<Frame>(10, f));
        const double ratio = static_cast<double>(compressed_size(s, std::nullopt, true)) /
                             static_cast<double>(compressed_size(s, std::nullopt, false));
        pass &= ratio < 0.30;
        detail += fmt("identical %s on/off %.3f; ", synth_mode_name(mode), ratio);
    }
    std::size_t smaller = 0, drift_total = 0;
    double worst = 0;
    for (std::uint32_t k = 0; k < 6; ++k) {
        SynthParams p;
        p.mode = SynthMode::smooth_lenslet;
        p.frames = 5;
        p.drift = 1;
        p.noise_sigma = k % 2 ? 20 : 0;
        p.photon_scale = 1;
        p.background = 1000;
        p.seed = 12000 + k;
        const FrameStack s = generate(p);
        const std::size_t on = compressed_size(s, std::nullopt, true);
        const std::size_t off = compressed_size(s, std::nullopt, false);
        worst = std::max(worst, static_cast<double>(on) / static_cast<double>(off));
        smaller += on < off;
        ++drift_total;
    }
    pass &= smaller == drift_total;
    detail += fmt("drifting smooth_lenslet 1 px/frame: %zu/%zu strictly smaller, worst on/off %.3f", smaller,
                  drift_total, worst);
    return {pass, detail + " (need identical <0.30, all drifting strictly smaller)"};
}

// ---------------------------------------------------------------------------
// 9. Degenerate geometry and constant frames.

Outcome criterion_degeneracy() {
    std::mt19937_64 rng(123);
    std::size_t unit_checks = 0, unit_bad = 0;
    for (int i = 0; i < 40; ++i) {
        const std::uint32_t w = 1 + rng() % 48, h = 1 + rng() % 48;
        const Frame f = oracle::random_frame(w, h, LensletGeometry(1, 1), rng, i % 2 ? 65535 : 200);
        for (int fid = 1; fid <= 4; ++fid) {
            const auto base = predict_frame(f, fid);
            unit_bad += predict_frame(f, fid + 4) != base;
            unit_bad += predict_frame(f, fid + 8) != base;
            unit_checks += 2;
        }
    }
    std::size_t const_frames = 0, const_bad = 0;
    for (std::uint16_t c : {std::uint16_t{0}, std::uint16_t{1}, std::uint16_t{4242}, std::uint16_t{65535}})
        for (auto [w, h, px, py] : {std::array<std::uint32_t, 4>{1, 1, 1, 1}, {7, 5, 1, 1}, {40, 30, 5, 5},
                                    {31, 17, 4, 6}, {9, 9, 12, 12}}) {
            const Frame f(w, h, std::vector<std::uint16_t>(std::size_t{w} * h, c), LensletGeometry(px, py));
            const auto r = predict_frame(f, 1);
            for (std::uint32_t y = 1; y < h; ++y)
                for (std::uint32_t x = 1; x < w; ++x) const_bad += r.at(x, y) != 0;
            ++const_frames;
        }
    return {unit_bad == 0 && const_bad == 0,
            fmt("pitch (1,1): %zu/%zu residual frames identical to ids 1-4; constant frames under id 1: %zu "
                "in-bounds nonzero residuals over %zu frames (need all identical, 0)",
                unit_checks - unit_bad, unit_checks, const_bad, const_frames)};
}

// ---------------------------------------------------------------------------
// 10. Throughput on a 64 MiB stack.

Outcome criterion_throughput() {
    SynthParams p;
    p.width = 2048;
    p.height = 2048;
    p.frames = 8;
    p.photon_scale = 1;
    p.noise_sigma = 20;
    p.background = 1000;
    p.drift = 1;
    p.seed = 64;
    const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
    auto t0 = Clock::now();
    const FrameStack s = generate(p, cores);
    const double gen_s = seconds_since(t0);

    // Alternate the two modes and keep the fastest of each so background
    // load on a shared machine affects both alike.
    double auto_s = 1e300, identity_s = 1e300, select_ms = 0;
    std::size_t auto_bytes = 0, identity_bytes = 0;
    for (int rep = 0; rep < 5; ++rep) {
        CompressOptions a;
        t0 = Clock::now();
        const auto r = compress_stack_detailed(s, a);
        const double ta = seconds_since(t0);
        if (ta < auto_s) {
            auto_s = ta;
            select_ms = r.select_ms;
        }
        auto_bytes = r.container.size();
        CompressOptions id;
        id.forced = PredictorSpec{false, 0};
        t0 = Clock::now();
        identity_bytes = compress_stack(s, id).size();
        identity_s = std::min(identity_s, seconds_since(t0));
    }
    CompressOptions w4;
    w4.workers = 4;
    t0 = Clock::now();
    compress_stack(s, w4);
    const double four_s = seconds_since(t0);
    const double ratio = auto_s / identity_s;
    const double speedup = auto_s / four_s;
    return {ratio <= 1.5,
            fmt("%.0f MiB stack: auto %.2f s (entropy judgement %.2f s) vs forced identity %.2f s = %.3fx; "
                "container %zu vs %zu bytes; 4-worker speedup %.2fx on %u core(s), logged only; generation %.1f s "
                "(need auto/identity <=1.5x)",
                static_cast<double>(s.raw_bytes()) / 1048576.0, auto_s, select_ms / 1000.0, identity_s, ratio,
                auto_bytes, identity_bytes, speedup, cores, gen_s)};
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "lossless round trip", criterion_lossless},
        {2, "approximate BWT oracle", criterion_approx_bwt},
        {3, "entropy correctness", criterion_entropy},
        {4, "criterion effectiveness", criterion_selection},
        {5, "structured-data improvement", criterion_structured},
        {6, "SNR trend", criterion_snr_trend},
        {7, "determinism", criterion_determinism},
        {8, "temporal benefit", criterion_temporal},
        {9, "degeneracy invariants", criterion_degeneracy},
        {10, "throughput", criterion_throughput},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2d %-28s %s  %s [%.1f s]\n", c.number, c.name, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
