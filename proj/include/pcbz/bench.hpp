#pragma once

// Predictor x noise sweep over synthetic frames. For every (mode, sample,
// noise level) one frame is generated, scored by the criterion, and then
// compressed and decompressed once per candidate predictor.

#include <cstdio>
#include <string>
#include <vector>

#include "pcbz/criterion.hpp"
#include "pcbz/pipeline.hpp"
#include "pcbz/synth.hpp"

namespace pcbz {

struct BenchConfig {
    std::vector<SynthMode> modes = {SynthMode::smooth_lenslet, SynthMode::beads};
    std::vector<double> noise_levels = {0.0, 50.0, 200.0, 800.0};
    std::uint32_t samples = 3;
    std::uint32_t width = 150;
    std::uint32_t height = 150;
    std::uint32_t pitch_x = 15;
    std::uint32_t pitch_y = 15;
    /// Signal amplitude; 0 picks a per-mode default.
    double amplitude = 0.0;
    double photon_scale = 1.0;
    double background = 1000.0;
    std::uint64_t seed = 1;
    std::uint32_t block_size = kDefaultBlockSize;
    unsigned workers = 1;
};

struct BenchRow {
    std::uint32_t sample_id = 0;
    SynthMode mode = SynthMode::smooth_lenslet;
    double noise_sigma = 0.0;
    std::uint8_t predictor_byte = 0;
    double entropy_bits = 0.0;
    std::uint64_t container_bytes = 0;
    double bits_per_dim = 0.0;
    double ratio = 0.0;
    double compress_ms = 0.0;
    double decompress_ms = 0.0;
    bool selected = false;
};

inline double default_amplitude(SynthMode m) { return m == SynthMode::smooth_lenslet ? 20000.0 : 4000.0; }

inline SynthParams bench_params(const BenchConfig& c, SynthMode mode, std::uint32_t sample, double noise) {
    SynthParams p;
    p.width = c.width;
    p.height = c.height;
    p.pitch_x = c.pitch_x;
    p.pitch_y = c.pitch_y;
    p.mode = mode;
    p.signal_amplitude = c.amplitude > 0 ? c.amplitude : default_amplitude(mode);
    p.noise_sigma = noise;
    p.photon_scale = c.photon_scale;
    p.background = c.background;
    p.frames = 1;
    // Same scene for every noise level of a sample, so the sweep isolates SNR.
    p.seed = c.seed * 1000003ull + sample;
    return p;
}

inline std::vector<BenchRow> run_bench(const BenchConfig& c) {
    std::vector<BenchRow> rows;
    const auto candidates = default_candidates(false);
    for (SynthMode mode : c.modes)
        for (std::uint32_t sample = 0; sample < c.samples; ++sample)
            for (double noise : c.noise_levels) {
                const FrameStack stack = generate(bench_params(c, mode, sample, noise), c.workers);
                const EntropyReport report = select_predictor(stack[0], nullptr, candidates, c.workers);
                for (const auto& e : report.entries) {
                    CompressOptions o;
                    o.forced = e.spec;
                    o.block_size = c.block_size;
                    o.workers = c.workers;
                    const Metrics m = compress_and_measure(stack, o);
                    if (!m.lossless) throw Error(Errc::invalid_argument, "bench round trip mismatch");
                    rows.push_back({sample, mode, noise, encode_predictor_spec(e.spec), e.entropy_bits,
                                    m.container_bytes, m.bits_per_dim, m.compression_ratio, m.compress_ms,
                                    m.decompress_ms, e.spec == report.selected});
                }
            }
    return rows;
}

inline std::string bench_csv_header() {
    return "sample_id,mode,noise_sigma,predictor_byte,entropy_bits,container_bytes,bits_per_dim,ratio,"
           "compress_ms,decompress_ms,selected_flag\n";
}

inline std::string bench_csv_row(const BenchRow& r) {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%u,%s,%g,%u,%.6f,%llu,%.6f,%.6f,%.3f,%.3f,%d\n", r.sample_id,
                  synth_mode_name(r.mode), r.noise_sigma, unsigned(r.predictor_byte), r.entropy_bits,
                  static_cast<unsigned long long>(r.container_bytes), r.bits_per_dim, r.ratio, r.compress_ms,
                  r.decompress_ms, r.selected ? 1 : 0);
    return buf;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string s = bench_csv_header();
    for (const auto& r : rows) s += bench_csv_row(r);
    return s;
}

}  // namespace pcbz
