// pcbz: command-line front end for the light-field frame compressor.
//
//   pcbz compress   in.pgm|in.raw... -o out.pcbz
//   pcbz decompress in.pcbz -o out.pgm|out.raw
//   pcbz inspect    in.pcbz
//   pcbz gen        -o out.pgm|out.raw [--mode ...]
//   pcbz bench      [--modes ...] [--sweep-noise ...] [--csv out.csv]
//
// Exit codes: 0 success, 1 usage, 2 I/O or format, 3 corrupt data.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcbz/bench.hpp"
#include "pcbz/io.hpp"
#include "pcbz/pipeline.hpp"
#include "pcbz/report.hpp"
#include "pcbz/synth.hpp"

namespace fs = std::filesystem;
using namespace pcbz;

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kCorrupt = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::pair<std::uint32_t, std::uint32_t> parse_pair(const std::string& s, const char* what) {
    const auto x = s.find_first_of("xX");
    try {
        if (x == std::string::npos) throw std::invalid_argument(s);
        std::size_t n1 = 0, n2 = 0;
        const long a = std::stol(s.substr(0, x), &n1);
        const long b = std::stol(s.substr(x + 1), &n2);
        if (n1 != x || n2 != s.size() - x - 1 || a <= 0 || b <= 0 || a > 0xFFFFFFFFL || b > 0xFFFFFFFFL)
            throw std::invalid_argument(s);
        return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
    } catch (const std::exception&) {
        throw UsageError(std::string("bad ") + what + " '" + s + "', expected WxH");
    }
}

/// "auto" -> nullopt; "<id>" or "<id>,temporal" -> spec.
std::optional<PredictorSpec> parse_predictor(const std::string& s) {
    if (s == "auto") return std::nullopt;
    std::string id = s;
    bool temporal = false;
    if (const auto comma = s.find(','); comma != std::string::npos) {
        if (s.substr(comma + 1) != "temporal") throw UsageError("bad predictor '" + s + "'");
        id = s.substr(0, comma);
        temporal = true;
    }
    if (id.empty() || id.size() > 2 || id.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("bad predictor '" + s + "'");
    const int v = std::stoi(id);
    if (v > kMaxIntraId) throw UsageError("predictor id must be 0.." + std::to_string(kMaxIntraId));
    return PredictorSpec{temporal, v};
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

bool is_pgm(const fs::path& p) {
    auto ext = p.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".pgm" || ext == ".pnm";
}

FrameStack load_stack(const std::vector<std::string>& inputs, const std::optional<LensletGeometry>& pitch) {
    std::vector<Frame> frames;
    for (const auto& in : inputs) {
        FrameStack part = is_pgm(in) ? read_pgm_stack(in, pitch.value_or(LensletGeometry{})) : read_raw_stack(in);
        for (const auto& f : part) {
            if (pitch && !is_pgm(in))
                frames.emplace_back(f.width(), f.height(), f.samples(), *pitch);
            else
                frames.push_back(f);
        }
    }
    return FrameStack(std::move(frames));
}

void save_stack(const fs::path& out, const FrameStack& stack) {
    if (is_pgm(out))
        write_pgm_stack(out, stack);
    else
        write_raw_stack(out, stack);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lossless compressor for 16-bit light-field microscopy frames"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    unsigned threads = default_workers();
    auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", threads, "Worker threads (speed only, never changes output)")
            ->envname("PCBZ_THREADS")
            ->check(CLI::PositiveNumber);
    };

    // compress
    auto* compress = app.add_subcommand("compress", "Compress PGM or raw frames into a container");
    std::vector<std::string> c_inputs;
    std::string c_output, c_pitch, c_predictor = "auto", c_temporal = "on";
    std::uint32_t c_block = kDefaultBlockSize;
    compress->add_option("-i,--input,inputs", c_inputs, "Input .pgm (multi-image allowed) or raw file(s)")
        ->required()
        ->check(CLI::ExistingFile);
    compress->add_option("-o,--output", c_output, "Output container")->required();
    compress->add_option("--pitch", c_pitch, "Lenslet pitch WxH (PGM default 1x1; overrides raw sidecar)");
    compress->add_option("--block-size", c_block, "Uncompressed bytes per bzip2 block")->check(CLI::PositiveNumber);
    compress->add_option("--predictor", c_predictor, "auto | <0..12> | <0..12>,temporal");
    compress->add_option("--temporal", c_temporal, "Allow temporal prediction")->check(CLI::IsMember({"on", "off"}));
    add_threads(compress);

    // decompress
    auto* decompress = app.add_subcommand("decompress", "Restore frames from a container");
    std::string d_input, d_output;
    decompress->add_option("-i,--input,input", d_input, "Container file")->required()->check(CLI::ExistingFile);
    decompress->add_option("-o,--output", d_output, "Output .pgm (all frames) or raw file + .meta")->required();
    add_threads(decompress);

    // inspect
    auto* inspect = app.add_subcommand("inspect", "Print container header, predictors and block table");
    std::string i_input;
    inspect->add_option("-i,--input,input", i_input, "Container file")->required()->check(CLI::ExistingFile);

    // gen
    auto* gen = app.add_subcommand("gen", "Write a synthetic light-field stack");
    SynthParams g;
    std::string g_output, g_mode = "smooth_lenslet", g_size = "150x150", g_pitch = "15x15";
    gen->add_option("-o,--output", g_output, "Output .pgm or raw file")->required();
    gen->add_option("--mode", g_mode, "smooth_lenslet | beads")->check(CLI::IsMember({"smooth_lenslet", "beads"}));
    gen->add_option("--size", g_size, "Frame size WxH");
    gen->add_option("--pitch", g_pitch, "Lenslet pitch WxH");
    gen->add_option("--frames", g.frames, "Frame count")->check(CLI::PositiveNumber);
    gen->add_option("--amplitude", g.signal_amplitude, "Peak signal in counts");
    gen->add_option("--background", g.background, "Dark offset in counts");
    gen->add_option("--noise", g.noise_sigma, "Gaussian read noise sigma in counts");
    gen->add_option("--photon-scale", g.photon_scale, "Counts per photon for shot noise (0 = off)");
    gen->add_option("--drift", g.drift, "Scene translation per frame in pixels");
    gen->add_option("--seed", g.seed, "Random seed");
    add_threads(gen);

    // bench
    auto* bench = app.add_subcommand("bench", "Predictor x noise sweep on synthetic frames, as CSV");
    BenchConfig b;
    std::string b_modes = "smooth_lenslet,beads", b_noise = "0,50,200,800", b_csv, b_size = "150x150",
                b_pitch = "15x15";
    bench->add_option("--modes", b_modes, "Comma-separated synth modes");
    bench->add_option("--sweep-noise", b_noise, "Comma-separated noise sigmas");
    bench->add_option("--csv", b_csv, "Write CSV here instead of stdout");
    bench->add_option("--samples", b.samples, "Scenes per mode")->check(CLI::PositiveNumber);
    bench->add_option("--size", b_size, "Frame size WxH");
    bench->add_option("--pitch", b_pitch, "Lenslet pitch WxH");
    bench->add_option("--amplitude", b.amplitude, "Peak signal in counts (0 = per-mode default)");
    bench->add_option("--photon-scale", b.photon_scale, "Counts per photon for shot noise (0 = off)");
    bench->add_option("--seed", b.seed, "Random seed");
    bench->add_option("--block-size", b.block_size, "Uncompressed bytes per bzip2 block")->check(CLI::PositiveNumber);
    add_threads(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (compress->parsed()) {
            const auto forced = parse_predictor(c_predictor);
            if (forced && forced->temporal && c_temporal == "off")
                throw UsageError("--predictor ...,temporal conflicts with --temporal off");
            std::optional<LensletGeometry> pitch;
            if (!c_pitch.empty()) {
                const auto [px, py] = parse_pair(c_pitch, "pitch");
                pitch = LensletGeometry(px, py);
            }
            const FrameStack stack = load_stack(c_inputs, pitch);
            CompressOptions opts;
            opts.forced = forced;
            opts.block_size = c_block;
            opts.workers = threads;
            opts.temporal = c_temporal == "on";
            const CompressResult r = compress_stack_detailed(stack, opts);
            write_file(c_output, r.container);
            std::cout << summary_line(r, stack) << "\n";
        } else if (decompress->parsed()) {
            const auto bytes = read_file(d_input);
            save_stack(d_output, decompress_stack(bytes, threads));
        } else if (inspect->parsed()) {
            const auto bytes = read_file(i_input);
            std::cout << inspect_text(read_container(bytes), bytes.size());
        } else if (gen->parsed()) {
            std::tie(g.width, g.height) = parse_pair(g_size, "size");
            std::tie(g.pitch_x, g.pitch_y) = parse_pair(g_pitch, "pitch");
            g.mode = parse_synth_mode(g_mode);
            save_stack(g_output, generate(g, threads));
        } else if (bench->parsed()) {
            b.modes.clear();
            for (const auto& m : split(b_modes)) b.modes.push_back(parse_synth_mode(m));
            b.noise_levels.clear();
            for (const auto& n : split(b_noise)) {
                try {
                    b.noise_levels.push_back(std::stod(n));
                } catch (const std::exception&) {
                    throw UsageError("bad noise level '" + n + "'");
                }
            }
            if (b.modes.empty() || b.noise_levels.empty()) throw UsageError("empty --modes or --sweep-noise");
            std::tie(b.width, b.height) = parse_pair(b_size, "size");
            std::tie(b.pitch_x, b.pitch_y) = parse_pair(b_pitch, "pitch");
            b.workers = threads;
            const std::string csv = bench_csv(run_bench(b));
            if (b_csv.empty())
                std::cout << csv;
            else
                write_file(b_csv, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
        }
    } catch (const UsageError& e) {
        std::cerr << "pcbz: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "pcbz: " << e.what() << "\n";
        if (e.is_corruption()) return kCorrupt;
        switch (e.code()) {
            case Errc::invalid_argument:
            case Errc::invalid_spec:
            case Errc::invalid_candidate: return kUsage;
            default: return kIo;
        }
    } catch (const std::exception& e) {
        std::cerr << "pcbz: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
