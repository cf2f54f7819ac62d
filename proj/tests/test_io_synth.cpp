#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "pcbz/io.hpp"
#include "pcbz/pipeline.hpp"
#include "pcbz/synth.hpp"

using namespace pcbz;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("pcbz_io_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

std::vector<std::uint8_t> text(const std::string& s) { return {s.begin(), s.end()}; }

double variance(const Frame& f) {
    double mean = 0;
    for (auto v : f.samples()) mean += v;
    mean /= static_cast<double>(f.size());
    double var = 0;
    for (auto v : f.samples()) var += (v - mean) * (v - mean);
    return var / static_cast<double>(f.size());
}

}  // namespace

TEST(PgmTest, RoundTrip) {
    TempDir dir;
    std::mt19937_64 rng(1);
    const Frame f = oracle::random_frame(37, 23, LensletGeometry(5, 5), rng);
    write_image(dir / "a.pgm", f);
    EXPECT_EQ(read_image(dir / "a.pgm", LensletGeometry(5, 5)), f);

    const FrameStack s({f, oracle::random_frame(37, 23, LensletGeometry(5, 5), rng)});
    write_pgm_stack(dir / "s.pgm", s);
    EXPECT_EQ(read_pgm_stack(dir / "s.pgm", LensletGeometry(5, 5)), s);
}

TEST(PgmTest, HeaderParsing) {
    auto d = text("P5 # comment\n2 1\n# another\n65535\n");
    d.insert(d.end(), {0x12, 0x34, 0xAB, 0xCD});
    const auto s = decode_pgm(d);
    EXPECT_EQ(s[0].samples(), (std::vector<std::uint16_t>{0x1234, 0xABCD}));
}

TEST(PgmTest, Rejections) {
    auto expect_code = [](const std::vector<std::uint8_t>& d, Errc c) {
        try {
            decode_pgm(d);
            ADD_FAILURE() << "no error";
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), c) << e.what();
        }
    };
    auto d = text("P5\n2 1\n255\n");
    d.insert(d.end(), {1, 2});
    expect_code(d, Errc::unsupported_format);
    expect_code(text("P2\n2 1\n65535\n1 2\n"), Errc::unsupported_format);
    expect_code(text("P5\n2 1\n65535\n\x01"), Errc::unsupported_format);
    expect_code(text("P5\nx 1\n65535\n"), Errc::unsupported_format);
}

TEST(RawTest, RoundTripWithSidecar) {
    TempDir dir;
    SynthParams p;
    p.width = 30;
    p.height = 20;
    p.pitch_x = 6;
    p.pitch_y = 4;
    p.frames = 3;
    p.noise_sigma = 5;
    const auto s = generate(p);
    write_raw_stack(dir / "s.raw", s);
    EXPECT_TRUE(fs::exists(dir / "s.raw.meta"));
    EXPECT_EQ(read_raw_stack(dir / "s.raw"), s);
    EXPECT_EQ(fs::file_size(dir / "s.raw"), s.raw_bytes());
}

TEST(RawTest, LittleEndianLayout) {
    const FrameStack s({Frame(2, 1, std::vector<std::uint16_t>{0x0102, 0xA0B0})});
    EXPECT_EQ(encode_raw_stack(s), (std::vector<std::uint8_t>{0x02, 0x01, 0xB0, 0xA0}));
}

TEST(RawTest, SizeMismatch) {
    const SidecarMeta m{4, 4, 3, 2, 2};
    const std::vector<std::uint8_t> two_frames(2 * 16 * 2);
    try {
        decode_raw_stack(two_frames, m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::size_mismatch);
    }
}

TEST(SidecarTest, ParseAndFormat) {
    const SidecarMeta m{640, 480, 7, 15, 13};
    EXPECT_EQ(format_sidecar(m), "width=640\nheight=480\nframes=7\npitch_x=15\npitch_y=13\n");
    EXPECT_EQ(parse_sidecar(format_sidecar(m)), m);
    EXPECT_THROW(parse_sidecar("width=1\nheight=1\nframes=1\npitch_x=1\n"), Error);
    EXPECT_THROW(parse_sidecar("width=1\nheight=1\nframes=1\npitch_x=1\npitch_y=1\ndepth=16\n"), Error);
    EXPECT_THROW(parse_sidecar("width=0\nheight=1\nframes=1\npitch_x=1\npitch_y=1\n"), Error);
    EXPECT_THROW(parse_sidecar("width=-3\nheight=1\nframes=1\npitch_x=1\npitch_y=1\n"), Error);
}

TEST(SynthTest, DeterministicInSeed) {
    SynthParams p;
    p.frames = 3;
    p.noise_sigma = 12;
    p.photon_scale = 1;
    p.drift = 1;
    EXPECT_EQ(generate(p), generate(p, 4));
    p.mode = SynthMode::beads;
    EXPECT_EQ(generate(p), generate(p));
    auto q = p;
    q.seed = 2;
    EXPECT_NE(generate(p), generate(q));
}

TEST(SynthTest, NoiselessConstantField) {
    SynthParams p;
    p.signal_amplitude = 0;
    p.background = 321;
    const auto f = generate(p)[0];
    EXPECT_EQ(f, Frame(p.width, p.height, std::vector<std::uint16_t>(f.size(), 321), f.geometry()));
}

TEST(SynthTest, VarianceGrowsWithNoise) {
    for (auto mode : {SynthMode::smooth_lenslet, SynthMode::beads}) {
        double prev = -1;
        for (double sigma : {0.0, 50.0, 200.0, 800.0}) {
            SynthParams p;
            p.mode = mode;
            p.background = 5000;
            p.noise_sigma = sigma;
            const double v = variance(generate(p)[0]);
            EXPECT_GT(v, prev) << synth_mode_name(mode) << " sigma " << sigma;
            prev = v;
        }
    }
}

TEST(SynthTest, RejectsOverflowingParams) {
    SynthParams p;
    p.signal_amplitude = 65000;
    p.noise_sigma = 200;
    EXPECT_THROW(generate(p), Error);
}

TEST(SynthTest, SmoothLensletBenefitsFromPrediction) {
    SynthParams p;
    p.photon_scale = 1;
    p.noise_sigma = 5;
    const auto s = generate(p);
    CompressOptions identity;
    identity.forced = PredictorSpec{false, 0};
    const auto base = compress_stack(s, identity).size();
    std::size_t best = base;
    for (int id = 1; id <= kMaxIntraId; ++id) {
        CompressOptions o;
        o.forced = PredictorSpec{false, id};
        best = std::min(best, compress_stack(s, o).size());
    }
    EXPECT_LT(best, base);
}

TEST(SynthTest, LowSnrBeadsAreNoiseDominated) {
    SynthParams p;
    p.mode = SynthMode::beads;
    p.signal_amplitude = 2000;
    p.photon_scale = 1;
    p.noise_sigma = 200;
    p.background = 1000;
    const auto s = generate(p);
    CompressOptions identity;
    identity.forced = PredictorSpec{false, 0};
    const auto base = compress_stack(s, identity).size();
    std::size_t best = base;
    for (int id = 1; id <= kMaxIntraId; ++id) {
        CompressOptions o;
        o.forced = PredictorSpec{false, id};
        best = std::min(best, compress_stack(s, o).size());
    }
    EXPECT_LT(static_cast<double>(base - best), 0.01 * static_cast<double>(base));
}
