#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>

#include "pcbz/bench.hpp"
#include "pcbz/io.hpp"
#include "pcbz/pipeline.hpp"
#include "pcbz/report.hpp"
#include "pcbz/synth.hpp"

using namespace pcbz;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + PCBZ_CLI_PATH + "' " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("pcbz_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> f;
    std::stringstream in(line);
    for (std::string x; std::getline(in, x, ',');) f.push_back(x);
    return f;
}

}  // namespace

TEST_F(CliTest, GenMatchesLibrary) {
    ASSERT_EQ(run("gen -o " + path("a.pgm") + " --frames 2 --noise 20 --photon-scale 1 --drift 1 --seed 9").code, 0);
    SynthParams p;
    p.frames = 2;
    p.noise_sigma = 20;
    p.photon_scale = 1;
    p.drift = 1;
    p.seed = 9;
    EXPECT_EQ(read_pgm_stack(path("a.pgm"), LensletGeometry(15, 15)), generate(p));
}

TEST_F(CliTest, PgmRoundTripIsByteIdentical) {
    ASSERT_EQ(run("gen -o " + path("a.pgm") + " --frames 3 --drift 1 --noise 30 --photon-scale 1").code, 0);
    ASSERT_EQ(run("compress " + path("a.pgm") + " --pitch 15x15 --block-size 10000 -o " + path("a.pcbz")).code, 0);
    ASSERT_EQ(run("decompress " + path("a.pcbz") + " -o " + path("b.pgm")).code, 0);
    EXPECT_EQ(read_file(path("a.pgm")), read_file(path("b.pgm")));
}

TEST_F(CliTest, RawRoundTripWithSidecar) {
    ASSERT_EQ(run("gen -o " + path("a.raw") + " --mode beads --size 64x48 --pitch 8x6 --frames 2 --noise 5").code, 0);
    ASSERT_EQ(run("compress -i " + path("a.raw") + " -o " + path("a.pcbz")).code, 0);
    ASSERT_EQ(run("decompress -i " + path("a.pcbz") + " -o " + path("b.raw")).code, 0);
    EXPECT_EQ(read_file(path("a.raw")), read_file(path("b.raw")));
    EXPECT_EQ(read_file(path("a.raw.meta")), read_file(path("b.raw.meta")));
    EXPECT_EQ(read_container(read_file(path("a.pcbz"))).header.pitch_x, 8);
}

TEST_F(CliTest, CompressMatchesLibrary) {
    ASSERT_EQ(run("gen -o " + path("a.pgm") + " --frames 2 --noise 10").code, 0);
    ASSERT_EQ(run("compress " + path("a.pgm") + " --pitch 15x15 --temporal off -o " + path("a.pcbz")).code, 0);
    CompressOptions o;
    o.temporal = false;
    EXPECT_EQ(read_file(path("a.pcbz")), compress_stack(read_pgm_stack(path("a.pgm"), LensletGeometry(15, 15)), o));
}

TEST_F(CliTest, InspectMatchesLibrary) {
    ASSERT_EQ(run("gen -o " + path("a.pgm") + " --frames 2").code, 0);
    ASSERT_EQ(run("compress " + path("a.pgm") + " --pitch 15x15 --block-size 20000 -o " + path("a.pcbz")).code, 0);
    const auto bytes = read_file(path("a.pcbz"));
    const CliRun r = run("inspect " + path("a.pcbz"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, inspect_text(read_container(bytes), bytes.size()));
    EXPECT_NE(r.out.find("blocks 3 "), std::string::npos);
}

TEST_F(CliTest, ForcedIdentityShowsInInspect) {
    ASSERT_EQ(run("gen -o " + path("a.pgm")).code, 0);
    ASSERT_EQ(run("compress " + path("a.pgm") + " --predictor 0 -o " + path("a.pcbz")).code, 0);
    EXPECT_NE(run("inspect " + path("a.pcbz")).out.find("frame 0 predictor 0x00 identity"), std::string::npos);
}

TEST_F(CliTest, ThreadCountNeverChangesOutput) {
    ASSERT_EQ(run("gen -o " + path("a.pgm") + " --frames 3 --drift 1 --noise 40 --photon-scale 1").code, 0);
    ASSERT_EQ(run("compress " + path("a.pgm") + " --block-size 8192 --threads 1 -o " + path("1.pcbz")).code, 0);
    ASSERT_EQ(run("compress " + path("a.pgm") + " --block-size 8192 --threads 4 -o " + path("4.pcbz")).code, 0);
    ASSERT_EQ(run("compress " + path("a.pgm") + " --block-size 8192 -o " + path("e.pcbz"), "PCBZ_THREADS=3").code, 0);
    EXPECT_EQ(read_file(path("1.pcbz")), read_file(path("4.pcbz")));
    EXPECT_EQ(read_file(path("1.pcbz")), read_file(path("e.pcbz")));
}

TEST_F(CliTest, BenchCsvMatchesLibrary) {
    const CliRun r = run("bench --modes beads --sweep-noise 0,100 --samples 1 --size 60x60 --pitch 12x12 --seed 4");
    ASSERT_EQ(r.code, 0);
    BenchConfig c;
    c.modes = {SynthMode::beads};
    c.noise_levels = {0, 100};
    c.samples = 1;
    c.width = c.height = 60;
    c.pitch_x = c.pitch_y = 12;
    c.seed = 4;
    const auto rows = run_bench(c);
    std::stringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line + "\n", bench_csv_header());
    std::size_t i = 0;
    for (; std::getline(in, line); ++i) {
        ASSERT_LT(i, rows.size());
        auto got = csv_fields(line);
        auto want = csv_fields(bench_csv_row(rows[i]).substr(0, bench_csv_row(rows[i]).size() - 1));
        ASSERT_EQ(got.size(), 11u);
        // Timing columns 8 and 9 vary between runs.
        got[8] = got[9] = want[8] = want[9] = "";
        EXPECT_EQ(got, want);
    }
    EXPECT_EQ(i, rows.size());
    EXPECT_EQ(rows.size(), 2u * 13u);

    ASSERT_EQ(run("bench --modes beads --sweep-noise 0 --samples 1 --size 30x30 --pitch 6x6 --csv " + path("b.csv")).code,
              0);
    EXPECT_TRUE(fs::file_size(path("b.csv")) > bench_csv_header().size());
}

TEST_F(CliTest, ExitCodes) {
    ASSERT_EQ(run("gen -o " + path("a.pgm") + " --frames 2").code, 0);
    ASSERT_EQ(run("compress " + path("a.pgm") + " -o " + path("a.pcbz")).code, 0);

    // Usage errors.
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("compress").code, 1);
    EXPECT_EQ(run("compress " + path("a.pgm") + " -o " + path("x") + " --predictor 13").code, 1);
    EXPECT_EQ(run("compress " + path("a.pgm") + " -o " + path("x") + " --predictor 2,temporal --temporal off").code, 1);
    EXPECT_EQ(run("compress " + path("a.pgm") + " -o " + path("x") + " --pitch 0x3").code, 1);
    EXPECT_EQ(run("bench --sweep-noise abc").code, 1);
    EXPECT_EQ(run("gen -o " + path("x.pgm") + " --mode waves").code, 1);
    EXPECT_EQ(run("gen -o " + path("x.pgm") + " --amplitude 65000 --noise 500").code, 1);

    // I/O and format errors.
    EXPECT_EQ(run("inspect " + path("a.pgm")).code, 2);
    EXPECT_EQ(run("compress " + path("a.pcbz") + " -o " + path("x")).code, 2);

    // Corrupt containers.
    auto bytes = read_file(path("a.pcbz"));
    auto cut = bytes;
    cut.resize(bytes.size() - 10);
    write_file(path("cut.pcbz"), cut);
    EXPECT_EQ(run("decompress " + path("cut.pcbz") + " -o " + path("x.pgm")).code, 3);
    auto bad = bytes;
    bad[kHeaderBytes] = 0x55;
    write_file(path("bad.pcbz"), bad);
    EXPECT_EQ(run("inspect " + path("bad.pcbz")).code, 3);
    bad = bytes;
    bad[container_overhead(2, 1) + 40] ^= 0xFF;
    write_file(path("bad2.pcbz"), bad);
    EXPECT_EQ(run("decompress " + path("bad2.pcbz") + " -o " + path("x.pgm")).code, 3);
}
