#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

#include "oracles.hpp"
#include "pcbz/criterion.hpp"
#include "pcbz/synth.hpp"

using namespace pcbz;

namespace {

ByteString bytes(const std::string& s) { return ByteString(s.begin(), s.end()); }

ByteString random_bytes(std::mt19937_64& rng, std::size_t n, int alphabet = 256) {
    std::uniform_int_distribution<int> d(0, alphabet - 1);
    ByteString s(n);
    for (auto& b : s) b = static_cast<std::uint8_t>(d(rng));
    return s;
}

}  // namespace

TEST(ApproxBwtTest, Examples) {
    EXPECT_TRUE(approx_bwt(ByteString{}).empty());
    EXPECT_EQ(approx_bwt(bytes("banana")), bytes("bnnaaa"));
    EXPECT_EQ(oracle::canonical_bwt(bytes("banana")), bytes("nnbaaa"));
    EXPECT_NE(approx_bwt(bytes("banana")), oracle::canonical_bwt(bytes("banana")));
    EXPECT_EQ(approx_bwt(ByteString{97, 98, 97, 98}), bytes("bbaa"));
    EXPECT_EQ(approx_bwt(ByteString{42}), ByteString{42});
}

TEST(ApproxBwtTest, MatchesRotationOracleAndIsAnagram) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        const auto s = random_bytes(rng, rng() % 200, i % 2 ? 4 : 256);
        const auto out = approx_bwt(s);
        EXPECT_EQ(out, oracle::rotation_sort_bwt(s));
        auto a = s, b = out;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        EXPECT_EQ(a, b);
    }
}

TEST(PairHistogramTest, Examples) {
    auto h = pair_histogram(ByteString{7, 7, 7, 7});
    EXPECT_EQ(h.total, 3u);
    EXPECT_EQ(h.counts[0x0707], 3u);
    EXPECT_EQ(std::count_if(h.counts.begin(), h.counts.end(), [](auto c) { return c != 0; }), 1);

    h = pair_histogram(ByteString{98, 98, 97, 97});
    EXPECT_EQ(h.total, 3u);
    EXPECT_EQ(h.counts[0x6262], 1u);
    EXPECT_EQ(h.counts[0x6261], 1u);
    EXPECT_EQ(h.counts[0x6161], 1u);

    h = pair_histogram(ByteString{5});
    EXPECT_EQ(h.total, 0u);
    EXPECT_EQ(std::count_if(h.counts.begin(), h.counts.end(), [](auto c) { return c != 0; }), 0);
}

TEST(PairHistogramTest, SumEqualsTotal) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        const auto s = random_bytes(rng, rng() % 500);
        const auto h = pair_histogram(s);
        std::uint64_t sum = 0;
        for (auto c : h.counts) sum += c;
        EXPECT_EQ(sum, s.size() < 2 ? 0u : s.size() - 1);
        EXPECT_EQ(sum, h.total);
    }
}

TEST(Entropy2dTest, Examples) {
    EXPECT_EQ(entropy2d(pair_histogram(ByteString(100, 9))), 0.0);
    EXPECT_EQ(entropy2d(pair_histogram(ByteString{})), 0.0);

    PairHistogram three;
    three.counts[1] = three.counts[2] = three.counts[3] = 1;
    three.total = 3;
    EXPECT_NEAR(entropy2d(three), 1.584962500721156, 1e-12);

    PairHistogram skewed;
    skewed.counts[10] = 1;
    skewed.counts[20] = 3;
    skewed.total = 4;
    EXPECT_NEAR(entropy2d(skewed), 0.8112781244591328, 1e-12);
}

TEST(Entropy2dTest, BoundedAndMatchesOracle) {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_bytes(rng, 2 + rng() % 3000, 1 + static_cast<int>(rng() % 256));
        const auto h = pair_histogram(s);
        const double e = entropy2d(h);
        EXPECT_GE(e, 0.0);
        EXPECT_LE(e, std::min(16.0, std::log2(static_cast<double>(h.total))) + 1e-12);
        const double ref = oracle::entropy_from_counts(oracle::pair_counts(s));
        EXPECT_LE(std::abs(e - ref), 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST(BwtPairHistogramTest, FusedEqualsMaterialized) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto s = random_bytes(rng, rng() % 400, i % 3 ? 256 : 3);
        const auto fused = bwt_pair_histogram(s);
        const auto direct = pair_histogram(approx_bwt(s));
        EXPECT_EQ(fused.total, direct.total);
        EXPECT_EQ(fused.counts, direct.counts);
    }
}

TEST(CandidateEntropyTest, Examples) {
    EXPECT_EQ(candidate_entropy(Frame(8, 5)), 0.0);
    // Bytes 00 07 x4 -> approx BWT 07 07 07 07 00 00 00 00.
    const Frame c7(2, 2, std::vector<std::uint16_t>(4, 7));
    EXPECT_EQ(approx_bwt(serialize_frame(c7)), (ByteString{7, 7, 7, 7, 0, 0, 0, 0}));
    EXPECT_NEAR(candidate_entropy(c7), 1.4488156357251847, 1e-12);
}

TEST(CandidateEntropyTest, MatchesComposedPathAndBound) {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 40; ++i) {
        const std::uint32_t w = 1 + rng() % 40, h = 1 + rng() % 40;
        const Frame f = oracle::random_frame(w, h, {}, rng, i % 2 ? 65535 : 300);
        const auto bytes = serialize_frame(f);
        const double ref = oracle::entropy_from_counts(oracle::pair_counts(oracle::index_sort_bwt(bytes)));
        const double e = candidate_entropy(f);
        EXPECT_NEAR(e, ref, 1e-12 * std::max(1.0, ref));
        EXPECT_LE(e, std::min(16.0, std::log2(2.0 * w * h - 1)) + 1e-12);
    }
}

TEST(CandidateEntropyTest, FusedPredictionMatchesOracle) {
    std::mt19937_64 rng(41);
    EntropyScratch scratch;
    for (int i = 0; i < 30; ++i) {
        const std::uint32_t w = 1 + rng() % 30, h = 1 + rng() % 30;
        const LensletGeometry g(1 + rng() % 6, 1 + rng() % 6);
        const Frame f = oracle::random_frame(w, h, g, rng, i % 2 ? 65535 : 500);
        for (int id = 0; id <= kMaxIntraId; ++id) {
            const Frame r = oracle::residual(f, id);
            const double ref = oracle::entropy_from_counts(oracle::pair_counts(oracle::index_sort_bwt(serialize_frame(r))));
            EXPECT_NEAR(candidate_entropy(f, id, scratch), ref, 1e-12 * std::max(1.0, ref)) << id;
        }
    }
}

TEST(SelectPredictorTest, ConstantFrameBruteForce) {
    const Frame f(16, 16, std::vector<std::uint16_t>(256, 1234));
    const auto report = select_predictor(f, nullptr, {{false, 0}, {false, 1}});
    ASSERT_EQ(report.entries.size(), 2u);
    const double e0 = candidate_entropy(predict_frame(f, 0));
    const double e1 = candidate_entropy(predict_frame(f, 1));
    EXPECT_EQ(report.entropy_of({false, 0}), e0);
    EXPECT_EQ(report.entropy_of({false, 1}), e1);
    EXPECT_EQ(report.selected, (e1 < e0 ? PredictorSpec{false, 1} : PredictorSpec{false, 0}));
}

TEST(SelectPredictorTest, SingletonAndTieBreak) {
    std::mt19937_64 rng(41);
    const Frame f = oracle::random_frame(10, 10, LensletGeometry(1, 1), rng);
    EXPECT_EQ(select_predictor(f, nullptr, {{false, 0}}).selected, (PredictorSpec{false, 0}));
    // With unit pitch, ids 1, 5 and 9 give identical residuals and entropies.
    const auto r = select_predictor(f, nullptr, {{false, 9}, {false, 5}, {false, 1}});
    EXPECT_EQ(r.entropy_of({false, 1}), r.entropy_of({false, 9}));
    EXPECT_EQ(r.selected, (PredictorSpec{false, 1}));
}

TEST(SelectPredictorTest, Errors) {
    const Frame f(4, 4);
    EXPECT_THROW(select_predictor(f, nullptr, std::span<const PredictorSpec>{}), Error);
    try {
        select_predictor(f, nullptr, {{true, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invalid_candidate);
    }
}

TEST(SelectPredictorTest, DeterministicAcrossWorkersAndOrder) {
    SynthParams p;
    p.frames = 2;
    p.noise_sigma = 30;
    p.drift = 1;
    const auto stack = generate(p);
    auto cands = default_candidates(true);
    const auto ref = select_predictor(stack[1], &stack[0], cands, 1);
    ASSERT_EQ(ref.entries.size(), 26u);
    std::mt19937_64 rng(43);
    for (unsigned w : {2u, 3u, 8u}) {
        std::shuffle(cands.begin(), cands.end(), rng);
        const auto r = select_predictor(stack[1], &stack[0], cands, w);
        EXPECT_EQ(r.selected, ref.selected);
        for (std::size_t i = 0; i < r.entries.size(); ++i) {
            EXPECT_EQ(r.entries[i].spec, ref.entries[i].spec);
            EXPECT_EQ(r.entries[i].entropy_bits, ref.entries[i].entropy_bits);
        }
    }
    // Reported minimum is the argmin.
    for (const auto& e : ref.entries) EXPECT_GE(e.entropy_bits, ref.entropy_of(ref.selected));
}

TEST(Entropy2dTest, ManyEqualPairsStayAccurate) {
    // All pairs distinct: entropy is exactly log2(pairs).
    for (std::size_t pairs : {999u, 4096u, 65535u}) {
        PairHistogram h;
        for (std::size_t t = 0; t < pairs; ++t) h.counts[t] = 1;
        h.total = pairs;
        EXPECT_NEAR(entropy2d(h), std::log2(static_cast<double>(pairs)), 1e-12) << pairs;
    }
}

TEST(CandidateEntropyTest, CounterWrapAroundIsExact) {
    // Several pair values wrap the narrow counters many times over.
    std::mt19937_64 rng(43);
    Frame f(400, 400);
    for (auto& v : f.samples()) v = rng() % 10 == 0 ? static_cast<std::uint16_t>(rng()) : 0x0102;
    const double ref = entropy2d(bwt_pair_histogram(serialize_frame(f)));
    EXPECT_NEAR(candidate_entropy(f), ref, 1e-12 * std::max(1.0, ref));
    EntropyScratch scratch;
    for (int id : {0, 1, 9}) {
        const double r = entropy2d(bwt_pair_histogram(serialize_frame(predict_frame(f, id))));
        EXPECT_NEAR(candidate_entropy(f, id, scratch), r, 1e-12 * std::max(1.0, r)) << id;
    }
}
