#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pcbz/predictors.hpp"

using namespace pcbz;

namespace {

Frame ramp_x(std::uint32_t w, std::uint32_t h, LensletGeometry g = {}) {
    Frame f(w, h, g);
    for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x) f.at(x, y) = static_cast<std::uint16_t>(x);
    return f;
}

Frame constant(std::uint32_t w, std::uint32_t h, std::uint16_t v, LensletGeometry g = {}) {
    return Frame(w, h, std::vector<std::uint16_t>(static_cast<std::size_t>(w) * h, v), g);
}

}  // namespace

TEST(PredictValueTest, Examples) {
    EXPECT_EQ(predict_value(1, {7, 7, 7}), 7);
    EXPECT_EQ(predict_value(3, {10, 20, 30}), 10);
    EXPECT_EQ(predict_value(4, {7, 0, 0}), 3);
    EXPECT_THROW(predict_value(0, {}), Error);
    EXPECT_THROW(predict_value(5, {}), Error);
}

TEST(PredictValueTest, MatchesFloorOracle) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(0, 65535);
    for (int i = 0; i < 20000; ++i) {
        const NeighborTriple t{d(rng), d(rng), d(rng)};
        for (int f = 1; f <= 4; ++f) EXPECT_EQ(predict_value(f, t), oracle::base_function(f, t.a, t.b, t.c));
    }
}

TEST(GatherNeighborsTest, Examples) {
    const Frame f = ramp_x(10, 10, LensletGeometry(5, 5));
    EXPECT_EQ(gather_neighbors(f, 0, 0, NeighborMode::pixel_adjacent), (NeighborTriple{0, 0, 0}));
    EXPECT_EQ(gather_neighbors(f, 0, 0, NeighborMode::lenslet_stride), (NeighborTriple{0, 0, 0}));
    EXPECT_EQ(gather_neighbors(f, 3, 2, NeighborMode::pixel_adjacent), (NeighborTriple{2, 3, 2}));
    EXPECT_EQ(gather_neighbors(f, 7, 7, NeighborMode::lenslet_stride), (NeighborTriple{2, 7, 2}));
    EXPECT_THROW(gather_neighbors(f, 10, 0, NeighborMode::pixel_adjacent), Error);
    EXPECT_THROW(gather_neighbors(f, -1, 0, NeighborMode::pixel_adjacent), Error);
}

TEST(PredictFrameTest, ConstantFieldF1) {
    const Frame f = constant(4, 4, 7);
    const ResidualFrame r = predict_frame(f, 1);
    for (std::uint32_t y = 0; y < 4; ++y)
        for (std::uint32_t x = 0; x < 4; ++x) {
            // Edge pixels see zero neighbors: top row and left column predict
            // A or B alone (=7) except the origin, which predicts 0.
            const std::uint16_t expected = (x == 0 && y == 0) ? 7 : 0;
            EXPECT_EQ(r.at(x, y), expected) << x << "," << y;
        }
    EXPECT_EQ(r, oracle::residual(f, 1));
}

TEST(PredictFrameTest, IdentityAndWrap) {
    std::mt19937_64 rng(3);
    const Frame f = oracle::random_frame(9, 7, {}, rng);
    EXPECT_EQ(predict_frame(f, 0), f);
    EXPECT_EQ(unpredict_frame(f, 0), f);

    // X = 5 with prediction 10: top-right pixel under f1 on a frame whose
    // left neighbor is 10 and top row is empty.
    Frame g(2, 1, std::vector<std::uint16_t>{10, 5});
    EXPECT_EQ(predict_frame(g, 1).at(1, 0), 65531);
}

TEST(PredictFrameTest, RejectsInvalidId) {
    const Frame f = constant(2, 2, 1);
    EXPECT_THROW(predict_frame(f, 13), Error);
    EXPECT_THROW(predict_frame(f, -1), Error);
    EXPECT_THROW(unpredict_frame(f, 13), Error);
}

TEST(PredictFrameTest, MatchesPerPixelOracle) {
    std::mt19937_64 rng(5);
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, LensletGeometry>> shapes = {
        {1, 1, {1, 1}}, {1, 17, {3, 2}}, {17, 1, {4, 4}}, {23, 19, {5, 7}}, {31, 29, {15, 15}}, {40, 40, {40, 40}}};
    for (const auto& [w, h, g] : shapes) {
        const Frame f = oracle::random_frame(w, h, g, rng);
        for (int id = 0; id <= kMaxIntraId; ++id) EXPECT_EQ(predict_frame(f, id), oracle::residual(f, id)) << id;
    }
}

TEST(PredictFrameTest, RoundTripAllIds) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<std::uint32_t> dim(1, 40), pitch(1, 12);
        const LensletGeometry g(pitch(rng), pitch(rng));
        std::vector<Frame> frames = {oracle::random_frame(dim(rng), dim(rng), g, rng), constant(5, 6, 0, g),
                                     constant(6, 5, 65535, g)};
        for (const auto& f : frames)
            for (int id = 0; id <= kMaxIntraId; ++id) EXPECT_EQ(unpredict_frame(predict_frame(f, id), id), f);
    }
}

TEST(PredictFrameTest, UnitPitchDegeneracy) {
    std::mt19937_64 rng(9);
    const Frame f = oracle::random_frame(33, 21, LensletGeometry(1, 1), rng);
    for (int k = 1; k <= 4; ++k) {
        const auto base = predict_frame(f, k);
        EXPECT_EQ(predict_frame(f, k + 4), base);
        EXPECT_EQ(predict_frame(f, k + 8), base);
    }
}

TEST(PredictFrameTest, ConstantAbsorptionF1Lenslet) {
    const LensletGeometry g(3, 4);
    const Frame f = constant(13, 11, 4242, g);
    const auto r = predict_frame(f, 5);
    for (std::uint32_t y = 0; y < f.height(); ++y)
        for (std::uint32_t x = 0; x < f.width(); ++x)
            if (x >= g.pitch_x && y >= g.pitch_y) {
                EXPECT_EQ(r.at(x, y), 0);
            }
}

TEST(PredictFrameTest, RampAbsorption) {
    Frame f(20, 15);
    for (std::uint32_t y = 0; y < 15; ++y)
        for (std::uint32_t x = 0; x < 20; ++x) f.at(x, y) = static_cast<std::uint16_t>(3 * x + 7 * y);
    const auto r = predict_frame(f, 1);
    for (std::uint32_t y = 1; y < 15; ++y)
        for (std::uint32_t x = 1; x < 20; ++x) EXPECT_EQ(r.at(x, y), 0);
}

TEST(TemporalTest, DeltaExamples) {
    const Frame a = constant(4, 3, 5), b = constant(4, 3, 10);
    EXPECT_EQ(temporal_delta(a, a), constant(4, 3, 0));
    EXPECT_EQ(temporal_delta(a, b), constant(4, 3, 65531));
    EXPECT_THROW(temporal_delta(a, constant(3, 4, 0)), Error);
    EXPECT_THROW(temporal_undelta(a, constant(3, 4, 0)), Error);
}

TEST(TemporalTest, RoundTrip) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 20; ++i) {
        const Frame c = oracle::random_frame(17, 9, {}, rng), p = oracle::random_frame(17, 9, {}, rng);
        EXPECT_EQ(temporal_undelta(temporal_delta(c, p), p), c);
    }
}

TEST(TemporalTest, ApplyAndInvertPredictor) {
    std::mt19937_64 rng(17);
    const LensletGeometry g(4, 4);
    const Frame c = oracle::random_frame(16, 16, g, rng), p = oracle::random_frame(16, 16, g, rng);
    for (bool t : {false, true})
        for (int id = 0; id <= kMaxIntraId; ++id) {
            const PredictorSpec s{t, id};
            EXPECT_EQ(invert_predictor(apply_predictor(c, &p, s), &p, s), c);
        }
    EXPECT_THROW(apply_predictor(c, nullptr, {true, 1}), Error);
}

TEST(PredictFrameTest, ResidualAtMatchesFrame) {
    std::mt19937_64 rng(21);
    const Frame f = oracle::random_frame(23, 19, LensletGeometry(4, 3), rng);
    for (int id = 0; id <= kMaxIntraId; ++id) {
        const auto r = predict_frame(f, id);
        for (std::uint32_t y = 0; y < f.height(); ++y)
            for (std::uint32_t x = 0; x < f.width(); ++x) ASSERT_EQ(residual_at(f, id, x, y), r.at(x, y)) << id;
    }
}
