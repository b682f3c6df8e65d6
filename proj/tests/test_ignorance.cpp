#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "warcast/ignorance.hpp"

using namespace warcast;

TEST_CASE("fourier ignorance on the worked ensemble", "[ignorance]") {
    const std::vector<std::int32_t> draws = {0, 0, 0, 2, 11, 4};
    const IgnConfig cfg;  // fourier, n_target = 1000

    // Frozen from a reference run of the same pipeline: resample to 1000,
    // round, clamp, bin, add-one smoothing over 11 bins.
    CHECK(ignorance_score(draws, 0, cfg) ==
          Catch::Approx(0.9154780914452422).margin(1e-12));
    CHECK(ignorance_score(draws, 10, cfg) ==
          Catch::Approx(2.465867443618972).margin(1e-12));

    // The same two scores, spelled as smoothed bin probabilities.
    CHECK(ignorance_score(draws, 0, cfg) ==
          Catch::Approx(-std::log2(536.0 / 1011.0)).margin(1e-12));
    CHECK(ignorance_score(draws, 10, cfg) ==
          Catch::Approx(-std::log2(183.0 / 1011.0)).margin(1e-12));
}

TEST_CASE("tile ignorance on the worked ensemble is exact", "[ignorance]") {
    const std::vector<std::int32_t> draws = {0, 0, 0, 2, 11, 4};
    IgnConfig cfg;
    cfg.resample_mode = ResampleMode::tile;
    CHECK(ignorance_score(draws, 0, cfg) == -std::log2(501.0 / 1011.0));
    CHECK(ignorance_score(draws, 10, cfg) == -std::log2(1.0 / 1011.0));
}

TEST_CASE("ignorance depends only on the observation's bin", "[ignorance]") {
    const std::vector<std::int32_t> draws = {0, 0, 0, 2, 11, 4};
    for (const ResampleMode mode : {ResampleMode::tile, ResampleMode::fourier}) {
        IgnConfig cfg;
        cfg.resample_mode = mode;
        // 6 and 10 share the 6-10 bin.
        CHECK(ignorance_score(draws, 6, cfg) == ignorance_score(draws, 10, cfg));
        CHECK(ignorance_score(draws, 1, cfg) == ignorance_score(draws, 2, cfg));
    }
}

TEST_CASE("ignorance stays inside the smoothing bounds", "[ignorance]") {
    const IgnConfig cfg;
    const double floor = ign_floor(cfg);
    const double ceiling = ign_ceiling(cfg);
    CHECK(floor == -std::log2(1001.0 / 1011.0));
    CHECK(ceiling == -std::log2(1.0 / 1011.0));

    std::mt19937 rng(41);
    std::uniform_int_distribution<std::int32_t> size(15, 60);
    std::uniform_int_distribution<std::int32_t> val(0, 1200);
    std::uniform_int_distribution<std::int32_t> obs(0, 1200);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<std::int32_t> draws(static_cast<std::size_t>(size(rng)));
        for (auto& d : draws) d = val(rng);
        for (const ResampleMode mode : {ResampleMode::tile, ResampleMode::fourier}) {
            IgnConfig c;
            c.resample_mode = mode;
            const double s = ignorance_score(draws, obs(rng), c);
            CHECK(s >= floor);
            CHECK(s <= ceiling);
        }
    }
}

TEST_CASE("a bin-pure forecast attains the floor", "[ignorance]") {
    const IgnConfig cfg;
    const std::vector<std::int32_t> draws(1000, 7);
    CHECK(ignorance_score(draws, 7, cfg) == ign_floor(cfg));
    // Tile mode with fewer draws than the target also lands every resampled
    // draw in the right bin.
    IgnConfig tile = cfg;
    tile.resample_mode = ResampleMode::tile;
    CHECK(ignorance_score(std::vector<std::int32_t>(17, 7), 7, tile) == ign_floor(cfg));
}

TEST_CASE("ignorance input validation", "[ignorance]") {
    const IgnConfig cfg;
    CHECK_THROWS_AS(ignorance_score({}, 0, cfg), std::domain_error);
    CHECK_THROWS_AS(ignorance_score({1, 2, 3}, -1, cfg), std::domain_error);
    IgnConfig bad;
    bad.n_target = 0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}
