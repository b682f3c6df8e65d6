#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "warcast/synth.hpp"

using namespace warcast;

namespace {

double zero_share_of(const ObservationPanel& panel) {
    std::size_t zeros = 0, total = 0;
    for (const auto& [unit, s] : panel.series()) {
        for (const std::int32_t v : s.values) {
            zeros += v == 0;
            ++total;
        }
    }
    return static_cast<double>(zeros) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("synthetic panels hit the requested shape", "[synth]") {
    SynthSpec spec = SynthSpec::defaults(Level::cm);
    spec.n_units = 20;
    spec.seed = 1;
    const ObservationPanel panel = generate_panel(spec);
    CHECK(panel.level() == Level::cm);
    CHECK(panel.unit_count() == 20);
    CHECK(panel.cell_count() == 20u * 72u);
    const auto& s = panel.series().at(1);
    CHECK(s.first == spec.first_month);
    CHECK(s.last() == spec.last_month);
}

TEST_CASE("the zero share tracks the configured target", "[synth]") {
    SynthSpec spec = SynthSpec::defaults(Level::cm);
    spec.n_units = 100;
    spec.seed = 2;
    const ObservationPanel panel = generate_panel(spec);
    // 7200 cells; the chain is stationary at pi = 0.13, so the share of
    // zeros concentrates near 0.87. Persistence inflates the variance, so
    // the tolerance is loose.
    CHECK(std::abs(zero_share_of(panel) - 0.87) < 0.04);
}

TEST_CASE("conflict months are positive and heavy-tailed", "[synth]") {
    SynthSpec spec = SynthSpec::defaults(Level::cm);
    spec.n_units = 100;
    spec.seed = 3;
    const ObservationPanel panel = generate_panel(spec);

    std::vector<std::int32_t> nonzero;
    for (const auto& [unit, s] : panel.series())
        for (const std::int32_t v : s.values)
            if (v != 0) nonzero.push_back(v);
    REQUIRE(nonzero.size() > 300);
    CHECK(*std::min_element(nonzero.begin(), nonzero.end()) >= 1);

    // Right skew: with dispersion 0.5 the NB tail is fat, so the mean sits
    // well above the median.
    std::sort(nonzero.begin(), nonzero.end());
    double sum = 0.0;
    for (const std::int32_t v : nonzero) sum += v;
    const double mean = sum / static_cast<double>(nonzero.size());
    const double median = nonzero[nonzero.size() / 2];
    CHECK(mean > median);
    CHECK(nonzero.back() > 4 * mean);
}

TEST_CASE("persistence controls the state autocorrelation", "[synth]") {
    // With persistence 0 the conflict indicator is iid, so its lag-1 sample
    // autocorrelation should hover near zero.
    SynthSpec spec = SynthSpec::defaults(Level::cm);
    spec.persistence = 0.0;
    spec.n_units = 200;
    spec.seed = 4;
    const ObservationPanel panel = generate_panel(spec);

    double mean = 0.0;
    std::size_t n = 0;
    for (const auto& [unit, s] : panel.series())
        for (const std::int32_t v : s.values) {
            mean += v != 0;
            ++n;
        }
    mean /= static_cast<double>(n);

    double num = 0.0, den = 0.0;
    std::size_t pairs = 0;
    for (const auto& [unit, s] : panel.series()) {
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            const double x = (s.values[i] != 0) - mean;
            den += x * x;
            if (i + 1 < s.values.size()) {
                const double y = (s.values[i + 1] != 0) - mean;
                num += x * y;
                ++pairs;
            }
        }
    }
    REQUIRE(pairs > 10000);
    CHECK(std::abs(num / den) < 0.05);

    // And with high persistence the autocorrelation is clearly positive.
    spec.persistence = 0.9;
    const ObservationPanel sticky = generate_panel(spec);
    double smean = 0.0;
    std::size_t sn = 0;
    for (const auto& [unit, s] : sticky.series())
        for (const std::int32_t v : s.values) {
            smean += v != 0;
            ++sn;
        }
    smean /= static_cast<double>(sn);
    double snum = 0.0, sden = 0.0;
    for (const auto& [unit, s] : sticky.series())
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            const double x = (s.values[i] != 0) - smean;
            sden += x * x;
            if (i + 1 < s.values.size()) snum += x * ((s.values[i + 1] != 0) - smean);
        }
    CHECK(snum / sden > 0.6);
}

TEST_CASE("generation is deterministic in the seed", "[synth]") {
    SynthSpec spec = SynthSpec::defaults(Level::cm);
    spec.n_units = 10;
    spec.seed = 5;
    const ObservationPanel a = generate_panel(spec);
    const ObservationPanel b = generate_panel(spec);
    for (const auto& [unit, s] : a.series()) CHECK(s.values == b.series().at(unit).values);

    spec.seed = 6;
    const ObservationPanel c = generate_panel(spec);
    bool any_diff = false;
    for (const auto& [unit, s] : a.series())
        if (s.values != c.series().at(unit).values) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("pgm panels use a compact block of valid grid cells", "[synth]") {
    SynthSpec spec = SynthSpec::defaults(Level::pgm);
    spec.n_units = 10;
    spec.seed = 7;
    const ObservationPanel panel = generate_panel(spec);
    CHECK(panel.unit_count() == 10);
    for (const std::int32_t gid : panel.unit_ids()) {
        CHECK(unit_id_valid({Level::pgm, gid}));
        CHECK(GridTopology::row_of(gid) <= 3);
        CHECK(GridTopology::col_of(gid) <= 4);
    }
    // The pgm default is much sparser than the cm default.
    CHECK(SynthSpec::defaults(Level::pgm).zero_share == 0.99);
}

TEST_CASE("spec validation rejects out-of-range parameters", "[synth]") {
    SynthSpec spec = SynthSpec::defaults(Level::cm);
    spec.n_units = 0;
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
    spec = SynthSpec::defaults(Level::cm);
    spec.zero_share = 1.0;
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
    spec = SynthSpec::defaults(Level::cm);
    spec.persistence = 1.0;
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
    spec = SynthSpec::defaults(Level::cm);
    spec.last_month = spec.first_month - 1;
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
    spec = SynthSpec::defaults(Level::cm);
    spec.tail_dispersion = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
}
