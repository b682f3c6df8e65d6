#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "warcast/warcast.hpp"

using namespace warcast;
namespace fs = std::filesystem;

namespace {

// A scratch directory per test run, removed afterwards.
struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("warcast_io_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

std::string path_of(const TempDir& tmp, const std::string& name, const std::string& content) {
    const std::string p = tmp.file(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

ForecastTable tiny_table(Level level) {
    ForecastTable t(level);
    std::vector<std::int32_t> draws(15);
    for (std::size_t i = 0; i < draws.size(); ++i)
        draws[i] = static_cast<std::int32_t>((i * 7) % 13);
    t.insert(level == Level::pgm ? 721 : 1, 400, draws);
    t.insert(level == Level::pgm ? 722 : 2, 400, std::vector<std::int32_t>(15, 4));
    t.insert(level == Level::pgm ? 721 : 1, 401, std::vector<std::int32_t>(15, 0));
    return t;
}

}  // namespace

TEST_CASE("submissions round trip at both levels", "[io]") {
    TempDir tmp;
    for (const Level level : {Level::cm, Level::pgm}) {
        const ForecastTable t = tiny_table(level);
        const std::string p = tmp.file(std::string(level_name(level)) + ".csv");
        io::write_submission(t, p);
        const ForecastTable back = io::read_submission(p);
        CHECK(back.level() == level);
        REQUIRE(back.cell_count() == t.cell_count());
        for (const auto& [key, draws] : t.cells())
            CHECK(back.draws(key.first, key.second) == draws);
    }
}

TEST_CASE("the canonical column orders differ by level", "[io]") {
    TempDir tmp;
    const std::string cm = tmp.file("cm.csv");
    io::write_submission(tiny_table(Level::cm), cm);
    CHECK(slurp(cm).rfind("month_id,country_id,draw,prediction\n", 0) == 0);

    const std::string pgm = tmp.file("pgm.csv");
    io::write_submission(tiny_table(Level::pgm), pgm);
    CHECK(slurp(pgm).rfind("priogrid_gid,month_id,draw,prediction\n", 0) == 0);
}

TEST_CASE("columns are matched by name, not position", "[io]") {
    TempDir tmp;
    const std::string p = path_of(tmp, "shuffled.csv",
                                  "prediction,draw,country_id,month_id\n"
                                  "5,0,3,400\n"
                                  "7,1,3,400\n"
                                  "0,2,3,400\n"
                                  "1,3,3,400\n"
                                  "2,4,3,400\n"
                                  "5,5,3,400\n"
                                  "7,6,3,400\n"
                                  "0,7,3,400\n"
                                  "1,8,3,400\n"
                                  "2,9,3,400\n"
                                  "5,10,3,400\n"
                                  "7,11,3,400\n"
                                  "0,12,3,400\n"
                                  "1,13,3,400\n"
                                  "2,14,3,400\n");
    const ForecastTable t = io::read_submission(p);
    CHECK(t.level() == Level::cm);
    REQUIRE(t.cell_count() == 1);
    CHECK(t.draws(3, 400)[0] == 5);
    CHECK(t.draws(3, 400)[14] == 2);
}

TEST_CASE("draw rows may arrive out of order but ids must be 0..n-1", "[io]") {
    TempDir tmp;
    std::string rows = "month_id,country_id,draw,prediction\n";
    for (int d = 14; d >= 0; --d)
        rows += "400,1," + std::to_string(d) + "," + std::to_string(d * 2) + "\n";
    const ForecastTable t = io::read_submission(path_of(tmp, "rev.csv", rows));
    const std::vector<std::int32_t>& draws = t.draws(1, 400);
    for (std::size_t i = 0; i < draws.size(); ++i)
        CHECK(draws[i] == static_cast<std::int32_t>(2 * i));

    // Gap in the ids.
    std::string gap = "month_id,country_id,draw,prediction\n";
    for (int d = 0; d < 15; ++d)
        gap += "400,1," + std::to_string(d == 7 ? 99 : d) + ",1\n";
    CHECK_THROWS_AS(io::read_submission(path_of(tmp, "gap.csv", gap)), io::ParseError);

    // Too few draws.
    std::string knee = "month_id,country_id,draw,prediction\n";
    for (int d = 0; d < 14; ++d) knee += "400,1," + std::to_string(d) + ",1\n";
    CHECK_THROWS_AS(io::read_submission(path_of(tmp, "knee.csv", knee)), io::ParseError);
}

TEST_CASE("submission reading surfaces schema and type errors", "[io]") {
    TempDir tmp;
    CHECK_THROWS_AS(io::read_submission(path_of(tmp, "nohdr.csv", "")), io::ParseError);
    CHECK_THROWS_AS(
        io::read_submission(path_of(tmp, "badhdr.csv", "who,month_id,draw,prediction\n1,1,0,0\n")),
        io::ParseError);
    CHECK_THROWS_AS(
        io::read_submission(path_of(
            tmp, "badval.csv", "month_id,country_id,draw,prediction\n400,1,0,huge\n")),
        io::ParseError);
    CHECK_THROWS_AS(io::read_submission(tmp.file("absent.csv")), io::FileError);
}

TEST_CASE("observations round trip with level-specific ordering", "[io]") {
    TempDir tmp;
    ObservationPanel::Builder b(Level::cm);
    for (int u = 1; u <= 3; ++u)
        for (MonthId m = 400; m <= 405; ++m) b.add(u, m, (u + m) % 9);
    const ObservationPanel panel = std::move(b).build();

    const std::string p = tmp.file("obs.csv");
    io::write_observations(panel, p);
    CHECK(slurp(p).rfind("month_id,country_id,fatalities\n", 0) == 0);
    const ObservationPanel back = io::read_observations(p);
    CHECK(back.cell_count() == panel.cell_count());
    for (int u = 1; u <= 3; ++u)
        for (MonthId m = 400; m <= 405; ++m) CHECK(back.at(u, m) == panel.at(u, m));

    // A parse failure carries its location.
    const std::string bad = path_of(tmp, "bad_obs.csv",
                                    "month_id,country_id,fatalities\n400,1,-3\n");
    try {
        io::read_observations(bad);
        FAIL("expected a parse error");
    } catch (const io::ParseError& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
}

TEST_CASE("point submissions expand deterministically", "[io]") {
    TempDir tmp;
    const std::string p = path_of(tmp, "point.csv",
                                  "country_id,month_id,point\n1,400,4.0\n2,400,0\n");
    const ForecastTable a = io::load_point_submission(p, 100, 5);
    const ForecastTable b = io::load_point_submission(p, 100, 5);
    REQUIRE(a.cell_count() == 2);
    CHECK(a.draws(1, 400) == b.draws(1, 400));
    CHECK(a.draws(2, 400) == std::vector<std::int32_t>(100, 0));
    const ForecastTable c = io::load_point_submission(p, 100, 6);
    CHECK(a.draws(1, 400) != c.draws(1, 400));

    const std::string neg = path_of(tmp, "neg_point.csv",
                                    "country_id,month_id,point\n1,400,-2\n");
    CHECK_THROWS_AS(io::load_point_submission(neg, 100, 5), io::ParseError);
}

TEST_CASE("window files accept dates, bare ids, comments, blanks", "[io]") {
    TempDir tmp;
    const std::string p = path_of(tmp, "windows.csv",
                                  "# evaluation windows\n"
                                  "\n"
                                  "2018,2017-10,2018-01\n"
                                  "late,500,503\n");
    const std::vector<EvaluationWindow> wins = io::read_windows(p);
    REQUIRE(wins.size() == 2);
    CHECK(wins[0].name == "2018");
    CHECK(wins[0].train_cutoff == month_id_from_date(2017, 10));
    CHECK(wins[1].train_cutoff == 500);
    CHECK(wins[1].first_month() == 503);

    CHECK_THROWS_AS(io::read_windows(path_of(tmp, "dup.csv",
                                             "a,2017-10,2018-01\na,2019-10,2020-01\n")),
                    io::ParseError);
    CHECK_THROWS_AS(io::read_windows(path_of(tmp, "rev.csv", "a,2018-01,2017-10\n")),
                    io::ParseError);
    CHECK_THROWS_AS(io::read_windows(path_of(tmp, "empty.csv", "# nothing\n")), io::ParseError);
}

TEST_CASE("masks parse, deduplicate, and sort", "[io]") {
    TempDir tmp;
    const std::vector<std::int32_t> gids =
        io::read_mask(path_of(tmp, "mask.txt", "# header comment\n950\n  720 \n\n1\n"));
    CHECK(gids == std::vector<std::int32_t>{1, 720, 950});
    CHECK_THROWS_AS(io::read_mask(path_of(tmp, "dup.txt", "5\n5\n")), io::ParseError);
    CHECK_THROWS_AS(io::read_mask(path_of(tmp, "oob.txt", "0\n")), io::ParseError);
    CHECK_THROWS_AS(io::read_mask(path_of(tmp, "junk.txt", "abc\n")), io::ParseError);
}

TEST_CASE("score tables round trip with identical aggregates", "[io]") {
    TempDir tmp;
    ScoreTable t(Level::cm, {"2018", "2019"});
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> v(0.0, 100.0);
    for (int w = 0; w < 2; ++w)
        for (std::int32_t unit = 1; unit <= 5; ++unit)
            for (MonthId m = 457 + w * 12; m < 457 + w * 12 + 12; ++m)
                t.add_row(w, unit, m, ScoreTriple{v(rng), v(rng), v(rng)});
    t.sort_rows();

    const std::string p = tmp.file("scores.csv");
    io::write_score_table(t, p);
    const ScoreTable back = io::read_score_table(p);
    CHECK(back.window_names() == t.window_names());
    REQUIRE(back.rows().size() == t.rows().size());
    for (std::size_t i = 0; i < t.rows().size(); ++i) {
        CHECK(back.rows()[i].score.crps == t.rows()[i].score.crps);
        CHECK(back.rows()[i].score.ign == t.rows()[i].score.ign);
        CHECK(back.rows()[i].score.mis == t.rows()[i].score.mis);
    }
    CHECK(back.overall().crps == t.overall().crps);

    // Duplicate (unit, month) rows are rejected on read.
    const std::string dup = path_of(tmp, "dup_scores.csv",
                                    "window,country_id,month_id,crps,ign,mis\n"
                                    "w,1,400,1,1,1\n"
                                    "w,1,400,2,2,2\n");
    CHECK_THROWS_AS(io::read_score_table(dup), io::ParseError);
}

TEST_CASE("shortest round-trip doubles survive write and read", "[io]") {
    for (const double v : {0.1, 1.0 / 3.0, 56.84166666666667, 1e-300, 123456789.123456789}) {
        double back = 0.0;
        CHECK(io::parse_f64(io::format_double(v), back));
        CHECK(back == v);
    }
}

TEST_CASE("validation classifies each defect without throwing", "[io]") {
    TempDir tmp;
    const auto write_cells = [](std::string& s, std::int32_t unit, MonthId m, int n) {
        for (int d = 0; d < n; ++d)
            s += std::to_string(m) + "," + std::to_string(unit) + "," + std::to_string(d) + ",1\n";
    };

    SECTION("clean file is valid") {
        std::string s = "month_id,country_id,draw,prediction\n";
        write_cells(s, 1, 400, 15);
        const io::ValidationReport r =
            io::validate_submission(path_of(tmp, "ok.csv", s), Level::cm);
        CHECK(r.valid());
        CHECK(r.cells == 1);
        CHECK(r.rows == 15);
        CHECK(r.summary().find("no violations") != std::string::npos);
    }

    SECTION("draw counts") {
        std::string s = "month_id,country_id,draw,prediction\n";
        write_cells(s, 1, 400, 14);
        const io::ValidationReport low =
            io::validate_submission(path_of(tmp, "low.csv", s), Level::cm);
        CHECK(low.has(io::ViolationClass::draw_count_low));
        CHECK(low.count(io::ViolationClass::draw_count_low) == 1);

        std::string s2 = "month_id,country_id,draw,prediction\n";
        write_cells(s2, 1, 400, 1001);
        const io::ValidationReport high =
            io::validate_submission(path_of(tmp, "high.csv", s2), Level::cm);
        CHECK(high.has(io::ViolationClass::draw_count_high));
    }

    SECTION("negative prediction") {
        std::string s = "month_id,country_id,draw,prediction\n";
        write_cells(s, 1, 400, 14);
        s += "400,1,14,-5\n";
        const io::ValidationReport r =
            io::validate_submission(path_of(tmp, "neg.csv", s), Level::cm);
        CHECK(r.has(io::ViolationClass::negative_prediction));
        CHECK_FALSE(r.has(io::ViolationClass::draw_count_low));
    }

    SECTION("duplicate draw rows") {
        std::string s = "month_id,country_id,draw,prediction\n";
        write_cells(s, 1, 400, 15);
        s += "400,1,3,9\n";
        const io::ValidationReport r =
            io::validate_submission(path_of(tmp, "dup.csv", s), Level::cm);
        CHECK(r.has(io::ViolationClass::duplicate));
        CHECK_FALSE(r.has(io::ViolationClass::non_contiguous_draws));
    }

    SECTION("non-contiguous ids") {
        std::string s = "month_id,country_id,draw,prediction\n";
        for (int d = 0; d < 15; ++d)
            s += "400,1," + std::to_string(d + 1) + ",1\n";  // 1..15, not 0..14
        const io::ValidationReport r =
            io::validate_submission(path_of(tmp, "shift.csv", s), Level::cm);
        CHECK(r.has(io::ViolationClass::non_contiguous_draws));
    }

    SECTION("unknown units against a universe") {
        std::string u = "country_id,month_id\n1,400\n";
        const io::Universe universe = io::read_universe(path_of(tmp, "universe.csv", u));
        std::string s = "month_id,country_id,draw,prediction\n";
        write_cells(s, 1, 400, 15);
        write_cells(s, 77, 400, 15);
        const io::ValidationReport r =
            io::validate_submission(path_of(tmp, "stranger.csv", s), Level::cm, &universe);
        CHECK(r.has(io::ViolationClass::unknown_unit));
        CHECK(r.count(io::ViolationClass::unknown_unit) == 1);  // deduped per unit
        CHECK_FALSE(r.has(io::ViolationClass::missing_cell));
    }

    SECTION("invalid grid ids are unknown even without a universe") {
        std::string s = "priogrid_gid,month_id,draw,prediction\n";
        for (int d = 0; d < 15; ++d) s += "300000,400," + std::to_string(d) + ",1\n";
        const io::ValidationReport r =
            io::validate_submission(path_of(tmp, "badgid.csv", s), Level::pgm);
        CHECK(r.has(io::ViolationClass::unknown_unit));
    }

    SECTION("missing universe cells") {
        std::string u = "country_id,month_id\n1,400\n1,401\n";
        const io::Universe universe = io::read_universe(path_of(tmp, "universe.csv", u));
        std::string s = "month_id,country_id,draw,prediction\n";
        write_cells(s, 1, 400, 15);
        const io::ValidationReport r =
            io::validate_submission(path_of(tmp, "halved.csv", s), Level::cm, &universe);
        CHECK(r.has(io::ViolationClass::missing_cell));
        CHECK(r.count(io::ViolationClass::missing_cell) == 1);
    }

    SECTION("wrong column types") {
        std::string s = "month_id,country_id,draw,prediction\n";
        write_cells(s, 1, 400, 15);
        s += "400,1,15,2.5\n";         // float where an integer count belongs
        s += "400,1,sixteen,3\n";      // non-numeric draw id
        const io::ValidationReport r =
            io::validate_submission(path_of(tmp, "typed.csv", s), Level::cm);
        CHECK(r.count(io::ViolationClass::ill_typed) == 2);
    }

    SECTION("level mismatch is a schema violation") {
        std::string s = "priogrid_gid,month_id,draw,prediction\n";
        write_cells(s, 1, 400, 15);
        const io::ValidationReport r =
            io::validate_submission(path_of(tmp, "pgm.csv", s), Level::cm);
        CHECK(r.has(io::ViolationClass::schema));
    }

    SECTION("garbage never escapes as an exception") {
        const io::ValidationReport r = io::validate_submission(
            path_of(tmp, "garbage.csv",
                    "month_id,country_id,draw,prediction\n"
                    "x\n"
                    ",,,\n"
                    "1,2,3,4,5\n"
                    "four,five,six,seven\n"),
            Level::cm);
        CHECK_FALSE(r.valid());
        CHECK(r.has(io::ViolationClass::ill_typed));

        const io::ValidationReport hdr = io::validate_submission(
            path_of(tmp, "badhdr.csv", "not,a,real,header\n1,2,3,4\n"), Level::cm);
        CHECK(hdr.count(io::ViolationClass::schema) == 1);
        CHECK(hdr.violations.size() == 1);  // header unusable: rows are not guessed at
    }
}

TEST_CASE("markdown and csv renderers carry the aggregate rows", "[io]") {
    ScoreTable t(Level::cm, {"w1", "w2"});
    t.add_row(0, 1, 1, ScoreTriple{2.0, 1.0, 10.0});
    t.add_row(1, 1, 2, ScoreTriple{4.0, 3.0, 30.0});

    const std::string md = io::render_score_table_md("demo", t);
    CHECK(md.find("## demo") != std::string::npos);
    CHECK(md.find("| w1 | 1 | 2.00 | 1.00 | 10.00 |") != std::string::npos);
    CHECK(md.find("| overall | 2 | 3.00 | 2.00 | 20.00 |") != std::string::npos);

    std::vector<LeaderboardEntry> board = {{"demo", t.overall(), 1}};
    const std::string lb = io::render_leaderboard_md(board);
    CHECK(lb.find("| 1 | demo | 3.00 | 2.00 | 20.00 |") != std::string::npos);

    const std::string csv = io::render_aggregates_csv({{"demo", &t}});
    CHECK(csv.rfind("submission,window,cells,crps,ign,mis\n", 0) == 0);
    CHECK(csv.find("demo,w1,1,2,1,10\n") != std::string::npos);
    CHECK(csv.find("demo,overall,2,3,2,20\n") != std::string::npos);
}
