#include <catch2/catch_amalgamated.hpp>

#include "warcast/calendar.hpp"

using namespace warcast;

TEST_CASE("month ids are bijective with (year, month)", "[calendar]") {
    CHECK(month_id_from_date(1980, 1) == 1);
    CHECK(month_id_from_date(1980, 12) == 12);
    CHECK(month_id_from_date(1981, 1) == 13);
    CHECK(month_id_from_date(2017, 10) == (2017 - 1980) * 12 + 10);

    for (int year = 1980; year <= 2100; ++year) {
        for (int month = 1; month <= 12; ++month) {
            const auto [y, m] = date_from_month_id(month_id_from_date(year, month));
            REQUIRE(y == year);
            REQUIRE(m == month);
        }
    }
}

TEST_CASE("month id construction rejects out-of-domain dates", "[calendar]") {
    CHECK_THROWS_AS(month_id_from_date(1979, 12), std::domain_error);
    CHECK_THROWS_AS(month_id_from_date(1980, 0), std::domain_error);
    CHECK_THROWS_AS(month_id_from_date(1980, 13), std::domain_error);
    CHECK_THROWS_AS(date_from_month_id(0), std::domain_error);
    CHECK_THROWS_AS(date_from_month_id(-5), std::domain_error);
}

TEST_CASE("year-month text round trips", "[calendar]") {
    CHECK(format_year_month(month_id_from_date(2018, 1)) == "2018-01");
    CHECK(format_year_month(month_id_from_date(2024, 12)) == "2024-12");
    CHECK(parse_year_month("2018-01") == month_id_from_date(2018, 1));
    CHECK(parse_year_month("1980-01") == 1);

    SECTION("bare month ids are accepted too") {
        CHECK(parse_year_month("454") == 454);
        CHECK(parse_year_month("2018") == 2018);
    }
    SECTION("junk is rejected") {
        CHECK_THROWS_AS(parse_year_month("2018-13"), std::domain_error);
        CHECK_THROWS_AS(parse_year_month("abc"), std::invalid_argument);
        CHECK_THROWS_AS(parse_year_month(""), std::invalid_argument);
    }
}
