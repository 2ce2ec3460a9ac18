#include <doctest.h>

#include "sahm/format.hpp"

using namespace sahm;

TEST_CASE("format_double round-trips")
{
    for (double v : {0.0, 0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5}) {
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("number parsing trims and rejects junk")
{
    CHECK(parse_double(" 0.5 ") == 0.5);
    CHECK(parse_int("42") == 42);
    CHECK_THROWS_AS(parse_double("abc"), DataError);
    CHECK_THROWS_AS(parse_double("1.5x"), DataError);
    CHECK_THROWS_AS(parse_int("4.2"), DataError);
}

TEST_CASE("lists")
{
    auto parts = split("a,b,,c", ',');
    REQUIRE(parts.size() == 4);
    CHECK(parts[2].empty());
    auto v = parse_double_list("0.1,0.2,0.3");
    CHECK(v == std::vector<double>{0.1, 0.2, 0.3});
}
