#include <doctest.h>

#include <set>

#include "sahm/chip.hpp"
#include "sahm/format.hpp"

using namespace sahm;

namespace {

std::size_t expected_count(std::size_t levels)
{
    std::size_t total = 1, binom[] = {1, 4, 6, 4, 1};
    for (std::size_t k = 1; k <= 4; ++k) {
        std::size_t p = 1;
        for (std::size_t i = 0; i < k; ++i)
            p *= levels;
        total += binom[k] * p;
    }
    return total;
}

} // namespace

TEST_CASE("design space sizes")
{
    std::vector<double> three{0.1, 0.2, 0.3}, one{0.3}, none;
    CHECK(enumerate_design_space(three).size() == 256);
    CHECK(enumerate_design_space(one).size() == 16);
    CHECK_THROWS_AS(enumerate_design_space(none), PreconditionError);
    auto space = enumerate_design_space(three);
    CHECK(space.front().name == "B");
    CHECK(space.front().cores.size() == 1);
}

TEST_CASE("property: design space has the closed-form size and no duplicates")
{
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<double> levels;
        for (std::size_t i = 0; i < n; ++i)
            levels.push_back(0.05 * static_cast<double>(i + 1));
        auto space = enumerate_design_space(levels);
        CHECK(space.size() == expected_count(n));
        std::set<std::string> names;
        for (const auto& c : space) {
            validate(c);
            names.insert(c.name);
        }
        CHECK(names.size() == space.size());
    }
}

TEST_CASE("canonical and realistic chips")
{
    auto c = canonical_config({0.3, 0.3, 0.3, 0.3});
    REQUIRE(c.cores.size() == 5);
    CHECK(c.cores[0].specialization == Specialization::baseline);
    CHECK(c.name == "B+Br30+L1I30+L1D30+L2_30");
    CHECK(c.max_speedup() == 0.3);

    auto variant = canonical_config({0.1, 0.3, 0.3, 0.3});
    CHECK(variant.cores[1].speedup == 0.1);

    auto r = realistic_config(8, 7, 0.3);
    CHECK(r.cores.size() == 39);
    CHECK(r.name == "7xB+8xBr30+8xL1I30+8xL1D30+8xL2_30");
    CHECK(r.cores[7].specialization == Specialization::branch);
    CHECK(r.cores[38].specialization == Specialization::l2);

    auto single = realistic_config(0, 1, 0.3);
    CHECK(single.cores.size() == 1);
    CHECK(single.max_speedup() == 0.0);

    auto canon = realistic_config(1, 1, 0.3);
    CHECK(canon.cores == canonical_config({0.3, 0.3, 0.3, 0.3}).cores);
}

TEST_CASE("validation")
{
    ChipConfig bad{"x", {{0, Specialization::baseline, 0.2}}};
    CHECK_THROWS_AS(validate(bad), PreconditionError);
    ChipConfig gap{"x", {{1, Specialization::l2, 0.2}}};
    CHECK_THROWS_AS(validate(gap), PreconditionError);
    ChipConfig empty{"x", {}};
    CHECK_THROWS_AS(validate(empty), PreconditionError);
    CHECK_NOTHROW(validate(canonical_config({0, 0, 0, 0})));
}

TEST_CASE("JSON round trip and presets")
{
    auto r = resolve_chip("realistic39");
    CHECK(chip_from_json(chip_to_json(r), r.name) == r);
    auto c = chip_from_json(R"([{"specialization":"baseline","speedup":0,"count":2},
                                {"specialization":"l2","speedup":0.5,"count":1}])");
    REQUIRE(c.cores.size() == 3);
    CHECK(c.cores[2].specialization == Specialization::l2);
    CHECK(c.cores[2].id == 2);
    CHECK(resolve_chip("canonical30") == canonical_config({0.3, 0.3, 0.3, 0.3}));
    CHECK_THROWS(chip_from_json(R"([{"specialization":"gpu","speedup":0,"count":1}])"));
    CHECK(parse_specialization("l1d") == Specialization::l1d);
}
