#include <doctest.h>

#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "sahm/characterization.hpp"
#include "sahm/format.hpp"
#include "sahm/synthetic.hpp"

using namespace sahm;

TEST_CASE("degenerate chain stays in state 0")
{
    SyntheticSpec spec;
    spec.target_distribution[0] = 1.0;
    spec.self_transition_prob = 1.0;
    spec.epoch_count = 10;
    auto t = generate_trace(spec, default_cutoffs());
    REQUIRE(t.size() == 10);
    for (auto s : classify_trace(t, default_cutoffs()))
        CHECK(s.code() == 0);
}

TEST_CASE("a chain with nowhere to go is rejected")
{
    SyntheticSpec spec;
    spec.target_distribution[3] = 1.0;
    spec.self_transition_prob = 0.5;
    CHECK_THROWS_AS(validate(spec), PreconditionError);
    spec.target_distribution[3] = 0.5;
    CHECK_THROWS_AS(validate(spec), PreconditionError); // weights sum to 0.5
    spec.target_distribution = {};
    spec.target_distribution[0] = 1.0;
    spec.self_transition_prob = 1.5;
    CHECK_THROWS_AS(validate(spec), PreconditionError);
    spec.self_transition_prob = 1.0;
    spec.epoch_count = 0;
    CHECK_THROWS_AS(validate(spec), PreconditionError);
}

TEST_CASE("two equally weighted states share time evenly")
{
    SyntheticSpec spec;
    spec.target_distribution[0] = 0.5;
    spec.target_distribution[8] = 0.5;
    spec.self_transition_prob = 0.0;
    spec.epoch_count = 100000;
    spec.seed = 99;
    auto f = empirical_state_fraction(generate_trace(spec, default_cutoffs()), default_cutoffs());
    double sigma = std::sqrt(0.25 / static_cast<double>(spec.epoch_count));
    CHECK(std::abs(f[0] - 0.5) <= 3 * sigma);
    CHECK(std::abs(f[8] - 0.5) <= 3 * sigma);
}

TEST_CASE("occupancy follows the target distribution when the chain is memoryless")
{
    // With rho = 0 the stationary law is not pi itself, so compare against
    // the stationary distribution of the renormalized chain, found by power
    // iteration.
    StateVector pi{};
    pi[0] = 0.1;
    pi[1] = 0.2;
    pi[8] = 0.3;
    pi[12] = 0.4;
    std::array<std::array<double, 16>, 16> P{};
    for (std::size_t i = 0; i < 16; ++i) {
        double rest = 1.0 - pi[i];
        for (std::size_t j = 0; j < 16; ++j)
            if (j != i)
                P[i][j] = rest > 0 ? pi[j] / rest : 0.0;
    }
    StateVector x = pi;
    for (int it = 0; it < 2000; ++it) {
        StateVector y{};
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t j = 0; j < 16; ++j)
                y[j] += x[i] * P[i][j];
        x = y;
    }
    SyntheticSpec spec{pi, 0.0, 200000, 5};
    auto f = empirical_state_fraction(generate_trace(spec, default_cutoffs()), default_cutoffs());
    for (std::size_t s = 0; s < 16; ++s) {
        double sigma = std::sqrt(x[s] * (1 - x[s]) / 200000.0);
        CHECK(std::abs(f[s] - x[s]) <= 5 * sigma + 1e-12);
    }
}

TEST_CASE("property: same spec and seed give the same trace")
{
    Rng rng(21);
    for (int iter = 0; iter < 30; ++iter) {
        SyntheticSpec spec{test::random_distribution(rng), uniform01(rng), 1 + rng() % 300, rng()};
        auto c = test::random_cutoffs(rng);
        CHECK(generate_trace(spec, c) == generate_trace(spec, c));
        auto other = spec;
        other.seed ^= 1;
        if (spec.epoch_count > 50 && spec.self_transition_prob < 0.9)
            CHECK_FALSE(generate_states(spec) == generate_states(other));
    }
}

TEST_CASE("property: rho = 1 yields a single interval")
{
    Rng rng(8);
    for (int iter = 0; iter < 50; ++iter) {
        SyntheticSpec spec{test::random_distribution(rng), 1.0, 1 + rng() % 500, rng()};
        CHECK(interval_lengths(generate_states(spec)).size() == 1);
    }
}

TEST_CASE("property: state fractions form a distribution")
{
    Rng rng(9);
    for (int iter = 0; iter < 100; ++iter) {
        SyntheticSpec spec{test::random_distribution(rng), uniform01(rng), 1 + rng() % 400, rng()};
        auto c = test::random_cutoffs(rng);
        auto f = empirical_state_fraction(generate_trace(spec, c), c);
        double sum = std::accumulate(f.begin(), f.end(), 0.0);
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        for (double x : f)
            CHECK((x >= 0.0 && x <= 1.0));
    }
}

TEST_CASE("property: classify recovers the drawn states")
{
    Rng rng(12);
    for (int iter = 0; iter < 50; ++iter) {
        SyntheticSpec spec{test::random_distribution(rng), uniform01(rng), 1 + rng() % 500, rng()};
        auto c = test::random_cutoffs(rng);
        auto states = generate_states(spec);
        CHECK(classify_trace(materialize(states, c, "x"), c) == states);
    }
}

TEST_CASE("state fractions by hand")
{
    auto states = test::states_of({0, 0, 8, 8});
    auto f = empirical_state_fraction(materialize(states, default_cutoffs()), default_cutoffs());
    CHECK(f[0] == 0.5);
    CHECK(f[8] == 0.5);
    CHECK(std::accumulate(f.begin(), f.end(), 0.0) == 1.0);
}

TEST_CASE("cutoffs too large to double are rejected")
{
    auto c = default_cutoffs();
    c.l2_miss = 0.6;
    CHECK_THROWS_AS(materialize(test::states_of({8}), c), PreconditionError);
    CHECK_NOTHROW(materialize(test::states_of({0}), c));
}

TEST_CASE("suite generator")
{
    SuiteSpec suite;
    suite.count = 5;
    suite.min_epochs = 10;
    suite.max_epochs = 20;
    auto a = generate_suite(suite, default_cutoffs());
    REQUIRE(a.size() == 5);
    CHECK(a[0].name() == "synth000");
    for (const auto& t : a)
        CHECK((t.size() >= 10 && t.size() <= 20));
    CHECK(a == generate_suite(suite, default_cutoffs()));
}
