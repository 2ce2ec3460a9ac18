#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "sahm/format.hpp"
#include "sahm/state_space.hpp"

using namespace sahm;

TEST_CASE("classify under the intuitive cutoffs")
{
    auto c = cutoff_preset("intuitive");
    CHECK(c == CutoffSet{0.01, 1, 0.02, 0.10});
    CHECK(classify({0.005, 0.5, 0.01, 0.05}, c).code() == 0);
    CHECK(classify({0.02, 0.5, 0.01, 0.05}, c).code() == 1);
    CHECK(classify({0.01, 1, 0.02, 0.10}, c).code() == 0);
    CHECK(classify({0.5, 5, 0.5, 0.5}, c).code() == 15);
}

TEST_CASE("cutoff presets")
{
    CHECK(cutoff_preset("p25") == CutoffSet{0.0003, 0.004, 0.005, 0.0364});
    CHECK(cutoff_preset("p50") == CutoffSet{0.0034, 0.009, 0.0099, 0.1847});
    CHECK(default_cutoffs() == cutoff_preset("intuitive"));
    CHECK_THROWS(cutoff_preset("p99"));
    CHECK_THROWS_AS(validate(CutoffSet{0, 1, 1, 1}), PreconditionError);
    auto c = cutoff_preset("p50");
    CHECK(cutoffs_from_json(cutoffs_to_json(c)) == c);
}

TEST_CASE("labels")
{
    CHECK(label(BehavioralState{0}) == "Low");
    CHECK(label(BehavioralState{9}) == "L2+Branch");
    CHECK(label(BehavioralState{15}) == "L2+L1D+L1I+Branch");
    CHECK(label(BehavioralState{12}) == "L2+L1D");
    CHECK_THROWS(BehavioralState{16});
}

TEST_CASE("property: label is injective")
{
    std::set<std::string> seen;
    for (unsigned s = 0; s < kStateCount; ++s)
        seen.insert(label(BehavioralState{s}));
    CHECK(seen.size() == kStateCount);
}

TEST_CASE("property: raising a metric never clears a bit")
{
    Rng rng(11);
    for (int iter = 0; iter < 5000; ++iter) {
        auto c = test::random_cutoffs(rng);
        EpochRecord r{uniform01(rng) * 0.5, uniform01(rng) * 500, uniform01(rng) * 0.5,
                      uniform01(rng) * 0.5};
        auto before = classify(r, c).code();
        EpochRecord up = r;
        switch (rng() % 4) {
        case 0: up.branch_mispredict_ratio = std::min(1.0, r.branch_mispredict_ratio + uniform01(rng)); break;
        case 1: up.l1i_mpki = std::min(1000.0, r.l1i_mpki + 500 * uniform01(rng)); break;
        case 2: up.l1d_miss_ratio = std::min(1.0, r.l1d_miss_ratio + uniform01(rng)); break;
        default: up.l2_miss_ratio = std::min(1.0, r.l2_miss_ratio + uniform01(rng)); break;
        }
        auto after = classify(up, c).code();
        CHECK((before & ~after) == 0u);
    }
}

TEST_CASE("percentile cutoffs")
{
    std::vector<Trace> traces{
        Trace("a", 100, {{0.001, 1, 0.1, 0.3}, {0.003, 3, 0.3, 0.1}}),
        Trace("b", 100, {{0.002, 2, 0.2, 0.2}})};
    auto c = derive_percentile_cutoffs(traces, 0.5);
    CHECK(c == CutoffSet{0.002, 2, 0.2, 0.2});

    std::vector<Trace> constant{Trace("c", 100, std::vector<EpochRecord>(5, {0.4, 4, 0.4, 0.4}))};
    for (double p : {0.1, 0.25, 0.5, 0.9})
        CHECK(derive_percentile_cutoffs(constant, p) == CutoffSet{0.4, 4, 0.4, 0.4});

    // Rank 0.25 * 2 = 0.5 sits halfway between the two smallest values.
    auto q = derive_percentile_cutoffs(traces, 0.25);
    CHECK(q.branch_mispredict == doctest::Approx(0.0015));
    CHECK_THROWS_AS(derive_percentile_cutoffs(traces, 0.0), PreconditionError);
    CHECK_THROWS_AS(derive_percentile_cutoffs(traces, 1.0), PreconditionError);
}

TEST_CASE("property: percentile cutoffs ignore how epochs are arranged")
{
    Rng rng(3);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<EpochRecord> pool(2 + rng() % 40);
        for (auto& e : pool)
            e = {uniform01(rng) * 0.3 + 0.01, uniform01(rng) * 30 + 0.1,
                 uniform01(rng) * 0.3 + 0.01, uniform01(rng) * 0.3 + 0.01};
        double p = 0.05 + 0.9 * uniform01(rng);
        std::vector<Trace> one{Trace("x", 100, pool)};
        auto expected = derive_percentile_cutoffs(one, p);

        std::shuffle(pool.begin(), pool.end(), rng);
        auto cut = 1 + rng() % (pool.size() - 1);
        std::vector<Trace> two{
            Trace("y", 100, {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(cut)}),
            Trace("z", 100, {pool.begin() + static_cast<std::ptrdiff_t>(cut), pool.end()})};
        CHECK(derive_percentile_cutoffs(two, p) == expected);
    }
}
