#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "sahm/characterization.hpp"
#include "sahm/format.hpp"

using namespace sahm;
using test::states_of;

namespace {

double cell_sum(const ShareMatrix& m)
{
    double sum = 0.0;
    for (const auto& row : m)
        for (const auto& cell : row)
            if (cell)
                sum += *cell;
    return sum;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("transition counts by hand")
{
    auto m = transitions(states_of({0, 0, 8, 8}));
    CHECK(m.counts[0][0] == 1);
    CHECK(m.counts[0][8] == 1);
    CHECK(m.counts[8][8] == 1);
    CHECK(m.total() == 3);
    CHECK(m.diagonal() == 2);

    auto constant = transitions(states_of({5, 5, 5, 5, 5}));
    CHECK(constant.counts[5][5] == 4);
    CHECK(constant.total() == 4);
}

TEST_CASE("transition shares")
{
    auto m = transitions(states_of({0, 0, 8, 8}));
    auto off = transition_shares(m, true);
    CHECK(off[0][8] == 1.0);
    CHECK_FALSE(off[0][0].has_value());
    CHECK_FALSE(off[8][8].has_value());
    CHECK_FALSE(off[3][4].has_value());

    auto all = transition_shares(m, false);
    CHECK(*all[0][0] == doctest::Approx(1.0 / 3));
    CHECK(*all[0][8] == doctest::Approx(1.0 / 3));
    CHECK(*all[8][8] == doctest::Approx(1.0 / 3));

    CHECK_THROWS_AS(transition_shares(transitions(states_of({2, 2, 2})), true), PreconditionError);
}

TEST_CASE("short traces are skipped with a note")
{
    std::vector<Trace> traces{Trace("one", 100, {EpochRecord{}}),
                              Trace("two", 100, {EpochRecord{}, EpochRecord{}})};
    std::vector<std::string> skipped;
    auto m = transitions(traces, default_cutoffs(), &skipped);
    CHECK(m.total() == 1);
    CHECK(skipped == std::vector<std::string>{"one"});
}

TEST_CASE("averaging keeps absent cells absent")
{
    ShareMatrix a{}, b{};
    a[0][1] = 1.0;
    b[0][1] = 0.5;
    b[2][3] = 0.5;
    std::vector<ShareMatrix> both{a, b};
    auto avg = average_shares(both);
    CHECK(*avg[0][1] == 0.75);
    CHECK(*avg[2][3] == 0.25);
    CHECK_FALSE(avg[4][4].has_value());
}

TEST_CASE("interval lengths")
{
    CHECK(interval_lengths(states_of({3, 3, 7})) == std::vector<std::size_t>{2, 1});
    CHECK(interval_lengths(states_of({4, 4, 4, 4})) == std::vector<std::size_t>{4});
    CHECK(interval_lengths(states_of({1, 2, 1, 2})) == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(interval_lengths({}).empty());
}

TEST_CASE("interval shares by hand")
{
    std::vector<Trace> traces{materialize(states_of({3, 3, 7}), default_cutoffs())};
    auto s = intervals(traces, default_cutoffs(), IntervalBuckets{{1, 2}});
    CHECK(s.count_share == std::vector<double>{0.5, 0.5});
    CHECK(s.time_share[0] == doctest::Approx(1.0 / 3));
    CHECK(s.time_share[1] == doctest::Approx(2.0 / 3));
    CHECK(*s.mean_length(BehavioralState{3}) == 2.0);
    CHECK_FALSE(s.mean_length(BehavioralState{9}).has_value());
}

TEST_CASE("buckets")
{
    IntervalBuckets b;
    CHECK(b.bucket_of(1) == 0);
    CHECK(b.bucket_of(4) == 1);
    CHECK(b.bucket_of(5) == 2);
    CHECK(b.bucket_of(49) == 3);
    CHECK(b.bucket_of(1000) == 4);
    CHECK(b.bucket_label(1) == "2-4");
    CHECK(b.bucket_label(4) == ">=50");
    std::vector<Trace> traces{materialize(states_of({0}), default_cutoffs())};
    CHECK_THROWS_AS(intervals(traces, default_cutoffs(), IntervalBuckets{{2, 5}}), PreconditionError);
    CHECK_THROWS_AS(intervals(traces, default_cutoffs(), IntervalBuckets{{1, 5, 5}}), PreconditionError);
}

TEST_CASE("property: shares sum to one")
{
    Rng rng(31);
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<Trace> traces;
        auto n = 1 + rng() % 4;
        for (std::size_t k = 0; k < n; ++k) {
            SyntheticSpec spec{test::random_distribution(rng), uniform01(rng), 2 + rng() % 300, rng()};
            traces.push_back(generate_trace(spec, default_cutoffs(), "t" + std::to_string(k)));
        }
        auto m = transitions(traces, default_cutoffs());
        CHECK(std::abs(cell_sum(transition_shares(m, false)) - 1.0) <= 1e-12);
        if (m.total() > m.diagonal())
            CHECK(std::abs(cell_sum(transition_shares(m, true)) - 1.0) <= 1e-12);

        auto s = intervals(traces, default_cutoffs(), default_interval_buckets());
        double cs = 0, ts = 0;
        for (double x : s.count_share)
            cs += x;
        for (double x : s.time_share)
            ts += x;
        CHECK(std::abs(cs - 1.0) <= 1e-12);
        CHECK(std::abs(ts - 1.0) <= 1e-12);
    }
}

TEST_CASE("property: merging counts is order independent")
{
    Rng rng(4);
    std::vector<TransitionMatrix> parts;
    for (int k = 0; k < 6; ++k) {
        SyntheticSpec spec{test::random_distribution(rng), 0.5, 50, rng()};
        parts.push_back(transitions(generate_states(spec)));
    }
    TransitionMatrix forward, backward;
    for (const auto& p : parts)
        forward += p;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it)
        backward += *it;
    CHECK(forward == backward);
}

TEST_CASE("golden fixture")
{
    std::string dir = SAHM_TEST_DATA_DIR;
    std::vector<Trace> traces{read_trace(std::filesystem::path(dir + "/fixture12.csv"))};
    auto c = default_cutoffs();

    auto cov = coverage(traces, c);
    CHECK(cov.rows[0][0] == 0.25);
    CHECK(cov.rows[0][8] == 0.25);
    CHECK(cov.rows[0][1] == doctest::Approx(2.0 / 12));
    CHECK(cov.rows[0][9] == doctest::Approx(4.0 / 12));

    auto shares = transition_shares(transitions(traces, c), true);
    for (auto [i, j] : {std::pair{0, 8}, {8, 1}, {1, 9}, {9, 0}})
        CHECK(*shares[i][j] == 0.25);
    CHECK(cell_sum(shares) == 1.0);

    auto s = intervals(traces, c, default_interval_buckets());
    CHECK(s.all == std::vector<std::size_t>{2, 3, 2, 4, 1});
    CHECK(*s.mean_length(BehavioralState{0}) == 1.5);
    CHECK(*s.mean_length(BehavioralState{8}) == 3.0);
    CHECK(*s.mean_length(BehavioralState{1}) == 2.0);
    CHECK(*s.mean_length(BehavioralState{9}) == 4.0);

    std::ostringstream out;
    write_coverage_csv(out, cov);
    CHECK(out.str() == slurp(dir + "/golden/coverage.csv"));
    out.str("");
    write_transitions_csv(out, traces, c, true);
    CHECK(out.str() == slurp(dir + "/golden/transitions.csv"));
    out.str("");
    write_intervals_csv(out, traces, c, default_interval_buckets());
    CHECK(out.str() == slurp(dir + "/golden/intervals.csv"));
    out.str("");
    write_interval_means_csv(out, traces, c);
    CHECK(out.str() == slurp(dir + "/golden/interval_means.csv"));
}
