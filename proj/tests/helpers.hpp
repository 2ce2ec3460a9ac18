#ifndef SAHM_TEST_HELPERS_HPP
#define SAHM_TEST_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "sahm/rng.hpp"
#include "sahm/state_space.hpp"
#include "sahm/synthetic.hpp"

namespace sahm::test {

// Random distribution over the 16 states with at least two positive weights.
inline StateVector random_distribution(Rng& rng)
{
    StateVector w{};
    double sum = 0.0;
    int positive = 0;
    while (positive < 2) {
        sum = 0.0;
        positive = 0;
        for (auto& x : w) {
            x = uniform01(rng) < 0.3 ? 0.0 : uniform01(rng);
            sum += x;
            positive += x > 0.0;
        }
    }
    for (auto& x : w)
        x /= sum;
    // Exact normalization for validate().
    double total = 0.0;
    for (std::size_t i = 1; i < w.size(); ++i)
        total += w[i];
    w[0] = 1.0 - total;
    if (w[0] < 0.0)
        w[0] = 0.0;
    return w;
}

inline CutoffSet random_cutoffs(Rng& rng)
{
    return CutoffSet{0.001 + 0.4 * uniform01(rng), 0.1 + 400.0 * uniform01(rng),
                     0.001 + 0.4 * uniform01(rng), 0.001 + 0.4 * uniform01(rng)};
}

inline std::vector<BehavioralState> states_of(std::initializer_list<unsigned> codes)
{
    std::vector<BehavioralState> out;
    for (auto c : codes)
        out.emplace_back(c);
    return out;
}

} // namespace sahm::test

#endif
