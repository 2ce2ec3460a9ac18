#include "sahm/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "sahm/format.hpp"

namespace sahm {

void validate(const CutoffSet& c)
{
    for (double v : {c.branch_mispredict, c.l1i_mpki, c.l1d_miss, c.l2_miss})
        if (!(v > 0.0) || !std::isfinite(v))
            throw PreconditionError("cutoffs must be strictly positive and finite");
}

BehavioralState::BehavioralState(unsigned code) : code_(static_cast<std::uint8_t>(code))
{
    if (code >= kStateCount)
        throw PreconditionError("behavioral state code out of range: " + std::to_string(code));
}

BehavioralState classify(const EpochRecord& r, const CutoffSet& c)
{
    unsigned code = 0;
    if (r.branch_mispredict_ratio > c.branch_mispredict)
        code |= 1u << static_cast<unsigned>(Component::branch);
    if (r.l1i_mpki > c.l1i_mpki)
        code |= 1u << static_cast<unsigned>(Component::l1i);
    if (r.l1d_miss_ratio > c.l1d_miss)
        code |= 1u << static_cast<unsigned>(Component::l1d);
    if (r.l2_miss_ratio > c.l2_miss)
        code |= 1u << static_cast<unsigned>(Component::l2);
    return BehavioralState(code);
}

std::string label(BehavioralState state)
{
    if (state.is_low())
        return "Low";
    static constexpr std::pair<Component, const char*> order[] = {
        {Component::l2, "L2"},
        {Component::l1d, "L1D"},
        {Component::l1i, "L1I"},
        {Component::branch, "Branch"},
    };
    std::string out;
    for (auto [component, name] : order) {
        if (!state.high(component))
            continue;
        if (!out.empty())
            out += '+';
        out += name;
    }
    return out;
}

namespace {

double interpolated_percentile(std::vector<double>& pool, double p)
{
    std::sort(pool.begin(), pool.end());
    double rank = p * static_cast<double>(pool.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(rank));
    auto hi = std::min(lo + 1, pool.size() - 1);
    double frac = rank - static_cast<double>(lo);
    return pool[lo] + frac * (pool[hi] - pool[lo]);
}

} // namespace

CutoffSet derive_percentile_cutoffs(std::span<const Trace> traces, double percentile)
{
    if (!(percentile > 0.0 && percentile < 1.0))
        throw PreconditionError("percentile must lie in (0,1)");
    std::vector<double> branch, l1i, l1d, l2;
    for (const auto& t : traces) {
        for (const auto& r : t.epochs()) {
            branch.push_back(r.branch_mispredict_ratio);
            l1i.push_back(r.l1i_mpki);
            l1d.push_back(r.l1d_miss_ratio);
            l2.push_back(r.l2_miss_ratio);
        }
    }
    if (branch.empty())
        throw PreconditionError("derive_percentile_cutoffs: empty epoch pool");
    return CutoffSet{interpolated_percentile(branch, percentile),
                     interpolated_percentile(l1i, percentile),
                     interpolated_percentile(l1d, percentile),
                     interpolated_percentile(l2, percentile)};
}

CutoffSet cutoff_preset(std::string_view name)
{
    if (name == "intuitive")
        return CutoffSet{0.01, 1.0, 0.02, 0.10};
    if (name == "p25")
        return CutoffSet{0.0003, 0.004, 0.005, 0.0364};
    if (name == "p50")
        return CutoffSet{0.0034, 0.009, 0.0099, 0.1847};
    throw PreconditionError("unknown cutoff preset '" + std::string(name) + "'");
}

CutoffSet default_cutoffs() { return cutoff_preset("intuitive"); }

std::string cutoffs_to_json(const CutoffSet& c)
{
    nlohmann::ordered_json j;
    j["branch_mispredict"] = c.branch_mispredict;
    j["l1i_mpki"] = c.l1i_mpki;
    j["l1d_miss"] = c.l1d_miss;
    j["l2_miss"] = c.l2_miss;
    return j.dump(2);
}

CutoffSet cutoffs_from_json(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        CutoffSet c{j.at("branch_mispredict").get<double>(), j.at("l1i_mpki").get<double>(),
                    j.at("l1d_miss").get<double>(), j.at("l2_miss").get<double>()};
        validate(c);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("cutoff JSON: ") + e.what());
    } catch (const PreconditionError& e) {
        throw DataError(std::string("cutoff JSON: ") + e.what());
    }
}

CutoffSet resolve_cutoffs(std::string_view name_or_path)
{
    if (name_or_path == "intuitive" || name_or_path == "p25" || name_or_path == "p50")
        return cutoff_preset(name_or_path);
    std::ifstream in{std::string(name_or_path)};
    if (!in)
        throw DataError("cutoffs: '" + std::string(name_or_path) +
                        "' is neither a preset nor a readable file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return cutoffs_from_json(ss.str());
    } catch (const DataError& e) {
        throw DataError(std::string(name_or_path) + ": " + e.what());
    }
}

} // namespace sahm
