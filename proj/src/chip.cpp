#include "sahm/chip.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sahm/format.hpp"

namespace sahm {

std::optional<Component> component_of(Specialization s)
{
    switch (s) {
    case Specialization::branch: return Component::branch;
    case Specialization::l1i: return Component::l1i;
    case Specialization::l1d: return Component::l1d;
    case Specialization::l2: return Component::l2;
    case Specialization::baseline: break;
    }
    return std::nullopt;
}

std::string_view to_string(Specialization s)
{
    switch (s) {
    case Specialization::baseline: return "baseline";
    case Specialization::branch: return "branch";
    case Specialization::l1i: return "l1i";
    case Specialization::l1d: return "l1d";
    case Specialization::l2: return "l2";
    }
    return "?";
}

Specialization parse_specialization(std::string_view text)
{
    for (auto s : {Specialization::baseline, Specialization::branch, Specialization::l1i,
                   Specialization::l1d, Specialization::l2})
        if (text == to_string(s))
            return s;
    throw DataError("unknown specialization '" + std::string(text) + "'");
}

double ChipConfig::max_speedup() const
{
    double m = 0.0;
    for (const auto& c : cores)
        m = std::max(m, c.speedup);
    return m;
}

void validate(const ChipConfig& chip)
{
    if (chip.cores.empty())
        throw PreconditionError("chip '" + chip.name + "' has no cores");
    for (std::size_t i = 0; i < chip.cores.size(); ++i) {
        const auto& c = chip.cores[i];
        if (c.id != i)
            throw PreconditionError("chip '" + chip.name + "': core ids must be dense from 0");
        if (!(c.speedup >= 0.0) || !std::isfinite(c.speedup))
            throw PreconditionError("chip '" + chip.name + "': speedup must be >= 0");
        if (c.specialization == Specialization::baseline && c.speedup != 0.0)
            throw PreconditionError("chip '" + chip.name + "': baseline cores have no speedup");
    }
}

namespace {

std::string percent(double speedup)
{
    double pct = std::round(speedup * 100.0 * 1e9) / 1e9;
    return format_double(pct);
}

std::string core_token(const CoreSpec& c)
{
    switch (c.specialization) {
    case Specialization::baseline: return "B";
    case Specialization::branch: return "Br" + percent(c.speedup);
    case Specialization::l1i: return "L1I" + percent(c.speedup);
    case Specialization::l1d: return "L1D" + percent(c.speedup);
    case Specialization::l2: return "L2_" + percent(c.speedup);
    }
    return "?";
}

} // namespace

std::string chip_name(std::span<const CoreSpec> cores)
{
    std::string out;
    for (std::size_t i = 0; i < cores.size();) {
        auto token = core_token(cores[i]);
        std::size_t run = 1;
        while (i + run < cores.size() && core_token(cores[i + run]) == token)
            ++run;
        if (!out.empty())
            out += '+';
        if (run > 1)
            out += std::to_string(run) + "x";
        out += token;
        i += run;
    }
    return out;
}

namespace {

ChipConfig make_chip(std::vector<CoreSpec> cores)
{
    for (std::size_t i = 0; i < cores.size(); ++i)
        cores[i].id = i;
    ChipConfig chip{chip_name(cores), std::move(cores)};
    validate(chip);
    return chip;
}

} // namespace

std::vector<ChipConfig> enumerate_design_space(std::span<const double> levels)
{
    if (levels.empty())
        throw PreconditionError("enumerate_design_space: no speedup levels");
    for (double l : levels)
        if (!(l >= 0.0))
            throw PreconditionError("enumerate_design_space: negative speedup level");

    std::vector<ChipConfig> out;
    out.push_back(make_chip({CoreSpec{0, Specialization::baseline, 0.0}}));
    for (std::size_t k = 1; k <= kSpecializations.size(); ++k) {
        for (unsigned mask = 1; mask < (1u << kSpecializations.size()); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != k)
                continue;
            std::vector<Specialization> chosen;
            for (std::size_t b = 0; b < kSpecializations.size(); ++b)
                if (mask & (1u << b))
                    chosen.push_back(kSpecializations[b]);
            // Odometer over level assignments, first core most significant.
            std::vector<std::size_t> digit(k, 0);
            while (true) {
                std::vector<CoreSpec> cores{CoreSpec{0, Specialization::baseline, 0.0}};
                for (std::size_t c = 0; c < k; ++c)
                    cores.push_back(CoreSpec{0, chosen[c], levels[digit[c]]});
                out.push_back(make_chip(std::move(cores)));
                std::size_t pos = k;
                while (pos > 0 && ++digit[pos - 1] == levels.size())
                    digit[--pos] = 0;
                if (pos == 0)
                    break;
            }
        }
    }
    return out;
}

ChipConfig canonical_config(const std::array<double, 4>& speedups)
{
    std::vector<CoreSpec> cores{CoreSpec{0, Specialization::baseline, 0.0}};
    for (std::size_t i = 0; i < kSpecializations.size(); ++i)
        cores.push_back(CoreSpec{0, kSpecializations[i], speedups[i]});
    return make_chip(std::move(cores));
}

ChipConfig realistic_config(std::size_t per_spec_count, std::size_t baseline_count,
                            double speedup)
{
    if (per_spec_count + baseline_count == 0)
        throw PreconditionError("realistic_config: empty chip");
    std::vector<CoreSpec> cores;
    for (std::size_t i = 0; i < baseline_count; ++i)
        cores.push_back(CoreSpec{0, Specialization::baseline, 0.0});
    for (auto s : kSpecializations)
        for (std::size_t i = 0; i < per_spec_count; ++i)
            cores.push_back(CoreSpec{0, s, speedup});
    return make_chip(std::move(cores));
}

ChipConfig chip_from_json(std::string_view text, std::string name)
{
    std::vector<CoreSpec> cores;
    try {
        auto j = nlohmann::json::parse(text);
        if (!j.is_array())
            throw DataError("chip JSON must be a list of core groups");
        for (const auto& group : j) {
            auto spec = parse_specialization(group.at("specialization").get<std::string>());
            double speedup = group.value("speedup", 0.0);
            auto count = group.value("count", std::int64_t{1});
            if (count < 0)
                throw DataError("negative core count");
            for (std::int64_t i = 0; i < count; ++i)
                cores.push_back(CoreSpec{0, spec, speedup});
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("chip JSON: ") + e.what());
    }
    try {
        auto chip = make_chip(std::move(cores));
        if (!name.empty())
            chip.name = std::move(name);
        return chip;
    } catch (const PreconditionError& e) {
        throw DataError(std::string("chip JSON: ") + e.what());
    }
}

std::string chip_to_json(const ChipConfig& chip)
{
    nlohmann::ordered_json groups = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < chip.cores.size();) {
        std::size_t run = 1;
        while (i + run < chip.cores.size() &&
               chip.cores[i + run].specialization == chip.cores[i].specialization &&
               chip.cores[i + run].speedup == chip.cores[i].speedup)
            ++run;
        nlohmann::ordered_json g;
        g["specialization"] = to_string(chip.cores[i].specialization);
        g["speedup"] = chip.cores[i].speedup;
        g["count"] = run;
        groups.push_back(g);
        i += run;
    }
    return groups.dump(2);
}

ChipConfig resolve_chip(std::string_view name_or_path)
{
    if (name_or_path == "canonical30")
        return canonical_config({0.3, 0.3, 0.3, 0.3});
    if (name_or_path == "realistic39")
        return realistic_config(8, 7, 0.3);
    std::ifstream in{std::string(name_or_path)};
    if (!in)
        throw DataError("chip: '" + std::string(name_or_path) +
                        "' is neither a preset nor a readable file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return chip_from_json(ss.str());
    } catch (const DataError& e) {
        throw DataError(std::string(name_or_path) + ": " + e.what());
    }
}

} // namespace sahm
