#ifndef SAHM_CHIP_HPP
#define SAHM_CHIP_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sahm/state_space.hpp"

namespace sahm {

enum class Specialization { baseline, branch, l1i, l1d, l2 };

inline constexpr std::array<Specialization, 4> kSpecializations = {
    Specialization::branch, Specialization::l1i, Specialization::l1d, Specialization::l2};

// nullopt for baseline.
std::optional<Component> component_of(Specialization s);
std::string_view to_string(Specialization s);
Specialization parse_specialization(std::string_view text);

struct CoreSpec {
    std::size_t id = 0;
    Specialization specialization = Specialization::baseline;
    double speedup = 0.0; // 0.30 means work advances 1.3x faster when matched

    bool operator==(const CoreSpec&) const = default;
};

struct ChipConfig {
    std::string name;
    std::vector<CoreSpec> cores;

    double max_speedup() const;
    bool operator==(const ChipConfig&) const = default;
};

// Baseline cores carry speedup 0; specialized cores any speedup >= 0; ids
// are dense from 0.
void validate(const ChipConfig& chip);

// Reproducible name such as "B+Br30+L2_30" or "7xB+8xBr30+...".
std::string chip_name(std::span<const CoreSpec> cores);

// Baseline-only chip first, then every nonempty subset of the four
// specializations (by size, then component order) with every assignment of
// levels to its cores.
std::vector<ChipConfig> enumerate_design_space(std::span<const double> speedup_levels);

// speedups ordered branch, L1I, L1D, L2.
ChipConfig canonical_config(const std::array<double, 4>& speedups);

ChipConfig realistic_config(std::size_t per_spec_count, std::size_t baseline_count,
                            double speedup);

// JSON list of {"specialization", "speedup", "count"} groups.
ChipConfig chip_from_json(std::string_view json_text, std::string name = {});
std::string chip_to_json(const ChipConfig& chip);

// Presets "canonical30", "realistic39", or a path to a JSON chip file.
ChipConfig resolve_chip(std::string_view name_or_path);

} // namespace sahm

#endif
