#ifndef SAHM_STATE_SPACE_HPP
#define SAHM_STATE_SPACE_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "sahm/trace.hpp"

namespace sahm {

/// The four stressed components, in state-bit order.
enum class Component : std::uint8_t { branch = 0, l1i = 1, l1d = 2, l2 = 3 };

inline constexpr std::size_t kComponentCount = 4;
inline constexpr std::size_t kStateCount = 16;

/// Per-metric HIGH/LOW thresholds. A metric strictly above its cutoff is
/// HIGH; equality counts as LOW.
struct CutoffSet {
    double branch_mispredict = 0.0;
    double l1i_mpki = 0.0;
    double l1d_miss = 0.0;
    double l2_miss = 0.0;

    bool operator==(const CutoffSet&) const = default;
};

void validate(const CutoffSet& cutoffs);

/// Four-bit behavioral state: bit 0 branch, bit 1 L1I, bit 2 L1D, bit 3 L2.
class BehavioralState {
public:
    constexpr BehavioralState() = default;
    explicit BehavioralState(unsigned code);

    constexpr unsigned code() const { return code_; }
    constexpr bool high(Component c) const
    {
        return (code_ >> static_cast<unsigned>(c)) & 1u;
    }
    constexpr bool is_low() const { return code_ == 0; }

    bool operator==(const BehavioralState&) const = default;

private:
    std::uint8_t code_ = 0;
};

using StateVector = std::array<double, kStateCount>;

BehavioralState classify(const EpochRecord& record, const CutoffSet& cutoffs);

// "Low" for state 0, otherwise stressed components joined by '+' in the
// order L2, L1D, L1I, Branch.
std::string label(BehavioralState state);

// Linear interpolation between order statistics at rank p*(n-1), pooled over
// every epoch of every trace.
CutoffSet derive_percentile_cutoffs(std::span<const Trace> traces, double percentile);

// Presets: "intuitive" (default), "p25", "p50".
CutoffSet cutoff_preset(std::string_view name);
CutoffSet default_cutoffs();

std::string cutoffs_to_json(const CutoffSet& cutoffs);
CutoffSet cutoffs_from_json(std::string_view json_text);
// Preset name, or a path to a JSON cutoff file.
CutoffSet resolve_cutoffs(std::string_view name_or_path);

} // namespace sahm

#endif
