#ifndef SAHM_REPRO_HPP
#define SAHM_REPRO_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sahm/metrics.hpp"
#include "sahm/state_space.hpp"
#include "sahm/trace.hpp"

namespace sahm {

inline constexpr std::uint64_t kDefaultReproSeed = 2025;

struct ReproOptions {
    CutoffSet cutoffs = default_cutoffs();
    SimParams params{};
    unsigned threads = 0; // 0: default_thread_count()
    bool json = false;    // sweep.json instead of sweep.csv
};

// Output file name -> contents.
using ReproFiles = std::map<std::string, std::string>;

// One step of the realistic-chip constraint ladder.
struct LadderStep {
    std::string label;
    PolicyKind policy;
    double migration_cost_ms;
};

std::vector<LadderStep> realistic_ladder_steps();

// Presets: limit-study, breadth, generalist-vs-specialized, realistic-ladder.
std::vector<std::string> repro_presets();

ReproFiles run_repro(std::string_view preset, std::span<const Trace> traces,
                     const ReproOptions& options);

void write_files(const std::filesystem::path& dir, const ReproFiles& files);

} // namespace sahm

#endif
