#ifndef SAHM_TRACE_HPP
#define SAHM_TRACE_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sahm {

inline constexpr int kDefaultEpochMs = 100;
inline constexpr double kMaxL1iMpki = 1000.0;

/// One epoch of derived counter metrics for one program.
struct EpochRecord {
    double branch_mispredict_ratio = 0.0; // mispredicts / branches
    double l1i_mpki = 0.0;                // L1I misses per kilo-instruction
    double l1d_miss_ratio = 0.0;          // L1D misses / L1D accesses
    double l2_miss_ratio = 0.0;           // L2 misses / L2 accesses

    bool operator==(const EpochRecord&) const = default;
};

// Throws DataError naming the offending field.
void validate(const EpochRecord& record);

/// A program's execution as an ordered sequence of fixed-length epochs.
class Trace {
public:
    Trace(std::string name, int epoch_ms, std::vector<EpochRecord> epochs);

    const std::string& name() const { return name_; }
    int epoch_ms() const { return epoch_ms_; }
    std::span<const EpochRecord> epochs() const { return epochs_; }
    std::size_t size() const { return epochs_.size(); }
    const EpochRecord& operator[](std::size_t i) const { return epochs_[i]; }

    // Baseline execution time of one full pass.
    double length_ms() const
    {
        return static_cast<double>(epochs_.size()) * epoch_ms_;
    }

    bool operator==(const Trace&) const = default;

private:
    std::string name_;
    int epoch_ms_;
    std::vector<EpochRecord> epochs_;
};

inline constexpr const char* kTraceCsvHeader =
    "name,epoch_index,branch_mispredict_ratio,l1i_mpki,l1d_miss_ratio,l2_miss_ratio";

// `source` labels error messages.
Trace read_trace(std::istream& in, int epoch_ms = kDefaultEpochMs,
                 const std::string& source = "<stream>");
Trace read_trace(const std::filesystem::path& path, int epoch_ms = kDefaultEpochMs);

void write_trace(std::ostream& out, const Trace& trace);
void write_trace(const std::filesystem::path& path, const Trace& trace);

// Each entry may be a CSV file or a directory; directories contribute their
// *.csv files in lexicographic order.
std::vector<Trace> load_traces(std::span<const std::filesystem::path> inputs,
                               int epoch_ms = kDefaultEpochMs);

} // namespace sahm

#endif
