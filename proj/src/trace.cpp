#include "sahm/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "sahm/format.hpp"

namespace sahm {

namespace {

void check_fraction(double v, const char* field)
{
    if (!(v >= 0.0 && v <= 1.0))
        throw DataError(std::string(field) + " out of range [0,1]: " + format_double(v));
}

} // namespace

void validate(const EpochRecord& r)
{
    check_fraction(r.branch_mispredict_ratio, "branch_mispredict_ratio");
    if (!(r.l1i_mpki >= 0.0 && r.l1i_mpki <= kMaxL1iMpki))
        throw DataError("l1i_mpki out of range [0,1000]: " + format_double(r.l1i_mpki));
    check_fraction(r.l1d_miss_ratio, "l1d_miss_ratio");
    check_fraction(r.l2_miss_ratio, "l2_miss_ratio");
}

Trace::Trace(std::string name, int epoch_ms, std::vector<EpochRecord> epochs)
    : name_(std::move(name)), epoch_ms_(epoch_ms), epochs_(std::move(epochs))
{
    if (epoch_ms_ <= 0)
        throw PreconditionError("trace '" + name_ + "': epoch_ms must be positive");
    if (epochs_.empty())
        throw DataError("trace '" + name_ + "': no epochs");
    for (std::size_t i = 0; i < epochs_.size(); ++i) {
        try {
            validate(epochs_[i]);
        } catch (const DataError& e) {
            throw DataError("trace '" + name_ + "' epoch " + std::to_string(i) + ": " + e.what());
        }
    }
}

Trace read_trace(std::istream& in, int epoch_ms, const std::string& source)
{
    auto fail = [&](std::size_t row, const std::string& what) -> DataError {
        return DataError(source + ":" + std::to_string(row) + ": " + what);
    };

    std::string line;
    std::size_t row = 0;
    if (!std::getline(in, line))
        throw DataError(source + ": no epochs");
    ++row;
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kTraceCsvHeader)
        throw fail(row, "expected header '" + std::string(kTraceCsvHeader) + "'");

    std::string name;
    std::map<std::int64_t, EpochRecord> by_index;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = split(line, ',');
        if (fields.size() != 6)
            throw fail(row, "expected 6 fields, got " + std::to_string(fields.size()));
        try {
            std::string row_name(fields[0]);
            if (row_name.empty())
                throw DataError("empty trace name");
            if (name.empty())
                name = row_name;
            else if (row_name != name)
                throw DataError("trace name '" + row_name + "' differs from '" + name + "'");
            std::int64_t index = parse_int(fields[1]);
            if (index < 0)
                throw DataError("negative epoch index");
            EpochRecord rec{parse_double(fields[2]), parse_double(fields[3]),
                            parse_double(fields[4]), parse_double(fields[5])};
            validate(rec);
            if (!by_index.emplace(index, rec).second)
                throw DataError("duplicate epoch index " + std::to_string(index));
        } catch (const DataError& e) {
            throw fail(row, e.what());
        }
    }
    if (by_index.empty())
        throw DataError(source + ": no epochs");

    std::vector<EpochRecord> epochs;
    epochs.reserve(by_index.size());
    std::int64_t expected = 0;
    for (const auto& [index, rec] : by_index) {
        if (index != expected)
            throw DataError(source + ": missing epoch index " + std::to_string(expected));
        epochs.push_back(rec);
        ++expected;
    }
    return Trace(name, epoch_ms, std::move(epochs));
}

Trace read_trace(const std::filesystem::path& path, int epoch_ms)
{
    std::ifstream in(path);
    if (!in)
        throw DataError(path.string() + ": cannot open");
    return read_trace(in, epoch_ms, path.string());
}

void write_trace(std::ostream& out, const Trace& trace)
{
    out << kTraceCsvHeader << '\n';
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& r = trace[i];
        out << trace.name() << ',' << i << ',' << format_double(r.branch_mispredict_ratio) << ','
            << format_double(r.l1i_mpki) << ',' << format_double(r.l1d_miss_ratio) << ','
            << format_double(r.l2_miss_ratio) << '\n';
    }
}

void write_trace(const std::filesystem::path& path, const Trace& trace)
{
    std::ofstream out(path);
    if (!out)
        throw DataError(path.string() + ": cannot write");
    write_trace(out, trace);
}

std::vector<Trace> load_traces(std::span<const std::filesystem::path> inputs, int epoch_ms)
{
    namespace fs = std::filesystem;
    std::vector<Trace> traces;
    for (const auto& input : inputs) {
        if (fs::is_directory(input)) {
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(input))
                if (entry.is_regular_file() && entry.path().extension() == ".csv")
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files)
                traces.push_back(read_trace(f, epoch_ms));
        } else {
            traces.push_back(read_trace(input, epoch_ms));
        }
    }
    if (traces.empty())
        throw DataError("no traces found");
    return traces;
}

} // namespace sahm
