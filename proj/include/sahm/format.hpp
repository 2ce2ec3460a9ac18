#ifndef SAHM_FORMAT_HPP
#define SAHM_FORMAT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sahm {

/// Raised for malformed or out-of-range input data. The message carries the
/// file and row when they are known.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a call violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Shortest representation that parses back to the same double.
std::string format_double(double value);

double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);
std::vector<double> parse_double_list(std::string_view text);

} // namespace sahm

#endif
