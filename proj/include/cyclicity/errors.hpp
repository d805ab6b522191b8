#ifndef CYCLICITY_ERRORS_HPP
#define CYCLICITY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cyc {

// Base for all library errors so the CLI can map them to structured output.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax or validation failure while reading input text.  `offset` is the
// byte position in the source string (-1 when not applicable).
struct ParseError : Error {
    long offset;
    ParseError(const std::string& msg, long off = -1) : Error(msg), offset(off) {}
};

// Evaluation outside the recorded domain (negative base under a rational
// power, vanishing denominator, ...).
struct DomainError : Error {
    using Error::Error;
};

// A chart could not be built (characteristic direction, failed
// quasihomogeneity condition, uncertified angular speed, ...).
struct LiftError : Error {
    using Error::Error;
};

// A trajectory left the chart's validity window before one full period.
struct WindowExit : Error {
    double theta_exit;
    WindowExit(const std::string& msg, double th) : Error(msg), theta_exit(th) {}
};

// The requested quantity is not decidable from the data (truncation too
// short, no Laurent leading term, ...).  CLI exit code 2.
struct Undecided : Error {
    using Error::Error;
};

} // namespace cyc

#endif
