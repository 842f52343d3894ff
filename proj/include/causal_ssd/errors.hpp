#ifndef CAUSAL_SSD_ERRORS_HPP
#define CAUSAL_SSD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace causal_ssd {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function or sampler.
class DomainError : public Error {
public:
    using Error::Error;
};

// Sample whose scatter is degenerate (zero sum of squares, point-mass intervention).
class DegenerateSampleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Structural problem with a graph: partially directed cycle, missing edge,
// non-decomposable component, inconsistent orientation.
class GraphError : public Error {
public:
    using Error::Error;
};

// Exact enumeration requested above the supported component size.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Observational data too small or singular for a proper design posterior.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// No candidate intervention sequence has every target size achievable.
class NoFeasibleSequenceError : public Error {
public:
    using Error::Error;
};

// Malformed input file. `line` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace causal_ssd

#endif // CAUSAL_SSD_ERRORS_HPP
