#ifndef QPURITY_ERRORS_HPP
#define QPURITY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpurity {

// Error conditions raised across the library. All derive from std::runtime_error
// so callers can catch broadly or per condition.

struct NotHermitian : std::runtime_error {
    explicit NotHermitian(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidExponent : std::runtime_error {
    explicit InvalidExponent(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidDimension : std::runtime_error {
    explicit InvalidDimension(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NotUnitary : std::runtime_error {
    explicit NotUnitary(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NotTracePreserving : std::runtime_error {
    explicit NotTracePreserving(const std::string& what) : std::runtime_error(what) {}
};

struct BracketFailure : std::runtime_error {
    explicit BracketFailure(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qpurity

#endif
