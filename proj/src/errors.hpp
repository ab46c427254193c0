#pragma once

#include <stdexcept>
#include <string>

namespace meshfree {

// Pivot fell below the relative floor during factorization. Usually caused by
// duplicate/degenerate center geometry or an unaugmented thin-plate-spline
// system; the message says which.
struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SamplingStalledError : std::runtime_error {
    explicit SamplingStalledError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace meshfree
