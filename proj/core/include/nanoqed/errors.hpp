#pragma once

#include <stdexcept>
#include <string>

namespace nanoqed {

// Invalid or out-of-range parameters, bad config files.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Eigensolver non-convergence, bisection failure, dimension-cap violations.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace nanoqed
