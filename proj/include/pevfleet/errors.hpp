#ifndef PEVFLEET_ERRORS_HPP
#define PEVFLEET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pevfleet {

// Error taxonomy mirrors the CLI exit codes: validation/scenario problems,
// solver failures, and I/O failures are distinguishable by type.

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : ValidationError {
    explicit DimensionError(const std::string& msg) : ValidationError(msg) {}
};

struct ConfigError : ValidationError {
    explicit ConfigError(const std::string& msg) : ValidationError(msg) {}
};

struct ScenarioError : ValidationError {
    explicit ScenarioError(const std::string& msg) : ValidationError(msg) {}
};

struct InfeasibleControlError : std::runtime_error {
    explicit InfeasibleControlError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pevfleet

#endif
