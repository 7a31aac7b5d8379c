#pragma once

#include <stdexcept>
#include <string>

namespace longbond {

/// Scenario or model input inconsistent with the documented model hypotheses.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A declared model bound (volatility bound V2, MPR dominator M1, ...) failed at runtime.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A simulated path produced non-finite values.
class NumericalBlowup : public std::runtime_error {
public:
    NumericalBlowup(double t, long long path_id)
        : std::runtime_error("non-finite value on path " + std::to_string(path_id) +
                             " at t=" + std::to_string(t)),
          time(t), path(path_id) {}
    double time;
    long long path;
};

} // namespace longbond
