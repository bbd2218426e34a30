#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace circumnav {

// Error taxonomy. The CLI maps these onto process exit codes:
// config/invariant -> 2, assumption violation -> 3, divergence -> 4.

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateGeometry : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PlanningError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Raised when the communication graph breaks the every-follower-reaches-a-leader
// requirement. Carries the offending follower cycle when one exists.
class AssumptionViolation : public std::runtime_error {
public:
    explicit AssumptionViolation(const std::string& msg, std::vector<int> cycle = {})
        : std::runtime_error(msg), cycle_(std::move(cycle)) {}

    const std::vector<int>& cycle() const { return cycle_; }

private:
    std::vector<int> cycle_;
};

// A simulation state stopped being finite; carries the time of the failed step.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& msg, double t)
        : std::runtime_error(msg + " (t=" + std::to_string(t) + ")"), time_(t) {}

    double time() const { return time_; }

private:
    double time_;
};

}  // namespace circumnav
