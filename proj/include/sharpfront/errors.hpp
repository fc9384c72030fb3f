#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sharpfront {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// a step produced values outside [0,1]; caller should lower cfl
struct CflViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainExit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalConsistency : std::logic_error {
    using std::logic_error::logic_error;
};

class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), history_(std::move(history)) {}
    const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

}  // namespace sharpfront
