#pragma once

#include <stdexcept>
#include <string>

namespace orch {

// Raised for malformed or contract-violating configuration (scenario files,
// catalog documents). The message names the offending field or unit.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a demand level cannot be covered by the offered capacity.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, double shortfall_rps)
        : std::runtime_error(what), shortfall_rps_(shortfall_rps) {}

    double shortfall_rps() const { return shortfall_rps_; }

private:
    double shortfall_rps_ = 0.0;
};

}  // namespace orch
