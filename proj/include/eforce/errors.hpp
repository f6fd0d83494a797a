#pragma once

#include <stdexcept>
#include <string>

namespace eforce {

/// Runtime numerical failure (integrator non-convergence, non-finite
/// evaluation). Carries step diagnostics in the message text.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eforce
