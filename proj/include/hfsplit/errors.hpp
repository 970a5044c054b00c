#pragma once

#include <stdexcept>
#include <string>

namespace hfsplit {

// Bad user input: grid sizes, unknown names, malformed configs.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Runtime numerical failure: NaN, non-convergent reference, ...
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A kick-drift-kick factorization was requested beyond its validity
// horizon t*.  Carries t* so callers can shrink the step.
struct HorizonError : NumericalError {
    HorizonError(const std::string& what, double t_requested, double t_star,
                 int stage = -1)
        : NumericalError(what), t_requested(t_requested), t_star(t_star),
          stage(stage) {}

    double t_requested;
    double t_star;
    int stage; // composition stage index, -1 if not stage-bound
};

} // namespace hfsplit
