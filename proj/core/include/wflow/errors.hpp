#pragma once

#include <stdexcept>

namespace wflow {

// A trigonometric quotient was evaluated at an exactly vanishing denominator.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical procedure could not complete: step-size underflow, an integral
// that never resolved, or a flow whose speed vanishes along the path.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wflow
