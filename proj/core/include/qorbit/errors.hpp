#ifndef QORBIT_ERRORS_HPP
#define QORBIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qorbit {

// Division by a zero scalar. Thrown instead of crashing inside elimination
// loops; callers that can recover catch it by type.
struct division_error : std::domain_error {
    explicit division_error(const std::string& what) : std::domain_error(what) {}
};

// A shifted-projector coefficient hit a vanishing denominator [s+i].
struct pole_error : std::domain_error {
    pole_error(const std::string& what, int index) : std::domain_error(what), denominator_index(index) {}
    int denominator_index;
};

// A computation needs module data outside the built truncation window.
struct window_error : std::runtime_error {
    explicit window_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation precondition failed (non-dominant weight, rank mismatch, ...).
struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace qorbit

#endif
