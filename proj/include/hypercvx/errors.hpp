#pragma once

#include <stdexcept>

namespace hypercvx {

// Bad argument values (out-of-range sizes, invalid index sets, ...).
struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A requested computation exceeds a configured size guard.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A caller handed in data violating a documented precondition
// (e.g. an asymmetric matrix where a symmetric one is required).
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

// A matrix that must be inverted is singular.
struct singularity_error : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace hypercvx
