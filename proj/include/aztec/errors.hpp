#pragma once
#include <stdexcept>
#include <string>

namespace aztec {

// Bad input: wrong lengths, broken invariants, out-of-range parameters.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to certify its result.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A brute-force routine was asked for more work than its guard allows.
struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace aztec
