#pragma once

#include <stdexcept>
#include <string>

namespace mo {

/// Argument outside the mathematical domain of an operation (negative u, u beyond b_Phi, u = 0 where a
/// nonzero function is required).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent input: space mismatch, bad weights, wrong per-atom array length.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A doubling/halving bracket search did not flip its predicate within the allowed number of steps.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mo
