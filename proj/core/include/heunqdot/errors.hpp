#pragma once

#include <stdexcept>
#include <string>

namespace heunqdot {

// Input outside the domain of a closed-form mapping (omega <= 0, grid touching r = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// omega_0 = B = 0: the magnetic mapping has no confinement at all.
class DegenerateProblemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// (1 + alpha)_p vanished; only reachable with a negative-integer alpha.
class BranchError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Shooting bracket without a sign change of the matching condition.
class NoEigenvalueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerov step too coarse for the local wave number.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heunqdot
