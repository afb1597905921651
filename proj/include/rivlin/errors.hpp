#pragma once

#include <stdexcept>
#include <string>

namespace rivlin {

/// Material coefficients outside the admissible set (mu1 <= 0 or mu1 + mu2 <= 0).
class InvalidModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a branch map or closed-form criterion.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An equilibrium whose stored pressure does not balance the dead load.
class InconsistentInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mean/variance pair that no member of the distribution family attains.
class InfeasibleMomentsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation called for a model outside the regime it is defined for.
class RegimeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rivlin
