#pragma once

#include <stdexcept>
#include <string>

namespace photon {

// Argument outside the domain of a function (branch cut, r <= 0, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Iterative procedure (quadrature, root finder, eigensolver) failed to converge.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace photon
