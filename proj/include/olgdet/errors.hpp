#pragma once

#include <stdexcept>
#include <string>

namespace olgdet {

/// Input outside the model's parameter domain (bad bounds, non-steady-state input, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to converge or to bracket a root.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace olgdet
