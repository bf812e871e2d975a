#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace infogeo {

// Bad caller input: wrong dimensions, values outside domains, malformed files.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure: degenerate inputs, non-convergence, infeasible enumeration.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by graph builders that refuse to repair connectivity themselves.
// Carries the vertex sets of the connected components for diagnostics.
class DisconnectedGraphError : public NumericalError {
 public:
  DisconnectedGraphError(const std::string& message,
                         std::vector<std::vector<int>> components)
      : NumericalError(message), components_(std::move(components)) {}

  const std::vector<std::vector<int>>& components() const { return components_; }

 private:
  std::vector<std::vector<int>> components_;
};

}  // namespace infogeo
