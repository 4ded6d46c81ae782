// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace kickent {

// Argument outside the supported envelope of a numerical routine.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested allocation exceeds the configured memory budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bipartite vector whose norm has collapsed below the usable floor.
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched dimensions between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kickent
