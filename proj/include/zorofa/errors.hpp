#pragma once

#include <stdexcept>
#include <string>

namespace zorofa {

// Thrown by CountingOracle when an evaluation would exceed the query budget.
// The offending evaluation is not performed and not counted.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class UnknownProblem : public std::invalid_argument {
 public:
  explicit UnknownProblem(const std::string& what) : std::invalid_argument(what) {}
};

// Requested problem exists but cannot be built at the requested dimension
// (e.g. a function that needs n divisible by 4).
class IncompatibleDimension : public std::invalid_argument {
 public:
  explicit IncompatibleDimension(const std::string& what) : std::invalid_argument(what) {}
};

// Compressed-sensing estimation was requested with a measurement count that
// the m < n gate should have routed to finite differences.
class GateViolation : public std::logic_error {
 public:
  explicit GateViolation(const std::string& what) : std::logic_error(what) {}
};

// Configuration that can never run (e.g. fixed-sparsity baseline whose
// measurement count reaches n).
class ConfigInfeasible : public std::invalid_argument {
 public:
  explicit ConfigInfeasible(const std::string& what) : std::invalid_argument(what) {}
};

// A data-profile request references an (algorithm, problem, seed) cell with
// no run result.
class MissingCoverage : public std::invalid_argument {
 public:
  explicit MissingCoverage(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace zorofa
