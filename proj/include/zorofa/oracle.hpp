#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "zorofa/errors.hpp"
#include "zorofa/linalg.hpp"

namespace zorofa {

// A black-box objective. Metadata fields are optional hints used by
// benchmark reporting, never by the optimizers themselves.
struct Objective {
  int dim = 0;
  std::function<double(const Vector&)> fn;
  std::optional<double> known_flow;       // known minimum value, if any
  std::optional<double> known_lipschitz;  // gradient Lipschitz constant, if known

  double operator()(const Vector& x) const { return fn(x); }
};

// Wraps an Objective and counts every function evaluation. All query
// accounting in the experiments flows through this class; nothing else may
// call the objective.
class CountingOracle {
 public:
  explicit CountingOracle(Objective objective,
                          std::optional<long long> budget = std::nullopt)
      : objective_(std::move(objective)), budget_(budget) {
    if (objective_.dim <= 0) throw std::invalid_argument("oracle: dim must be positive");
    if (!objective_.fn) throw std::invalid_argument("oracle: missing objective function");
    if (budget_ && *budget_ < 0) throw std::invalid_argument("oracle: negative budget");
  }

  double evaluate(const Vector& x) {
    if (x.size() != objective_.dim)
      throw DimensionMismatch("oracle: point has size " + std::to_string(x.size()) +
                              ", objective has dim " + std::to_string(objective_.dim));
    if (!x.allFinite()) throw std::invalid_argument("oracle: non-finite point");
    if (budget_ && count_ >= *budget_)
      throw BudgetExhausted("oracle: budget of " + std::to_string(*budget_) + " exhausted");
    ++count_;
    return objective_.fn(x);
  }

  long long query_count() const { return count_; }
  std::optional<long long> budget() const { return budget_; }
  long long remaining() const { return budget_ ? *budget_ - count_ : -1; }
  int dim() const { return objective_.dim; }
  const Objective& objective() const { return objective_; }

  // Zeroes the counter; the budget limit is unchanged.
  void reset() { count_ = 0; }

 private:
  Objective objective_;
  std::optional<long long> budget_;
  long long count_ = 0;
};

}  // namespace zorofa
