#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zorofa/oracle.hpp"

namespace zorofa {

using GradientFn = std::function<Vector(const Vector&)>;

struct TestProblem {
  std::string name;
  int dim = 0;
  Vector x0;
  Objective objective;
  GradientFn gradient;  // analytic gradient; empty when not available

  double eval(const Vector& x) const { return objective.fn(x); }
};

// f(x) = sum of the s largest squared entries of x (ties broken toward the
// lower index, same rule the sparse selection in CoSaMP uses). Gradient is
// exactly s-sparse away from ties.
TestProblem max_s_squared(int n, int s);

// Quadratic chain in the first s coordinates, flat in the rest:
//   f(x) = (lambda/8) (x_1^2 + sum_{i<s} (x_i - x_{i+1})^2 + x_s^2) - (lambda/4) x_1
TestProblem nesterov_chain(int n, int s, double lambda);

// Classic nonlinear least-squares test set, by registry name:
// rosex, trig, powell_singular_ext, broyden_tridiag, discrete_boundary,
// penalty1. x0 is the standard start scaled by 10^x0_scale.
TestProblem mgh_problem(const std::string& name, int n, int x0_scale = 0);

// N(0, 10 I) draw used as the starting point in the sparse benchmark.
Vector sparse_benchmark_start(int n, std::uint64_t seed);

struct ProblemParams {
  int n = 0;
  int s = 0;
  double lambda = 8.0;
  int x0_scale = 0;
  std::uint64_t seed = 0;  // only consulted where the start is randomized
};

TestProblem make_problem(const std::string& name, const ProblemParams& params);
std::vector<std::string> problem_names();

}  // namespace zorofa
