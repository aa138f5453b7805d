#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "zorofa/optimizers.hpp"

namespace zorofa {

struct ProblemSpec {
  std::string name;
  std::function<TestProblem(std::uint64_t seed)> make;
};

struct AlgorithmSpec {
  std::string name;
  std::function<Trajectory(const TestProblem&, long long budget, std::uint64_t seed)> run;
};

struct RunResult {
  std::string problem;
  std::string algorithm;
  std::uint64_t seed = 0;
  int n = 0;
  Trajectory trajectory;
  std::vector<std::pair<long long, double>> f_history;  // (queries, best f so far)
  bool failed = false;
  std::string error;
};

// Measured objective values of a trajectory in query order, transformed to
// running best.
std::vector<std::pair<long long, double>> best_so_far_history(const Trajectory& t);

// Full cross product of problems x algorithms x seeds, each run against a
// fresh oracle with budget round(budget_mult * (n + 1)). Results come back in
// (problem, algorithm, seed) loop order regardless of jobs.
std::vector<RunResult> run_suite(const std::vector<ProblemSpec>& problems,
                                 const std::vector<AlgorithmSpec>& algorithms,
                                 const std::vector<std::uint64_t>& seeds,
                                 double budget_mult, int jobs = 1);

// f_k <= f_L + tau (f0 - f_L)
bool convergence_test(double f_k, double f0, double f_L, double tau);

struct ProfileCurve {
  std::string algorithm;
  std::vector<std::pair<double, double>> points;  // (alpha, fraction solved)
};

struct DataProfile {
  double tau = 0.0;
  std::vector<ProfileCurve> curves;
};

// Data profile over problem instances (problem, seed): an instance counts as
// solved once the running best passes the convergence test, with f_L the best
// value any algorithm reached on that problem across all seeds; alpha is
// queries / (n + 1).
DataProfile data_profile(const std::vector<RunResult>& results, double tau);

struct CompressibilityProfile {
  std::string problem;
  std::vector<double> mean;  // indexed by rank, largest magnitude first
  std::vector<double> min;
  std::vector<double> max;
};

// Sorted-magnitude statistics of the analytic gradient over num_points draws
// from the benchmark's starting distribution.
CompressibilityProfile compressibility_profile(const TestProblem& problem, int num_points,
                                               std::uint64_t seed);

}  // namespace zorofa
