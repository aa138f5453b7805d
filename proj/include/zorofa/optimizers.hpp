#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zorofa/gradest.hpp"
#include "zorofa/testfns.hpp"

namespace zorofa {

enum class Termination { BudgetExhausted, SigmaCapReached, MaxOuterIterations };

struct IterateRecord {
  long long k = 0;       // outer iteration index
  int j_k = 0;           // inner doublings consumed (0 for fixed-step baselines)
  long long s_k = 0;     // sparsity level in effect
  double sigma_k = 0.0;  // smoothness estimate (reciprocal step for fixed baselines)
  GradPath path = GradPath::CS;
  double f_before = 0.0;
  double f_after = 0.0;
  long long queries_cumulative = 0;
  std::optional<double> grad_norm;  // analytic gradient norm at x_k, when wired up
};

struct Trajectory {
  std::vector<IterateRecord> records;
  Vector x_final;  // last iterate whose objective value was measured
  double f_initial = 0.0;
  double f_final = 0.0;
  long long queries_initial = 0;  // spent before the first step (the f(x0) call)
  long long queries_total = 0;    // optimizer's own tally, independent of the oracle counter
  long long steps_taken = 0;      // update steps, measured or not
  Termination termination = Termination::MaxOuterIterations;
  bool step0_feasible = true;  // ceil(b s0 ln n) <= n/4 held for the configured s0
  bool pure_fd = false;        // no s0 >= 1 satisfies that bound; sensing disabled
  std::uint64_t bank_fingerprint = 0;
};

struct ZoroFaConfig {
  long long s0 = 1;
  double sigma0 = 1.0;
  double b = 1.0;
  double theta = 0.25;
  double eps = 1e-5;
  long long budget = 0;     // required, >= n + 2
  double sigma_cap = 0.0;   // <= 0 means 2^40 * sigma0
  std::uint64_t seed = 0;
  long long max_iterations = 1000000;
};

// Adaptive sparse gradient descent: per outer iteration, double (s_j, sigma_j)
// until the candidate step x - g/sigma_j decreases f by at least
// eps^2 / (2 sigma_j). Gradient estimates use compressed sensing while
// m_j = ceil(b s_j ln n) < n and coordinate differences afterwards.
Trajectory zoro_fa(CountingOracle& oracle, const Vector& x0, const ZoroFaConfig& config,
                   const GradientFn& diag_gradient = {});
Trajectory zoro_fa(const TestProblem& problem, const ZoroFaConfig& config);

struct ZoroFixedConfig {
  long long s = 1;
  double step_size = 0.125;
  double sampling_radius = 1e-4;
  double b = 1.0;
  long long budget = 0;
  std::uint64_t seed = 0;
  int cosamp_iterations = 10;
  long long max_iterations = 1000000;
};

// Fixed-sparsity baseline: every iteration measures m = ceil(b s ln n)
// compressed differences at the fixed radius, recovers an s-sparse gradient,
// and steps by step_size with no acceptance test.
Trajectory zoro_fixed(CountingOracle& oracle, const Vector& x0, const ZoroFixedConfig& config);
Trajectory zoro_fixed(const TestProblem& problem, const ZoroFixedConfig& config);

struct FdDescentConfig {
  double step_size = 0.125;
  double sampling_radius = 1e-4;
  long long budget = 0;
  long long max_iterations = 1000000;
};

// Dense baseline: full coordinate forward-difference gradient (n + 1 queries
// per iteration), fixed step, no acceptance test.
Trajectory fd_descent(CountingOracle& oracle, const Vector& x0, const FdDescentConfig& config);
Trajectory fd_descent(const TestProblem& problem, const FdDescentConfig& config);

// Upper bound on inner doublings per outer iteration:
// max{1, log2(2n / (b s0 ln n)), log2(2 (theta+1)^2 L / ((1 - 2 theta) sigma0))}.
double inner_loop_bound(int n, double b, long long s0, double sigma0, double theta, double L);

}  // namespace zorofa
