#include "zorofa/optimizers.hpp"

#include <climits>
#include <cmath>
#include <stdexcept>

#include "zorofa/errors.hpp"
#include "zorofa/rng.hpp"

namespace zorofa {

namespace {

bool sampling_bound_holds(double b, long long s0, int n) {
  return static_cast<double>(measurement_count(b, s0, n)) <= n / 4.0;
}

// Queries the oracle can still answer, or -1 when unlimited. Knowing this up
// front lets the optimizer keep an exact independent tally even when budget
// exhaustion interrupts a half-finished measurement sweep: exhaustion means
// everything that was left got consumed.
long long queries_available(const CountingOracle& oracle) {
  return oracle.budget() ? *oracle.budget() - oracle.query_count() : -1;
}

long long doubled(long long s0, int j) {
  if (j < 62 && s0 <= (LLONG_MAX >> j)) return s0 << j;
  return LLONG_MAX / 4;
}

CountingOracle problem_oracle(const TestProblem& problem, long long budget) {
  std::optional<long long> cap;
  if (budget > 0) cap = budget;
  return CountingOracle(problem.objective, cap);
}

}  // namespace

Trajectory zoro_fa(CountingOracle& oracle, const Vector& x0, const ZoroFaConfig& cfg,
                   const GradientFn& diag_gradient) {
  int n = static_cast<int>(x0.size());
  if (n < 2) throw std::invalid_argument("zoro_fa: n must be at least 2");
  if (oracle.dim() != n) throw DimensionMismatch("zoro_fa: x0 does not match oracle");
  if (cfg.s0 < 1) throw std::invalid_argument("zoro_fa: s0 must be positive");
  if (cfg.sigma0 <= 0.0) throw std::invalid_argument("zoro_fa: sigma0 must be positive");
  if (cfg.b < 1.0) throw std::invalid_argument("zoro_fa: b must be at least 1");
  if (cfg.theta <= 0.0 || cfg.theta >= 0.5)
    throw std::invalid_argument("zoro_fa: theta must lie in (0, 0.5)");
  if (cfg.eps <= 0.0 || cfg.eps >= 1.0)
    throw std::invalid_argument("zoro_fa: eps must lie in (0, 1)");

  long long avail = queries_available(oracle);
  long long declared = cfg.budget > 0 ? cfg.budget : avail;
  if (avail >= 0 && (declared < 0 || avail < declared)) declared = avail;
  if (declared >= 0 && declared < n + 2)
    throw ConfigInfeasible("zoro_fa: budget below n + 2 cannot finish one iteration");

  double sigma_cap = cfg.sigma_cap > 0.0 ? cfg.sigma_cap : std::ldexp(cfg.sigma0, 40);

  Trajectory traj;
  traj.step0_feasible = sampling_bound_holds(cfg.b, cfg.s0, n);
  traj.pure_fd = !sampling_bound_holds(cfg.b, 1, n);
  traj.x_final = x0;
  traj.f_initial = std::nan("");
  traj.f_final = std::nan("");

  RademacherBank bank(n, derive_seed(cfg.seed, streams::kBank));
  traj.bank_fingerprint = bank.fingerprint();

  long long tally = 0;
  Vector x = x0;
  double f_x = 0.0;
  try {
    f_x = oracle.evaluate(x);
    ++tally;
  } catch (const BudgetExhausted&) {
    if (avail >= 0) tally = avail;
    traj.termination = Termination::BudgetExhausted;
    traj.queries_total = tally;
    return traj;
  }
  traj.f_initial = f_x;
  traj.f_final = f_x;
  traj.queries_initial = tally;

  bool stop = false;
  for (long long k = 0; k < cfg.max_iterations && !stop; ++k) {
    std::optional<double> grad_norm;
    if (diag_gradient) grad_norm = diag_gradient(x).norm();

    bool accepted = false;
    for (int j = 0; !accepted && !stop; ++j) {
      double sigma_j = std::ldexp(cfg.sigma0, j);
      if (sigma_j > sigma_cap) {
        traj.termination = Termination::SigmaCapReached;
        stop = true;
        break;
      }
      long long s_j = doubled(cfg.s0, j);
      double m_approx = cfg.b * static_cast<double>(s_j) * std::log(static_cast<double>(n));
      bool cs_path = !traj.pure_fd && std::ceil(m_approx) < static_cast<double>(n);

      try {
        GradEstimate est =
            cs_path ? cs_gradient(oracle, x, f_x, bank, s_j, sigma_j, cfg.theta, cfg.eps, cfg.b)
                    : fd_gradient(oracle, x, f_x, sigma_j, cfg.theta, cfg.eps);
        tally += est.queries;

        Vector trial = x - est.g / sigma_j;
        if (!trial.allFinite()) continue;  // reject; a larger sigma shrinks the step
        double f_trial = oracle.evaluate(trial);
        ++tally;

        if (f_x - f_trial >= cfg.eps * cfg.eps / (2.0 * sigma_j)) {
          IterateRecord rec;
          rec.k = k;
          rec.j_k = j;
          rec.s_k = s_j;
          rec.sigma_k = sigma_j;
          rec.path = est.path;
          rec.f_before = f_x;
          rec.f_after = f_trial;
          rec.queries_cumulative = tally;
          rec.grad_norm = grad_norm;
          traj.records.push_back(rec);
          x = trial;
          f_x = f_trial;
          ++traj.steps_taken;
          accepted = true;
        }
      } catch (const BudgetExhausted&) {
        if (avail >= 0) tally = avail;
        traj.termination = Termination::BudgetExhausted;
        stop = true;
      }
    }
  }

  traj.x_final = x;
  traj.f_final = f_x;
  traj.queries_total = tally;
  return traj;
}

Trajectory zoro_fa(const TestProblem& problem, const ZoroFaConfig& cfg) {
  CountingOracle oracle = problem_oracle(problem, cfg.budget);
  return zoro_fa(oracle, problem.x0, cfg, problem.gradient);
}

Trajectory zoro_fixed(CountingOracle& oracle, const Vector& x0, const ZoroFixedConfig& cfg) {
  int n = static_cast<int>(x0.size());
  if (n < 2) throw std::invalid_argument("zoro_fixed: n must be at least 2");
  if (oracle.dim() != n) throw DimensionMismatch("zoro_fixed: x0 does not match oracle");
  if (cfg.s < 1 || 2 * cfg.s > n) throw std::invalid_argument("zoro_fixed: need 1 <= 2 s <= n");
  if (cfg.step_size <= 0.0) throw std::invalid_argument("zoro_fixed: step must be positive");
  if (cfg.sampling_radius <= 0.0) throw std::invalid_argument("zoro_fixed: bad radius");
  if (cfg.b <= 0.0) throw std::invalid_argument("zoro_fixed: b must be positive");

  long long m = measurement_count(cfg.b, cfg.s, n);
  if (m >= n)
    throw ConfigInfeasible("zoro_fixed: measurement count " + std::to_string(m) +
                           " reaches n = " + std::to_string(n));

  RademacherBank bank(n, derive_seed(cfg.seed, streams::kBank));
  SensingMatrix Z = sensing_matrix(bank, static_cast<int>(m));
  CosampConfig cc;
  cc.sparsity = static_cast<int>(cfg.s);
  cc.iterations = cfg.cosamp_iterations;

  Trajectory traj;
  traj.bank_fingerprint = bank.fingerprint();
  traj.x_final = x0;
  traj.f_initial = std::nan("");
  traj.f_final = std::nan("");

  long long avail = queries_available(oracle);
  long long tally = 0;
  Vector x = x0;
  IterateRecord pending;
  bool have_pending = false;

  for (long long it = 0; it < cfg.max_iterations; ++it) {
    double f_x;
    try {
      f_x = oracle.evaluate(x);
      ++tally;
    } catch (const BudgetExhausted&) {
      if (avail >= 0) tally = avail;
      traj.termination = Termination::BudgetExhausted;
      break;
    }
    if (it == 0) {
      traj.f_initial = f_x;
      traj.queries_initial = tally;
    }
    if (have_pending) {
      pending.f_after = f_x;
      pending.queries_cumulative = tally;
      traj.records.push_back(pending);
      have_pending = false;
    }
    traj.x_final = x;
    traj.f_final = f_x;
    if (!std::isfinite(f_x)) break;  // differences at a diverged point are meaningless

    Vector y;
    try {
      y = measure(oracle, x, cfg.sampling_radius, static_cast<int>(m), bank, f_x);
      tally += m;
    } catch (const BudgetExhausted&) {
      if (avail >= 0) tally = avail;
      traj.termination = Termination::BudgetExhausted;
      break;
    }

    Vector g = cosamp(Z, y, cc).dense();
    Vector x_next = x - cfg.step_size * g;
    if (!x_next.allFinite()) break;

    pending.k = it;
    pending.j_k = 0;
    pending.s_k = cfg.s;
    pending.sigma_k = 1.0 / cfg.step_size;
    pending.path = GradPath::CS;
    pending.f_before = f_x;
    pending.f_after = std::nan("");
    pending.queries_cumulative = 0;
    pending.grad_norm.reset();
    have_pending = true;

    x = x_next;
    ++traj.steps_taken;
  }

  traj.queries_total = tally;
  return traj;
}

Trajectory zoro_fixed(const TestProblem& problem, const ZoroFixedConfig& cfg) {
  CountingOracle oracle = problem_oracle(problem, cfg.budget);
  return zoro_fixed(oracle, problem.x0, cfg);
}

Trajectory fd_descent(CountingOracle& oracle, const Vector& x0, const FdDescentConfig& cfg) {
  int n = static_cast<int>(x0.size());
  if (n < 1) throw std::invalid_argument("fd_descent: empty x0");
  if (oracle.dim() != n) throw DimensionMismatch("fd_descent: x0 does not match oracle");
  if (cfg.step_size <= 0.0) throw std::invalid_argument("fd_descent: step must be positive");
  if (cfg.sampling_radius <= 0.0) throw std::invalid_argument("fd_descent: bad radius");

  Trajectory traj;
  traj.x_final = x0;
  traj.f_initial = std::nan("");
  traj.f_final = std::nan("");

  long long avail = queries_available(oracle);
  long long tally = 0;
  Vector x = x0;
  IterateRecord pending;
  bool have_pending = false;

  for (long long it = 0; it < cfg.max_iterations; ++it) {
    double f_x;
    try {
      f_x = oracle.evaluate(x);
      ++tally;
    } catch (const BudgetExhausted&) {
      if (avail >= 0) tally = avail;
      traj.termination = Termination::BudgetExhausted;
      break;
    }
    if (it == 0) {
      traj.f_initial = f_x;
      traj.queries_initial = tally;
    }
    if (have_pending) {
      pending.f_after = f_x;
      pending.queries_cumulative = tally;
      traj.records.push_back(pending);
      have_pending = false;
    }
    traj.x_final = x;
    traj.f_final = f_x;
    if (!std::isfinite(f_x)) break;

    Vector g;
    try {
      g = forward_difference(oracle, x, f_x, cfg.sampling_radius);
      tally += n;
    } catch (const BudgetExhausted&) {
      if (avail >= 0) tally = avail;
      traj.termination = Termination::BudgetExhausted;
      break;
    }

    Vector x_next = x - cfg.step_size * g;
    if (!x_next.allFinite()) break;

    pending.k = it;
    pending.j_k = 0;
    pending.s_k = n;
    pending.sigma_k = 1.0 / cfg.step_size;
    pending.path = GradPath::FD;
    pending.f_before = f_x;
    pending.f_after = std::nan("");
    pending.queries_cumulative = 0;
    pending.grad_norm.reset();
    have_pending = true;

    x = x_next;
    ++traj.steps_taken;
  }

  traj.queries_total = tally;
  return traj;
}

Trajectory fd_descent(const TestProblem& problem, const FdDescentConfig& cfg) {
  CountingOracle oracle = problem_oracle(problem, cfg.budget);
  return fd_descent(oracle, problem.x0, cfg);
}

double inner_loop_bound(int n, double b, long long s0, double sigma0, double theta, double L) {
  if (n < 2) throw std::invalid_argument("inner_loop_bound: n must be at least 2");
  if (b <= 0.0 || s0 < 1 || sigma0 <= 0.0 || L <= 0.0)
    throw std::invalid_argument("inner_loop_bound: bad parameters");
  if (theta <= 0.0 || theta >= 0.5)
    throw std::invalid_argument("inner_loop_bound: theta must lie in (0, 0.5)");

  double t1 = std::log2(2.0 * n / (b * static_cast<double>(s0) * std::log(static_cast<double>(n))));
  double t2 = std::log2(2.0 * (theta + 1.0) * (theta + 1.0) * L / ((1.0 - 2.0 * theta) * sigma0));
  return std::max({1.0, t1, t2});
}

}  // namespace zorofa
