#include "zorofa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "zorofa/errors.hpp"
#include "zorofa/rng.hpp"

namespace zorofa {

std::vector<std::pair<long long, double>> best_so_far_history(const Trajectory& t) {
  std::vector<std::pair<long long, double>> h;
  if (std::isnan(t.f_initial)) return h;
  h.emplace_back(t.queries_initial, t.f_initial);
  double best = t.f_initial;
  for (const auto& rec : t.records) {
    if (std::isnan(rec.f_after)) continue;
    best = std::min(best, rec.f_after);
    h.emplace_back(rec.queries_cumulative, best);
  }
  return h;
}

std::vector<RunResult> run_suite(const std::vector<ProblemSpec>& problems,
                                 const std::vector<AlgorithmSpec>& algorithms,
                                 const std::vector<std::uint64_t>& seeds,
                                 double budget_mult, int jobs) {
  if (problems.empty() || algorithms.empty() || seeds.empty())
    throw std::invalid_argument("run_suite: empty problem, algorithm, or seed list");
  if (budget_mult <= 0.0) throw std::invalid_argument("run_suite: budget multiplier must be positive");

  struct Cell {
    std::size_t p, a, s;
  };
  std::vector<Cell> cells;
  for (std::size_t p = 0; p < problems.size(); ++p)
    for (std::size_t a = 0; a < algorithms.size(); ++a)
      for (std::size_t s = 0; s < seeds.size(); ++s) cells.push_back({p, a, s});

  std::vector<RunResult> results(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      const Cell& c = cells[i];
      RunResult rr;
      rr.problem = problems[c.p].name;
      rr.algorithm = algorithms[c.a].name;
      rr.seed = seeds[c.s];
      try {
        TestProblem tp = problems[c.p].make(rr.seed);
        rr.n = tp.dim;
        long long budget = std::llround(budget_mult * (tp.dim + 1));
        rr.trajectory = algorithms[c.a].run(tp, budget, rr.seed);
        rr.f_history = best_so_far_history(rr.trajectory);
      } catch (const std::exception& e) {
        rr.failed = true;
        rr.error = e.what();
      }
      results[i] = std::move(rr);
    }
  };

  int workers = std::max(1, jobs);
  if (workers == 1 || cells.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }
  return results;
}

bool convergence_test(double f_k, double f0, double f_L, double tau) {
  return f_k <= f_L + tau * (f0 - f_L);
}

DataProfile data_profile(const std::vector<RunResult>& results, double tau) {
  if (results.empty()) throw std::invalid_argument("data_profile: no results");
  if (tau <= 0.0 || tau >= 1.0) throw std::invalid_argument("data_profile: tau in (0, 1)");

  // f_L is per problem: the best value any algorithm reached on it, over all
  // seeds. An instance (problem, seed) is solved by a run once its running
  // best passes the convergence test against its own starting value.
  std::map<std::string, double> f_L;
  using Key = std::pair<std::string, std::uint64_t>;
  std::map<Key, std::map<std::string, const RunResult*>> instances;
  std::vector<std::string> algos;
  for (const auto& r : results) {
    auto it = f_L.try_emplace(r.problem, std::numeric_limits<double>::infinity()).first;
    if (!r.f_history.empty()) it->second = std::min(it->second, r.f_history.back().second);
    instances[{r.problem, r.seed}].try_emplace(r.algorithm, &r);
    if (std::find(algos.begin(), algos.end(), r.algorithm) == algos.end())
      algos.push_back(r.algorithm);
  }

  DataProfile profile;
  profile.tau = tau;
  double denom = static_cast<double>(instances.size());
  for (const auto& algo : algos) {
    std::vector<double> alphas;
    for (const auto& [key, by_algo] : instances) {
      auto it = by_algo.find(algo);
      if (it == by_algo.end())
        throw MissingCoverage("data_profile: no run of " + algo + " on " + key.first +
                              " seed " + std::to_string(key.second));
      const RunResult* r = it->second;
      if (r->f_history.empty()) continue;  // failed run: never solved
      double f0 = r->f_history.front().second;
      for (const auto& [q, f] : r->f_history) {
        if (convergence_test(f, f0, f_L.at(key.first), tau)) {
          alphas.push_back(static_cast<double>(q) / (r->n + 1));
          break;
        }
      }
    }
    std::sort(alphas.begin(), alphas.end());
    ProfileCurve curve;
    curve.algorithm = algo;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (i + 1 < alphas.size() && alphas[i + 1] == alphas[i]) continue;
      curve.points.emplace_back(alphas[i], static_cast<double>(i + 1) / denom);
    }
    profile.curves.push_back(std::move(curve));
  }
  return profile;
}

CompressibilityProfile compressibility_profile(const TestProblem& problem, int num_points,
                                               std::uint64_t seed) {
  if (!problem.gradient)
    throw std::invalid_argument("compressibility_profile: problem has no analytic gradient");
  if (num_points < 1) throw std::invalid_argument("compressibility_profile: need points");

  int n = problem.dim;
  Rng rng(derive_seed(seed, streams::kProfile));
  CompressibilityProfile out;
  out.problem = problem.name;
  out.mean.assign(n, 0.0);
  out.min.assign(n, std::numeric_limits<double>::infinity());
  out.max.assign(n, -std::numeric_limits<double>::infinity());

  double scale = std::sqrt(10.0);
  for (int t = 0; t < num_points; ++t) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = scale * rng.normal();
    Vector mags = problem.gradient(x).cwiseAbs();
    std::sort(mags.data(), mags.data() + n, std::greater<double>());
    for (int i = 0; i < n; ++i) {
      out.mean[i] += mags[i];
      out.min[i] = std::min(out.min[i], mags[i]);
      out.max[i] = std::max(out.max[i], mags[i]);
    }
  }
  for (int i = 0; i < n; ++i) out.mean[i] /= num_points;
  return out;
}

}  // namespace zorofa
