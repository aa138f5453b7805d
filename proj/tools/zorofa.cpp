#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "zorofa/bench.hpp"
#include "zorofa/csv.hpp"
#include "zorofa/errors.hpp"
#include "zorofa/optimizers.hpp"
#include "zorofa/testfns.hpp"

namespace fs = std::filesystem;
using namespace zorofa;

namespace {

int default_jobs() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ' ';
    if constexpr (std::is_same_v<T, double>)
      out << format_double(values[i]);
    else
      out << values[i];
  }
  return out.str();
}

void write_resolved_config(const fs::path& outdir, const std::string& content) {
  fs::create_directories(outdir);
  std::ofstream out(outdir / "resolved-config.ini");
  if (!out) throw std::runtime_error("cannot write resolved config in " + outdir.string());
  out << content;
}

int report_failures(const std::vector<RunResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    if (r.failed) {
      ++failures;
      std::cerr << "run failed: " << r.problem << " / " << r.algorithm << " / seed " << r.seed
                << ": " << r.error << "\n";
    }
  }
  return failures;
}

RunResult wrap_run(const std::string& problem, const std::string& algorithm,
                   std::uint64_t seed, int n, Trajectory traj) {
  RunResult rr;
  rr.problem = problem;
  rr.algorithm = algorithm;
  rr.seed = seed;
  rr.n = n;
  rr.trajectory = std::move(traj);
  rr.f_history = best_so_far_history(rr.trajectory);
  return rr;
}

// Dimension-derived defaults for the adaptive algorithm on the classic test
// set: s0 = 0.1 n rounded (at least 1), sigma0 = 1 / (s0 ln n).
struct MghDerived {
  long long s0;
  double sigma0;
};

MghDerived mgh_derived(int n, double s0_frac) {
  long long s0 = std::max<long long>(1, std::llround(s0_frac * n));
  return {s0, 1.0 / (static_cast<double>(s0) * std::log(static_cast<double>(n)))};
}

struct SparseOpts {
  int n = 1000;
  int s = 30;
  double lambda = 8.0;
  std::vector<std::string> problems = {"max_s_squared", "nesterov"};
  std::vector<std::uint64_t> seeds = {1};
  double budget_mult = 350.0;
  std::string out = "out";
  int jobs = default_jobs();
  std::string config;
  long long fa_s0 = 20;
  double fa_sigma0 = 2.5;
  double fa_eps = 1e-5;
  double fa_theta = 0.25;
  double fa_b = 1.0;
  long long zoro_s = 30;
  double zoro_step = 0.125;
  double zoro_radius = 1e-4;
  double zoro_b = 1.0;
};

std::string sparse_config(const SparseOpts& o) {
  std::ostringstream c;
  c << "n=" << o.n << "\ns=" << o.s << "\nlambda=" << format_double(o.lambda)
    << "\nproblems=" << join(o.problems) << "\nseeds=" << join(o.seeds)
    << "\nbudget-mult=" << format_double(o.budget_mult) << "\nfa-s0=" << o.fa_s0
    << "\nfa-sigma0=" << format_double(o.fa_sigma0) << "\nfa-eps=" << format_double(o.fa_eps)
    << "\nfa-theta=" << format_double(o.fa_theta) << "\nfa-b=" << format_double(o.fa_b)
    << "\nzoro-s=" << o.zoro_s << "\nzoro-step=" << format_double(o.zoro_step)
    << "\nzoro-radius=" << format_double(o.zoro_radius) << "\nzoro-b=" << format_double(o.zoro_b)
    << "\nout=" << o.out << "\njobs=" << o.jobs << "\n";
  return c.str();
}

int run_sparse(const SparseOpts& o) {
  std::vector<ProblemSpec> problems;
  for (const auto& name : o.problems) {
    if (name != "max_s_squared" && name != "nesterov")
      throw UnknownProblem("sparse-bench: unknown problem '" + name + "'");
    problems.push_back({name, [&o, name](std::uint64_t seed) {
                          ProblemParams pp;
                          pp.n = o.n;
                          pp.s = o.s;
                          pp.lambda = o.lambda;
                          pp.seed = seed;
                          return make_problem(name, pp);
                        }});
  }

  std::vector<AlgorithmSpec> algorithms;
  algorithms.push_back({"zoro_fa", [&o](const TestProblem& p, long long budget, std::uint64_t seed) {
                          ZoroFaConfig c;
                          c.s0 = o.fa_s0;
                          c.sigma0 = o.fa_sigma0;
                          c.b = o.fa_b;
                          c.theta = o.fa_theta;
                          c.eps = o.fa_eps;
                          c.budget = budget;
                          c.seed = seed;
                          return zoro_fa(p, c);
                        }});
  algorithms.push_back({"zoro", [&o](const TestProblem& p, long long budget, std::uint64_t seed) {
                          ZoroFixedConfig c;
                          c.s = o.zoro_s;
                          c.step_size = o.zoro_step;
                          c.sampling_radius = o.zoro_radius;
                          c.b = o.zoro_b;
                          c.budget = budget;
                          c.seed = seed;
                          return zoro_fixed(p, c);
                        }});

  fs::path outdir(o.out);
  write_resolved_config(outdir, sparse_config(o));
  auto results = run_suite(problems, algorithms, o.seeds, o.budget_mult, o.jobs);
  write_trajectory_csv((outdir / "trajectories.csv").string(), results);
  return report_failures(results) ? 1 : 0;
}

struct MghOpts {
  std::vector<std::string> problems = {"rosex",           "trig",
                                       "powell_singular_ext", "broyden_tridiag",
                                       "discrete_boundary",   "penalty1"};
  std::vector<int> ns = {100, 500, 1000};
  std::vector<int> scales = {0, 1};
  std::vector<double> taus = {1e-1, 1e-2, 1e-3};
  std::vector<std::uint64_t> seeds = {1};
  double budget_mult = 350.0;
  std::string out = "out";
  int jobs = default_jobs();
  std::string config;
  double fa_s0_frac = 0.1;
  double fa_eps = 0.01;
  double fa_theta = 0.25;
  double fa_b = 1.0;
  double zoro_step_scale = 0.005;
  double zoro_radius = 5e-4;
  double zoro_b = 1.0;
};

std::string mgh_config(const MghOpts& o) {
  std::ostringstream c;
  c << "problems=" << join(o.problems) << "\nn=" << join(o.ns) << "\nscales=" << join(o.scales)
    << "\ntau=" << join(o.taus) << "\nseeds=" << join(o.seeds)
    << "\nbudget-mult=" << format_double(o.budget_mult)
    << "\nfa-s0-frac=" << format_double(o.fa_s0_frac) << "\nfa-eps=" << format_double(o.fa_eps)
    << "\nfa-theta=" << format_double(o.fa_theta) << "\nfa-b=" << format_double(o.fa_b)
    << "\nzoro-step-scale=" << format_double(o.zoro_step_scale)
    << "\nzoro-radius=" << format_double(o.zoro_radius) << "\nzoro-b=" << format_double(o.zoro_b)
    << "\nout=" << o.out << "\njobs=" << o.jobs << "\n";
  return c.str();
}

int run_mgh(const MghOpts& o) {
  std::vector<ProblemSpec> problems;
  for (const auto& name : o.problems) {
    for (int n : o.ns) {
      for (int scale : o.scales) {
        std::string label = name + "_n" + std::to_string(n) + (scale ? "_x10" : "");
        problems.push_back({label, [name, n, scale](std::uint64_t) {
                              TestProblem p = mgh_problem(name, n, scale);
                              p.name = name + "_n" + std::to_string(n) + (scale ? "_x10" : "");
                              return p;
                            }});
      }
    }
  }

  std::vector<AlgorithmSpec> algorithms;
  algorithms.push_back({"zoro_fa", [&o](const TestProblem& p, long long budget, std::uint64_t seed) {
                          MghDerived d = mgh_derived(p.dim, o.fa_s0_frac);
                          ZoroFaConfig c;
                          c.s0 = d.s0;
                          c.sigma0 = d.sigma0;
                          c.b = o.fa_b;
                          c.theta = o.fa_theta;
                          c.eps = o.fa_eps;
                          c.budget = budget;
                          c.seed = seed;
                          return zoro_fa(p, c);
                        }});
  algorithms.push_back({"zoro", [&o](const TestProblem& p, long long budget, std::uint64_t seed) {
                          MghDerived d = mgh_derived(p.dim, o.fa_s0_frac);
                          ZoroFixedConfig c;
                          c.s = d.s0;
                          c.step_size = o.zoro_step_scale /
                                        (static_cast<double>(d.s0) * std::log(p.dim));
                          c.sampling_radius = o.zoro_radius;
                          c.b = o.zoro_b;
                          c.budget = budget;
                          c.seed = seed;
                          return zoro_fixed(p, c);
                        }});

  fs::path outdir(o.out);
  write_resolved_config(outdir, mgh_config(o));
  auto results = run_suite(problems, algorithms, o.seeds, o.budget_mult, o.jobs);
  write_trajectory_csv((outdir / "trajectories.csv").string(), results);

  std::vector<DataProfile> profiles;
  for (double tau : o.taus) profiles.push_back(data_profile(results, tau));
  write_profile_csv((outdir / "data_profiles.csv").string(), profiles);
  return report_failures(results) ? 1 : 0;
}

struct GradProfileOpts {
  std::string problem = "rosex";
  int n = 500;
  int s = 30;
  double lambda = 8.0;
  int scale = 0;
  int points = 20;
  std::uint64_t seed = 1;
  bool with_run = false;
  double budget_mult = 350.0;
  double fa_s0_frac = 0.1;
  double fa_eps = 0.01;
  double fa_theta = 0.25;
  double fa_b = 1.0;
  std::string out = "out";
  std::string config;
};

std::string grad_config(const GradProfileOpts& o) {
  std::ostringstream c;
  c << "problem=" << o.problem << "\nn=" << o.n << "\ns=" << o.s
    << "\nlambda=" << format_double(o.lambda) << "\nscale=" << o.scale
    << "\npoints=" << o.points << "\nseed=" << o.seed
    << "\nwith-run=" << (o.with_run ? "true" : "false")
    << "\nbudget-mult=" << format_double(o.budget_mult)
    << "\nfa-s0-frac=" << format_double(o.fa_s0_frac) << "\nfa-eps=" << format_double(o.fa_eps)
    << "\nfa-theta=" << format_double(o.fa_theta) << "\nfa-b=" << format_double(o.fa_b)
    << "\nout=" << o.out << "\n";
  return c.str();
}

int run_grad_profile(const GradProfileOpts& o) {
  ProblemParams pp;
  pp.n = o.n;
  pp.s = o.s;
  pp.lambda = o.lambda;
  pp.x0_scale = o.scale;
  pp.seed = o.seed;
  TestProblem p = make_problem(o.problem, pp);

  fs::path outdir(o.out);
  write_resolved_config(outdir, grad_config(o));
  CompressibilityProfile prof = compressibility_profile(p, o.points, o.seed);
  write_compressibility_csv((outdir / "compressibility.csv").string(), {prof});

  if (o.with_run) {
    MghDerived d = mgh_derived(p.dim, o.fa_s0_frac);
    ZoroFaConfig c;
    c.s0 = d.s0;
    c.sigma0 = d.sigma0;
    c.b = o.fa_b;
    c.theta = o.fa_theta;
    c.eps = o.fa_eps;
    c.budget = std::llround(o.budget_mult * (p.dim + 1));
    c.seed = o.seed;
    std::vector<RunResult> results;
    results.push_back(wrap_run(p.name, "zoro_fa", o.seed, p.dim, zoro_fa(p, c)));
    write_trajectory_csv((outdir / "trajectories.csv").string(), results);
    return report_failures(results) ? 1 : 0;
  }
  return 0;
}

struct SingleRunOpts {
  std::string problem;
  std::string algorithm = "zoro_fa";
  int n = 1000;
  int s = 30;
  double lambda = 8.0;
  int scale = 0;
  std::uint64_t seed = 1;
  double budget_mult = 350.0;
  long long s0 = 20;
  double sigma0 = 2.5;
  double eps = 1e-5;
  double theta = 0.25;
  double b = 1.0;
  double step = 0.125;
  double radius = 1e-4;
  std::string out = "out";
  std::string config;
};

std::string single_config(const SingleRunOpts& o) {
  std::ostringstream c;
  c << "problem=" << o.problem << "\nalgorithm=" << o.algorithm << "\nn=" << o.n
    << "\ns=" << o.s << "\nlambda=" << format_double(o.lambda) << "\nscale=" << o.scale
    << "\nseed=" << o.seed << "\nbudget-mult=" << format_double(o.budget_mult)
    << "\ns0=" << o.s0 << "\nsigma0=" << format_double(o.sigma0)
    << "\neps=" << format_double(o.eps) << "\ntheta=" << format_double(o.theta)
    << "\nb=" << format_double(o.b) << "\nstep=" << format_double(o.step)
    << "\nradius=" << format_double(o.radius) << "\nout=" << o.out << "\n";
  return c.str();
}

int run_single(const SingleRunOpts& o) {
  if (o.problem.empty()) throw std::invalid_argument("single-run: --problem is required");
  ProblemParams pp;
  pp.n = o.n;
  pp.s = o.s;
  pp.lambda = o.lambda;
  pp.x0_scale = o.scale;
  pp.seed = o.seed;
  TestProblem p = make_problem(o.problem, pp);
  long long budget = std::llround(o.budget_mult * (p.dim + 1));

  Trajectory traj;
  if (o.algorithm == "zoro_fa") {
    ZoroFaConfig c;
    c.s0 = o.s0;
    c.sigma0 = o.sigma0;
    c.b = o.b;
    c.theta = o.theta;
    c.eps = o.eps;
    c.budget = budget;
    c.seed = o.seed;
    traj = zoro_fa(p, c);
  } else if (o.algorithm == "zoro") {
    ZoroFixedConfig c;
    c.s = o.s0;
    c.step_size = o.step;
    c.sampling_radius = o.radius;
    c.b = o.b;
    c.budget = budget;
    c.seed = o.seed;
    traj = zoro_fixed(p, c);
  } else {
    FdDescentConfig c;
    c.step_size = o.step;
    c.sampling_radius = o.radius;
    c.budget = budget;
    traj = fd_descent(p, c);
  }

  fs::path outdir(o.out);
  write_resolved_config(outdir, single_config(o));
  std::vector<RunResult> results;
  results.push_back(wrap_run(p.name, o.algorithm, o.seed, p.dim, std::move(traj)));
  write_trajectory_csv((outdir / "trajectories.csv").string(), results);
  return report_failures(results) ? 1 : 0;
}

void add_out_jobs(CLI::App* sub, std::string& out, int* jobs, std::string& config) {
  sub->add_option("--out", out, "output directory")
      ->envname("ZOROFA_OUT")
      ->capture_default_str();
  if (jobs)
    sub->add_option("--jobs", *jobs, "parallel runs")->capture_default_str();
  sub->add_option("--config", config, "read defaults from a key=value file; flags win");
}

// All four subcommands with their option tables, built fresh for each parse
// pass (the second pass re-parses with values expanded from --config).
struct CliApp {
  CLI::App app{"zeroth-order optimization benchmarks"};
  CLI::App* sparse;
  CLI::App* mgh;
  CLI::App* grad;
  CLI::App* single;
  SparseOpts sp;
  MghOpts mg;
  GradProfileOpts gp;
  SingleRunOpts sr;

  CliApp() {
    app.require_subcommand(1);

    sparse = app.add_subcommand("sparse-bench",
                                "adaptive vs fixed-sparsity runs on the sparse synthetic functions");
    sparse->add_option("--n", sp.n, "dimension")->capture_default_str();
    sparse->add_option("--s", sp.s, "target sparsity of the objective")->capture_default_str();
    sparse->add_option("--lambda", sp.lambda, "chain function scale")->capture_default_str();
    sparse->add_option("--problems", sp.problems, "problems to run")->capture_default_str();
    sparse->add_option("--seeds,--seed", sp.seeds, "trial seeds")->capture_default_str();
    sparse->add_option("--budget-mult", sp.budget_mult, "query budget as a multiple of n+1")
        ->capture_default_str();
    sparse->add_option("--fa-s0", sp.fa_s0, "initial sparsity estimate")->capture_default_str();
    sparse->add_option("--fa-sigma0", sp.fa_sigma0, "initial smoothness estimate")->capture_default_str();
    sparse->add_option("--fa-eps", sp.fa_eps, "target gradient accuracy")->capture_default_str();
    sparse->add_option("--fa-theta", sp.fa_theta, "relative gradient accuracy")->capture_default_str();
    sparse->add_option("--fa-b", sp.fa_b, "measurement oversampling factor")->capture_default_str();
    sparse->add_option("--zoro-s", sp.zoro_s, "fixed sparsity of the baseline")->capture_default_str();
    sparse->add_option("--zoro-step", sp.zoro_step, "baseline step size")->capture_default_str();
    sparse->add_option("--zoro-radius", sp.zoro_radius, "baseline sampling radius")->capture_default_str();
    sparse->add_option("--zoro-b", sp.zoro_b, "baseline oversampling factor")->capture_default_str();
    add_out_jobs(sparse, sp.out, &sp.jobs, sp.config);

    mgh = app.add_subcommand("mgh-bench", "data profiles over the classic test set");
    mgh->add_option("--problems", mg.problems, "functions to run")->capture_default_str();
    mgh->add_option("--n", mg.ns, "dimensions")->capture_default_str();
    mgh->add_option("--scales", mg.scales, "powers of ten applied to the standard starts")
        ->capture_default_str();
    mgh->add_option("--tau,--taus", mg.taus, "convergence tolerances")->capture_default_str();
    mgh->add_option("--seeds,--seed", mg.seeds, "trial seeds")->capture_default_str();
    mgh->add_option("--budget-mult", mg.budget_mult, "query budget as a multiple of n+1")
        ->capture_default_str();
    mgh->add_option("--fa-s0-frac", mg.fa_s0_frac, "initial sparsity as a fraction of n")
        ->capture_default_str();
    mgh->add_option("--fa-eps", mg.fa_eps, "target gradient accuracy")->capture_default_str();
    mgh->add_option("--fa-theta", mg.fa_theta, "relative gradient accuracy")->capture_default_str();
    mgh->add_option("--fa-b", mg.fa_b, "measurement oversampling factor")->capture_default_str();
    mgh->add_option("--zoro-step-scale", mg.zoro_step_scale,
                    "baseline step numerator; step = scale / (s0 ln n)")
        ->capture_default_str();
    mgh->add_option("--zoro-radius", mg.zoro_radius, "baseline sampling radius")->capture_default_str();
    mgh->add_option("--zoro-b", mg.zoro_b, "baseline oversampling factor")->capture_default_str();
    add_out_jobs(mgh, mg.out, &mg.jobs, mg.config);

    grad = app.add_subcommand("grad-profile", "gradient compressibility statistics");
    grad->add_option("--problem", gp.problem, "problem name")->capture_default_str();
    grad->add_option("--n", gp.n, "dimension")->capture_default_str();
    grad->add_option("--s", gp.s, "sparsity parameter for the synthetic problems")
        ->capture_default_str();
    grad->add_option("--lambda", gp.lambda, "chain function scale")->capture_default_str();
    grad->add_option("--scale", gp.scale, "power of ten applied to the standard start")
        ->capture_default_str();
    grad->add_option("--points", gp.points, "sample points")->capture_default_str();
    grad->add_option("--seed", gp.seed, "sampling seed")->capture_default_str();
    grad->add_flag("--with-run", gp.with_run, "also run the adaptive algorithm and emit its trajectory")
        ->capture_default_str();
    grad->add_option("--budget-mult", gp.budget_mult, "query budget for --with-run")
        ->capture_default_str();
    grad->add_option("--fa-s0-frac", gp.fa_s0_frac, "initial sparsity as a fraction of n")
        ->capture_default_str();
    grad->add_option("--fa-eps", gp.fa_eps, "target gradient accuracy")->capture_default_str();
    grad->add_option("--fa-theta", gp.fa_theta, "relative gradient accuracy")->capture_default_str();
    grad->add_option("--fa-b", gp.fa_b, "measurement oversampling factor")->capture_default_str();
    add_out_jobs(grad, gp.out, nullptr, gp.config);

    single = app.add_subcommand("single-run", "one problem, one algorithm, one seed");
    single->add_option("--problem", sr.problem, "problem name");
    single->add_option("--algorithm", sr.algorithm, "zoro_fa, zoro, or fd")
        ->check(CLI::IsMember({"zoro_fa", "zoro", "fd"}))
        ->capture_default_str();
    single->add_option("--n", sr.n, "dimension")->capture_default_str();
    single->add_option("--s", sr.s, "sparsity parameter for the synthetic problems")
        ->capture_default_str();
    single->add_option("--lambda", sr.lambda, "chain function scale")->capture_default_str();
    single->add_option("--scale", sr.scale, "power of ten applied to the standard start")
        ->capture_default_str();
    single->add_option("--seed", sr.seed, "run seed")->capture_default_str();
    single->add_option("--budget-mult", sr.budget_mult, "query budget as a multiple of n+1")
        ->capture_default_str();
    single->add_option("--s0", sr.s0, "initial (or fixed) sparsity")->capture_default_str();
    single->add_option("--sigma0", sr.sigma0, "initial smoothness estimate")->capture_default_str();
    single->add_option("--eps", sr.eps, "target gradient accuracy")->capture_default_str();
    single->add_option("--theta", sr.theta, "relative gradient accuracy")->capture_default_str();
    single->add_option("--b", sr.b, "measurement oversampling factor")->capture_default_str();
    single->add_option("--step", sr.step, "baseline step size")->capture_default_str();
    single->add_option("--radius", sr.radius, "baseline sampling radius")->capture_default_str();
    add_out_jobs(single, sr.out, nullptr, sr.config);
  }

  CLI::App* active() {
    for (CLI::App* sub : {sparse, mgh, grad, single})
      if (sub->parsed()) return sub;
    return nullptr;
  }

  const std::string& active_config() {
    if (sparse->parsed()) return sp.config;
    if (mgh->parsed()) return mg.config;
    if (grad->parsed()) return gp.config;
    return sr.config;
  }

  int dispatch() {
    if (sparse->parsed()) return run_sparse(sp);
    if (mgh->parsed()) return run_mgh(mg);
    if (grad->parsed()) return run_grad_profile(gp);
    if (single->parsed()) return run_single(sr);
    return 0;
  }
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Turn key=value lines into command-line tokens for the options the user did
// not pass explicitly, so explicit flags always win. Unknown keys are errors.
std::vector<std::string> config_tokens(const std::string& file, CLI::App* sub) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot read config file: " + file);
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(file + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key == "config") continue;
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt)
      throw std::invalid_argument(file + ":" + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
    if (opt->count() > 0) continue;  // set on the command line or from the environment
    if (opt->get_expected_max() > 1) {
      tokens.push_back("--" + key);
      std::istringstream parts(value);
      std::string piece;
      int pieces = 0;
      while (parts >> piece) {
        tokens.push_back(piece);
        ++pieces;
      }
      if (pieces == 0)
        throw std::invalid_argument(file + ":" + std::to_string(lineno) + ": empty value");
    } else {
      tokens.push_back("--" + key + "=" + value);
    }
  }
  return tokens;
}

}  // namespace

int main(int argc, char** argv) {
  CliApp cli;
  try {
    cli.app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = cli.app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string& config = cli.active_config();
    if (!config.empty()) {
      // Re-parse with the config expanded into tokens; the user's own flags
      // (already counted on the first pass) are excluded from the expansion
      // and repeated verbatim, so they take precedence.
      std::vector<std::string> args;
      args.push_back(cli.active()->get_name());
      for (const auto& token : config_tokens(config, cli.active())) args.push_back(token);
      for (int i = 2; i < argc; ++i) args.push_back(argv[i]);

      std::vector<const char*> argv2;
      argv2.push_back(argv[0]);
      for (const auto& a : args) argv2.push_back(a.c_str());

      CliApp second;
      try {
        second.app.parse(static_cast<int>(argv2.size()), argv2.data());
      } catch (const CLI::ParseError& e) {
        int code = second.app.exit(e);
        return code == 0 ? 0 : 2;
      }
      return second.dispatch();
    }
    return cli.dispatch();
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
