#include "zorofa/testfns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zorofa/cosamp.hpp"
#include "zorofa/errors.hpp"
#include "zorofa/rng.hpp"

namespace zorofa {

namespace {

void check_dim(const Vector& x, int n, const char* name) {
  if (x.size() != n) throw DimensionMismatch(std::string(name) + ": wrong input size");
}

Vector scaled_start(const Vector& base, int x0_scale) {
  if (x0_scale == 0) return base;
  return base * std::pow(10.0, x0_scale);
}

}  // namespace

TestProblem max_s_squared(int n, int s) {
  if (n < 1) throw IncompatibleDimension("max_s_squared: n must be positive");
  if (s < 1 || s > n) throw std::invalid_argument("max_s_squared: need 1 <= s <= n");

  TestProblem p;
  p.name = "max_s_squared";
  p.dim = n;
  p.x0 = Vector::Zero(n);
  p.objective.dim = n;
  p.objective.known_flow = 0.0;
  p.objective.known_lipschitz = 2.0;
  p.objective.fn = [n, s](const Vector& x) {
    check_dim(x, n, "max_s_squared");
    std::vector<double> sq(n);
    for (int i = 0; i < n; ++i) sq[i] = x[i] * x[i];
    std::nth_element(sq.begin(), sq.begin() + (s - 1), sq.end(), std::greater<double>());
    return std::accumulate(sq.begin(), sq.begin() + s, 0.0);
  };
  p.gradient = [n, s](const Vector& x) {
    check_dim(x, n, "max_s_squared");
    Vector g = Vector::Zero(n);
    for (int i : top_k(x, s)) g[i] = 2.0 * x[i];
    return g;
  };
  return p;
}

TestProblem nesterov_chain(int n, int s, double lambda) {
  if (n < 1) throw IncompatibleDimension("nesterov_chain: n must be positive");
  if (s < 1 || s > n) throw std::invalid_argument("nesterov_chain: need 1 <= s <= n");
  if (lambda <= 0.0) throw std::invalid_argument("nesterov_chain: lambda must be positive");

  TestProblem p;
  p.name = "nesterov";
  p.dim = n;
  p.x0 = Vector::Zero(n);
  p.objective.dim = n;
  p.objective.known_flow = lambda / 8.0 * (1.0 / (s + 1) - 1.0);
  p.objective.known_lipschitz = lambda / 2.0;
  p.objective.fn = [n, s, lambda](const Vector& x) {
    check_dim(x, n, "nesterov_chain");
    double quad = x[0] * x[0] + x[s - 1] * x[s - 1];
    for (int i = 0; i + 1 < s; ++i) {
      double d = x[i] - x[i + 1];
      quad += d * d;
    }
    return lambda / 8.0 * quad - lambda / 4.0 * x[0];
  };
  p.gradient = [n, s, lambda](const Vector& x) {
    check_dim(x, n, "nesterov_chain");
    Vector g = Vector::Zero(n);
    double c = lambda / 4.0;
    g[0] = c * x[0] - c;
    g[s - 1] += c * x[s - 1];
    for (int i = 0; i + 1 < s; ++i) {
      double d = x[i] - x[i + 1];
      g[i] += c * d;
      g[i + 1] -= c * d;
    }
    return g;
  };
  return p;
}

Vector sparse_benchmark_start(int n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, streams::kStart));
  Vector x(n);
  double scale = std::sqrt(10.0);
  for (int i = 0; i < n; ++i) x[i] = scale * rng.normal();
  return x;
}

namespace {

TestProblem mgh_rosex(int n, int x0_scale) {
  if (n < 2 || n % 2 != 0) throw IncompatibleDimension("rosex: n must be even and >= 2");
  TestProblem p;
  p.name = "rosex";
  p.dim = n;
  Vector x0(n);
  for (int i = 0; i < n; i += 2) {
    x0[i] = -1.2;
    x0[i + 1] = 1.0;
  }
  p.x0 = scaled_start(x0, x0_scale);
  p.objective.dim = n;
  p.objective.known_flow = 0.0;
  p.objective.fn = [n](const Vector& x) {
    check_dim(x, n, "rosex");
    double f = 0.0;
    for (int i = 0; i < n; i += 2) {
      double a = x[i + 1] - x[i] * x[i];
      double b = 1.0 - x[i];
      f += 100.0 * a * a + b * b;
    }
    return f;
  };
  p.gradient = [n](const Vector& x) {
    check_dim(x, n, "rosex");
    Vector g(n);
    for (int i = 0; i < n; i += 2) {
      double a = x[i + 1] - x[i] * x[i];
      g[i] = -400.0 * x[i] * a - 2.0 * (1.0 - x[i]);
      g[i + 1] = 200.0 * a;
    }
    return g;
  };
  return p;
}

TestProblem mgh_trig(int n, int x0_scale) {
  if (n < 1) throw IncompatibleDimension("trig: n must be positive");
  TestProblem p;
  p.name = "trig";
  p.dim = n;
  p.x0 = scaled_start(Vector::Constant(n, 1.0 / n), x0_scale);
  p.objective.dim = n;
  p.objective.known_flow = 0.0;
  auto residuals = [n](const Vector& x, std::vector<double>& r) {
    double cos_sum = 0.0;
    for (int j = 0; j < n; ++j) cos_sum += std::cos(x[j]);
    for (int i = 0; i < n; ++i)
      r[i] = n - cos_sum + (i + 1) * (1.0 - std::cos(x[i])) - std::sin(x[i]);
  };
  p.objective.fn = [n, residuals](const Vector& x) {
    check_dim(x, n, "trig");
    std::vector<double> r(n);
    residuals(x, r);
    double f = 0.0;
    for (double v : r) f += v * v;
    return f;
  };
  p.gradient = [n, residuals](const Vector& x) {
    check_dim(x, n, "trig");
    std::vector<double> r(n);
    residuals(x, r);
    double r_sum = std::accumulate(r.begin(), r.end(), 0.0);
    Vector g(n);
    for (int j = 0; j < n; ++j) {
      double sj = std::sin(x[j]);
      g[j] = 2.0 * (r_sum * sj + r[j] * ((j + 1) * sj - std::cos(x[j])));
    }
    return g;
  };
  return p;
}

TestProblem mgh_powell(int n, int x0_scale) {
  if (n < 4 || n % 4 != 0) throw IncompatibleDimension("powell_singular_ext: n must be a multiple of 4");
  TestProblem p;
  p.name = "powell_singular_ext";
  p.dim = n;
  Vector x0(n);
  for (int i = 0; i < n; i += 4) {
    x0[i] = 3.0;
    x0[i + 1] = -1.0;
    x0[i + 2] = 0.0;
    x0[i + 3] = 1.0;
  }
  p.x0 = scaled_start(x0, x0_scale);
  p.objective.dim = n;
  p.objective.known_flow = 0.0;
  p.objective.fn = [n](const Vector& x) {
    check_dim(x, n, "powell_singular_ext");
    double f = 0.0;
    for (int i = 0; i < n; i += 4) {
      double a = x[i] + 10.0 * x[i + 1];
      double b = x[i + 2] - x[i + 3];
      double c = x[i + 1] - 2.0 * x[i + 2];
      double d = x[i] - x[i + 3];
      f += a * a + 5.0 * b * b + c * c * c * c + 10.0 * d * d * d * d;
    }
    return f;
  };
  p.gradient = [n](const Vector& x) {
    check_dim(x, n, "powell_singular_ext");
    Vector g(n);
    for (int i = 0; i < n; i += 4) {
      double a = x[i] + 10.0 * x[i + 1];
      double b = x[i + 2] - x[i + 3];
      double c = x[i + 1] - 2.0 * x[i + 2];
      double d = x[i] - x[i + 3];
      g[i] = 2.0 * a + 40.0 * d * d * d;
      g[i + 1] = 20.0 * a + 4.0 * c * c * c;
      g[i + 2] = 10.0 * b - 8.0 * c * c * c;
      g[i + 3] = -10.0 * b - 40.0 * d * d * d;
    }
    return g;
  };
  return p;
}

TestProblem mgh_broyden(int n, int x0_scale) {
  if (n < 1) throw IncompatibleDimension("broyden_tridiag: n must be positive");
  TestProblem p;
  p.name = "broyden_tridiag";
  p.dim = n;
  p.x0 = scaled_start(Vector::Constant(n, -1.0), x0_scale);
  p.objective.dim = n;
  p.objective.known_flow = 0.0;
  auto residuals = [n](const Vector& x, std::vector<double>& r) {
    for (int i = 0; i < n; ++i) {
      double left = i > 0 ? x[i - 1] : 0.0;
      double right = i + 1 < n ? x[i + 1] : 0.0;
      r[i] = (3.0 - 2.0 * x[i]) * x[i] - left - 2.0 * right + 1.0;
    }
  };
  p.objective.fn = [n, residuals](const Vector& x) {
    check_dim(x, n, "broyden_tridiag");
    std::vector<double> r(n);
    residuals(x, r);
    double f = 0.0;
    for (double v : r) f += v * v;
    return f;
  };
  p.gradient = [n, residuals](const Vector& x) {
    check_dim(x, n, "broyden_tridiag");
    std::vector<double> r(n);
    residuals(x, r);
    Vector g(n);
    for (int j = 0; j < n; ++j) {
      double v = r[j] * (3.0 - 4.0 * x[j]);
      if (j + 1 < n) v -= r[j + 1];
      if (j > 0) v -= 2.0 * r[j - 1];
      g[j] = 2.0 * v;
    }
    return g;
  };
  return p;
}

TestProblem mgh_discrete_boundary(int n, int x0_scale) {
  if (n < 1) throw IncompatibleDimension("discrete_boundary: n must be positive");
  TestProblem p;
  p.name = "discrete_boundary";
  p.dim = n;
  double h = 1.0 / (n + 1);
  Vector x0(n);
  for (int j = 0; j < n; ++j) {
    double t = (j + 1) * h;
    x0[j] = t * (t - 1.0);
  }
  p.x0 = scaled_start(x0, x0_scale);
  p.objective.dim = n;
  p.objective.known_flow = 0.0;
  auto residuals = [n, h](const Vector& x, std::vector<double>& r) {
    for (int i = 0; i < n; ++i) {
      double left = i > 0 ? x[i - 1] : 0.0;
      double right = i + 1 < n ? x[i + 1] : 0.0;
      double u = x[i] + (i + 1) * h + 1.0;
      r[i] = 2.0 * x[i] - left - right + h * h * u * u * u / 2.0;
    }
  };
  p.objective.fn = [n, residuals](const Vector& x) {
    check_dim(x, n, "discrete_boundary");
    std::vector<double> r(n);
    residuals(x, r);
    double f = 0.0;
    for (double v : r) f += v * v;
    return f;
  };
  p.gradient = [n, h, residuals](const Vector& x) {
    check_dim(x, n, "discrete_boundary");
    std::vector<double> r(n);
    residuals(x, r);
    Vector g(n);
    for (int j = 0; j < n; ++j) {
      double u = x[j] + (j + 1) * h + 1.0;
      double v = r[j] * (2.0 + 1.5 * h * h * u * u);
      if (j > 0) v -= r[j - 1];
      if (j + 1 < n) v -= r[j + 1];
      g[j] = 2.0 * v;
    }
    return g;
  };
  return p;
}

TestProblem mgh_penalty1(int n, int x0_scale) {
  if (n < 1) throw IncompatibleDimension("penalty1: n must be positive");
  TestProblem p;
  p.name = "penalty1";
  p.dim = n;
  Vector x0(n);
  for (int j = 0; j < n; ++j) x0[j] = j + 1;
  p.x0 = scaled_start(x0, x0_scale);
  p.objective.dim = n;
  if (n == 4) p.objective.known_flow = 2.24997e-5;
  if (n == 10) p.objective.known_flow = 7.08765e-5;
  const double a = 1e-5;
  p.objective.fn = [n, a](const Vector& x) {
    check_dim(x, n, "penalty1");
    double f = 0.0;
    double sq = 0.0;
    for (int j = 0; j < n; ++j) {
      double d = x[j] - 1.0;
      f += a * d * d;
      sq += x[j] * x[j];
    }
    double t = sq - 0.25;
    return f + t * t;
  };
  p.gradient = [n, a](const Vector& x) {
    check_dim(x, n, "penalty1");
    double sq = x.squaredNorm();
    double t = sq - 0.25;
    Vector g(n);
    for (int j = 0; j < n; ++j) g[j] = 2.0 * a * (x[j] - 1.0) + 4.0 * x[j] * t;
    return g;
  };
  return p;
}

}  // namespace

TestProblem mgh_problem(const std::string& name, int n, int x0_scale) {
  TestProblem p;
  if (name == "rosex") p = mgh_rosex(n, x0_scale);
  else if (name == "trig") p = mgh_trig(n, x0_scale);
  else if (name == "powell_singular_ext") p = mgh_powell(n, x0_scale);
  else if (name == "broyden_tridiag") p = mgh_broyden(n, x0_scale);
  else if (name == "discrete_boundary") p = mgh_discrete_boundary(n, x0_scale);
  else if (name == "penalty1") p = mgh_penalty1(n, x0_scale);
  else throw UnknownProblem("mgh_problem: no function named '" + name + "'");
  return p;
}

TestProblem make_problem(const std::string& name, const ProblemParams& params) {
  if (name == "max_s_squared" || name == "nesterov") {
    TestProblem p = name == "nesterov"
                        ? nesterov_chain(params.n, params.s, params.lambda)
                        : max_s_squared(params.n, params.s);
    p.x0 = sparse_benchmark_start(params.n, params.seed);
    return p;
  }
  return mgh_problem(name, params.n, params.x0_scale);
}

std::vector<std::string> problem_names() {
  return {"max_s_squared", "nesterov",          "rosex",
          "trig",          "powell_singular_ext", "broyden_tridiag",
          "discrete_boundary", "penalty1"};
}

}  // namespace zorofa
