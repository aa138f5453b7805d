#include "zorofa/gradest.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "zorofa/errors.hpp"

namespace zorofa {

long long measurement_count(double b, long long s, int n) {
  if (b <= 0.0) throw std::invalid_argument("measurement_count: b must be positive");
  if (s < 1) throw std::invalid_argument("measurement_count: s must be positive");
  if (n < 2) throw std::invalid_argument("measurement_count: n must be at least 2");
  return static_cast<long long>(
      std::ceil(b * static_cast<double>(s) * std::log(static_cast<double>(n))));
}

namespace {

void check_estimation_args(const Vector& x, int n, double sigma, double theta, double eps) {
  if (x.size() != n) throw DimensionMismatch("gradient estimate: x has wrong size");
  if (sigma <= 0.0 || !std::isfinite(sigma))
    throw std::invalid_argument("gradient estimate: sigma must be positive");
  if (theta <= 0.0 || theta >= 0.5)
    throw std::invalid_argument("gradient estimate: theta must lie in (0, 0.5)");
  if (eps <= 0.0) throw std::invalid_argument("gradient estimate: eps must be positive");
}

// Differences of size h * ||g|| within a few hundred ulps of f(x) are mostly
// rounding noise; surface that as a diagnostic flag.
bool precision_suspect(double h, double f_x, const Vector& g) {
  double scale = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
  return h * scale < 1e3 * DBL_EPSILON * std::abs(f_x);
}

}  // namespace

GradEstimate cs_gradient(CountingOracle& oracle, const Vector& x, double f_x,
                         const RademacherBank& bank, long long s_j, double sigma_j,
                         double theta, double eps, double b) {
  int n = bank.size();
  check_estimation_args(x, n, sigma_j, theta, eps);
  long long m = measurement_count(b, s_j, n);
  if (m >= n)
    throw GateViolation("cs_gradient: measurement count " + std::to_string(m) +
                        " reaches n = " + std::to_string(n));

  double h = theta * eps / (11.0 * n * sigma_j);
  SensingMatrix Z = sensing_matrix(bank, static_cast<int>(m));
  Vector y = measure(oracle, x, h, static_cast<int>(m), bank, f_x);

  CosampConfig cc;
  cc.sparsity = static_cast<int>(s_j);
  cc.iterations = halting_iterations(theta);
  CosampDiagnostics cd;
  SparseEstimate est = cosamp(Z, y, cc, &cd);

  GradEstimate out;
  out.g = est.dense();
  out.path = GradPath::CS;
  out.h = h;
  out.queries = m;
  out.rank_deficient = cd.rank_deficient;
  out.precision_warning = precision_suspect(h, f_x, out.g);
  return out;
}

Vector forward_difference(CountingOracle& oracle, const Vector& x, double f_x, double h) {
  if (h <= 0.0 || !std::isfinite(h)) throw std::invalid_argument("forward_difference: bad h");
  int n = static_cast<int>(x.size());
  Vector g(n);
  Vector probe = x;
  for (int i = 0; i < n; ++i) {
    double saved = probe[i];
    probe[i] = saved + h;
    g[i] = (oracle.evaluate(probe) - f_x) / h;
    probe[i] = saved;
  }
  return g;
}

GradEstimate fd_gradient(CountingOracle& oracle, const Vector& x, double f_x,
                         double sigma_j, double theta, double eps) {
  int n = static_cast<int>(x.size());
  check_estimation_args(x, n, sigma_j, theta, eps);

  double h = 2.0 * theta * eps / (sigma_j * std::sqrt(static_cast<double>(n)));
  GradEstimate out;
  out.g = forward_difference(oracle, x, f_x, h);
  out.path = GradPath::FD;
  out.h = h;
  out.queries = n;
  out.precision_warning = precision_suspect(h, f_x, out.g);
  return out;
}

double effective_sparsity(double theta, double p) {
  if (theta <= 0.0 || theta >= 1.0) throw std::domain_error("effective_sparsity: theta in (0,1)");
  if (p <= 0.0 || p >= 1.0) throw std::domain_error("effective_sparsity: p in (0,1)");
  double inner = 4.0 / theta *
                 (13.2 / std::sqrt(2.0 / p - 1.0) + 11.0 / (1.0 / p - 1.0));
  return std::pow(inner, 2.0 * p / (2.0 - p));
}

TailBounds compressibility_tail_bounds(const Vector& grad, int s, double p) {
  int n = static_cast<int>(grad.size());
  if (s < 1 || s > n) throw std::invalid_argument("tail bounds: bad s");
  if (p <= 0.0 || p >= 1.0) throw std::domain_error("tail bounds: p in (0,1)");

  double q = 0.0;
  for (int i = 0; i < n; ++i) q += std::pow(std::abs(grad[i]), p);
  q = std::pow(q, 1.0 / p);

  Vector tail = grad;
  for (int i : top_k(grad, s)) tail[i] = 0.0;

  double sd = static_cast<double>(s);
  TailBounds tb;
  double rhs2 = q * std::pow(sd, 0.5 - 1.0 / p);
  double rhs1 = q * std::pow(sd, 1.0 - 1.0 / p);
  tb.l2_ratio = rhs2 > 0.0 ? tail.norm() / rhs2 : (tail.norm() > 0.0 ? HUGE_VAL : 0.0);
  tb.l1_ratio = rhs1 > 0.0 ? tail.lpNorm<1>() / rhs1 : (tail.lpNorm<1>() > 0.0 ? HUGE_VAL : 0.0);
  tb.l2_ok = tb.l2_ratio <= 1.0 + 1e-12;
  tb.l1_ok = tb.l1_ratio <= 1.0 + 1e-12;
  return tb;
}

}  // namespace zorofa
