#include "zorofa/cosamp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace zorofa {

Vector SparseEstimate::dense() const {
  Vector v = Vector::Zero(dim);
  for (std::size_t i = 0; i < support.size(); ++i) v[support[i]] = values[i];
  return v;
}

int halting_iterations(double theta) {
  if (theta <= 0.0 || theta >= 1.0) throw std::domain_error("halting_iterations: theta in (0,1)");
  int l = 0;
  while (std::ldexp(1.0, l) < 4.0 / theta) ++l;
  return l;
}

std::vector<int> top_k(const Vector& u, int k) {
  int n = static_cast<int>(u.size());
  if (k < 0 || k > n) throw std::invalid_argument("top_k: k out of range");
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto better = [&u](int a, int b) {
    double ua = std::abs(u[a]);
    double ub = std::abs(u[b]);
    if (ua != ub) return ua > ub;
    return a < b;
  };
  std::nth_element(idx.begin(), idx.begin() + std::max(k - 1, 0), idx.end(), better);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

LeastSquaresResult least_squares_on_support(const Matrix& A, const Vector& y,
                                            const std::vector<int>& support,
                                            double tolerance, int refine_steps) {
  if (support.empty()) throw std::invalid_argument("least squares: empty support");
  Matrix sub(A.rows(), support.size());
  for (std::size_t i = 0; i < support.size(); ++i) sub.col(i) = A.col(support[i]);

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(sub);
  cod.setThreshold(tolerance);
  LeastSquaresResult out;
  out.rank_deficient = cod.rank() < static_cast<Eigen::Index>(support.size());
  out.coeffs = cod.solve(y);
  for (int step = 0; step < refine_steps; ++step) {
    Vector r = y - sub * out.coeffs;
    if (r.norm() <= tolerance * y.norm()) break;
    out.coeffs += cod.solve(r);
  }
  return out;
}

SparseEstimate cosamp(const SensingMatrix& Z, const Vector& y, const CosampConfig& config,
                      CosampDiagnostics* diag) {
  int n = Z.cols();
  int m = Z.rows();
  int s = config.sparsity;
  if (s < 1) throw std::invalid_argument("cosamp: sparsity must be positive");
  if (2 * s > n) throw std::invalid_argument("cosamp: need 2 * sparsity <= dim");
  if (config.iterations < 1) throw std::invalid_argument("cosamp: need at least one iteration");
  if (y.size() != m) throw std::invalid_argument("cosamp: measurement size mismatch");

  SparseEstimate est;
  est.dim = n;
  Vector r = y;
  double y_norm = y.norm();
  CosampDiagnostics local;

  for (int it = 0; it < config.iterations; ++it) {
    if (r.norm() <= 1e-14 * y_norm) break;
    ++local.iterations_run;

    Vector proxy = Z.scaled.transpose() * r;
    std::vector<int> merged = top_k(proxy, 2 * s);
    merged.insert(merged.end(), est.support.begin(), est.support.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    LeastSquaresResult ls = least_squares_on_support(Z.scaled, y, merged,
                                                     config.ls_tolerance,
                                                     config.ls_refine_steps);
    local.rank_deficient = local.rank_deficient || ls.rank_deficient;

    // Keep the s largest coefficients; ties go to the lower column index.
    std::vector<int> order(merged.size());
    std::iota(order.begin(), order.end(), 0);
    auto better = [&](int a, int b) {
      double ca = std::abs(ls.coeffs[a]);
      double cb = std::abs(ls.coeffs[b]);
      if (ca != cb) return ca > cb;
      return merged[a] < merged[b];
    };
    int keep = std::min<int>(s, static_cast<int>(merged.size()));
    std::nth_element(order.begin(), order.begin() + std::max(keep - 1, 0), order.end(), better);
    order.resize(keep);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return merged[a] < merged[b]; });

    est.support.clear();
    est.values.clear();
    for (int pos : order) {
      est.support.push_back(merged[pos]);
      est.values.push_back(ls.coeffs[pos]);
    }

    r = y;
    for (std::size_t i = 0; i < est.support.size(); ++i)
      r -= est.values[i] * Z.scaled.col(est.support[i]);
  }

  local.residual_norm = r.norm();
  if (diag) *diag = local;
  return est;
}

}  // namespace zorofa
