#include "zorofa/sensing.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "zorofa/errors.hpp"
#include "zorofa/rng.hpp"

namespace zorofa {

namespace {
// Eager storage for an n x n sign bank costs 8 n^2 bytes; beyond this many
// rows we regenerate rows on demand instead.
constexpr int kEagerLimit = 2048;
}  // namespace

RademacherBank::RademacherBank(int n, std::uint64_t seed, Storage storage)
    : n_(n), seed_(seed) {
  if (n < 1) throw std::invalid_argument("direction bank: n must be positive");
  eager_ = storage == Storage::Eager || (storage == Storage::Auto && n <= kEagerLimit);
  if (eager_) {
    rows_.resize(n, n);
    for (int i = 0; i < n; ++i) rows_.row(i) = generate_row(i).transpose();
  }
}

Vector RademacherBank::generate_row(int i) const {
  Rng rng(derive_seed(seed_, static_cast<std::uint64_t>(i)));
  Vector row(n_);
  for (int j = 0; j < n_; ++j) row[j] = rng.rademacher();
  return row;
}

Vector RademacherBank::direction(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("direction bank: row " + std::to_string(i));
  if (eager_) return rows_.row(i).transpose();
  return generate_row(i);
}

std::uint64_t RademacherBank::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (int i = 0; i < n_; ++i) {
    Vector row = direction(i);
    for (int j = 0; j < n_; ++j) {
      h ^= row[j] > 0 ? 0x2bULL : 0x2dULL;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

SensingMatrix sensing_matrix(const RademacherBank& bank, int m) {
  if (m < 1) throw std::invalid_argument("sensing_matrix: m must be positive");
  if (m > bank.size())
    throw std::invalid_argument("sensing_matrix: bank holds only " +
                                std::to_string(bank.size()) + " directions");
  SensingMatrix Z;
  Z.scale = 1.0 / std::sqrt(static_cast<double>(m));
  Z.scaled.resize(m, bank.size());
  for (int i = 0; i < m; ++i) Z.scaled.row(i) = Z.scale * bank.direction(i).transpose();
  return Z;
}

Vector measure(CountingOracle& oracle, const Vector& x, double h, int m,
               const RademacherBank& bank, double f_x) {
  if (h <= 0.0 || !std::isfinite(h)) throw std::invalid_argument("measure: bad step h");
  if (m < 1 || m > bank.size()) throw std::invalid_argument("measure: bad measurement count");
  if (x.size() != bank.size()) throw DimensionMismatch("measure: x does not match bank");
  double denom = std::sqrt(static_cast<double>(m)) * h;
  Vector y(m);
  for (int i = 0; i < m; ++i) {
    Vector probe = x + h * bank.direction(i);
    y[i] = (oracle.evaluate(probe) - f_x) / denom;
  }
  return y;
}

double c0(double a) {
  if (a <= 0.0) throw std::domain_error("c0: argument must be positive");
  return a * a / 4.0 - a * a * a / 6.0;
}

namespace {
double log_ratio_term(double delta, double n, double s) {
  if (delta <= 0.0 || delta >= 1.0) throw std::domain_error("delta must lie in (0, 1)");
  if (s < 1.0 || n <= 4.0 * s) throw std::domain_error("need n > 4 s >= 4");
  return 1.0 + (1.0 + std::log(12.0 / delta)) / std::log(n / (4.0 * s));
}
}  // namespace

double c1(double delta, double n, double s) {
  return 4.0 * log_ratio_term(delta, n, s) / c0(delta / 2.0);
}

double rip_gamma(double delta, double b, double n, double s) {
  if (b <= 0.0) throw std::domain_error("rip_gamma: b must be positive");
  return c0(delta / 2.0) - 4.0 / b * log_ratio_term(delta, n, s);
}

RipEstimate empirical_rip_check(const SensingMatrix& Z, int sparsity, int trials,
                                std::uint64_t seed) {
  int n = Z.cols();
  if (sparsity < 1 || sparsity > n) throw std::invalid_argument("rip check: bad sparsity");
  if (trials < 1) throw std::invalid_argument("rip check: need at least one trial");

  Rng rng(derive_seed(seed, streams::kRip));
  std::vector<int> pool(n);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::iota(pool.begin(), pool.end(), 0);
    Vector v = Vector::Zero(n);
    double norm_sq = 0.0;
    for (int i = 0; i < sparsity; ++i) {
      std::uint64_t pick = rng.uniform_int(static_cast<std::uint64_t>(n - i));
      std::swap(pool[i], pool[i + pick]);
      double g = rng.normal();
      v[pool[i]] = g;
      norm_sq += g * g;
    }
    v /= std::sqrt(norm_sq);
    double image = (Z.scaled * v).squaredNorm();
    worst = std::max(worst, std::abs(image - 1.0));
  }
  return {sparsity, worst, trials};
}

}  // namespace zorofa
