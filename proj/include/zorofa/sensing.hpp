#pragma once

#include <cstdint>

#include "zorofa/linalg.hpp"
#include "zorofa/oracle.hpp"

namespace zorofa {

// Bank of n Rademacher directions, sampled once per run and shared by every
// gradient estimate in that run. Each row is generated from its own derived
// stream, so eager and on-demand materialization give identical entries.
class RademacherBank {
 public:
  enum class Storage { Auto, Eager, Lazy };

  RademacherBank() = default;
  RademacherBank(int n, std::uint64_t seed, Storage storage = Storage::Auto);

  int size() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  bool eager() const { return eager_; }

  // Row i as a vector of +-1 entries (no scaling).
  Vector direction(int i) const;

  // Content hash over all n^2 sign entries; equal values mean equal banks.
  std::uint64_t fingerprint() const;

 private:
  Vector generate_row(int i) const;

  int n_ = 0;
  std::uint64_t seed_ = 0;
  bool eager_ = false;
  Matrix rows_;
};

// First m bank rows, scaled by 1/sqrt(m).
struct SensingMatrix {
  Matrix scaled;
  double scale = 0.0;

  int rows() const { return static_cast<int>(scaled.rows()); }
  int cols() const { return static_cast<int>(scaled.cols()); }
};

SensingMatrix sensing_matrix(const RademacherBank& bank, int m);

// Measurement vector y_i = (f(x + h z_i) - f(x)) / (sqrt(m) h) against the
// first m unscaled directions z_i. Spends exactly m oracle calls; f_x is the
// cached value at x and is not re-queried.
Vector measure(CountingOracle& oracle, const Vector& x, double h, int m,
               const RademacherBank& bank, double f_x);

// c0(a) = a^2/4 - a^3/6
double c0(double a);

// c1(delta, n, s) = 4 (1 + (1 + ln(12/delta)) / ln(n/(4s))) / c0(delta/2)
double c1(double delta, double n, double s);

// gamma(delta, b, n, s) = c0(delta/2) - (4/b) (1 + (1 + ln(12/delta)) / ln(n/(4s)));
// zero exactly at b = c1(delta, n, s), positive for larger b.
double rip_gamma(double delta, double b, double n, double s);

// Empirical isometry probe: worst |  ||Z v||^2 - 1 | over random s-sparse
// unit vectors v.
struct RipEstimate {
  int sparsity = 0;
  double delta = 0.0;
  int trials = 0;
};

RipEstimate empirical_rip_check(const SensingMatrix& Z, int sparsity, int trials,
                                std::uint64_t seed);

}  // namespace zorofa
