#pragma once

#include "zorofa/cosamp.hpp"
#include "zorofa/oracle.hpp"
#include "zorofa/sensing.hpp"

namespace zorofa {

enum class GradPath { CS, FD };

struct GradEstimate {
  Vector g;
  GradPath path = GradPath::CS;
  double h = 0.0;              // finite-difference step actually used
  long long queries = 0;       // oracle calls spent on this estimate
  bool precision_warning = false;  // h so small the differences lose precision
  bool rank_deficient = false;
};

// ceil(b * s * ln n), the measurement count for sparsity level s.
long long measurement_count(double b, long long s, int n);

// Sparse gradient estimate from m = ceil(b s ln n) compressed measurements at
// step h = theta * eps / (11 n sigma). Throws GateViolation if m >= n; that
// case belongs to fd_gradient.
GradEstimate cs_gradient(CountingOracle& oracle, const Vector& x, double f_x,
                         const RademacherBank& bank, long long s_j, double sigma_j,
                         double theta, double eps, double b);

// Dense coordinate-wise forward differences at h = 2 theta eps / (sigma sqrt(n));
// n oracle calls.
GradEstimate fd_gradient(CountingOracle& oracle, const Vector& x, double f_x,
                         double sigma_j, double theta, double eps);

// Coordinate forward differences at a caller-chosen step; n oracle calls.
Vector forward_difference(CountingOracle& oracle, const Vector& x, double f_x, double h);

// s(theta, p) = [ (4/theta) (13.2 / sqrt(2/p - 1) + 11 / (1/p - 1)) ]^(2p/(2-p)),
// the sparsity level at which a p-compressible gradient is recovered to
// relative accuracy theta. Domain: theta in (0, 1), p in (0, 1).
double effective_sparsity(double theta, double p);

// Tail-bound check for p-compressibility: with g_s the best s-term
// approximation and q = ||g||_p,
//   ||g - g_s||_2 <= q * s^(1/2 - 1/p)  and  ||g - g_s||_1 <= q * s^(1 - 1/p).
struct TailBounds {
  double l2_ratio = 0.0;  // lhs / rhs, so <= 1 means the bound holds
  double l1_ratio = 0.0;
  bool l2_ok = false;
  bool l1_ok = false;
};

TailBounds compressibility_tail_bounds(const Vector& grad, int s, double p);

}  // namespace zorofa
