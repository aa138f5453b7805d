#pragma once

#include <vector>

#include "zorofa/sensing.hpp"

namespace zorofa {

struct SparseEstimate {
  std::vector<int> support;    // ascending
  std::vector<double> values;  // aligned with support
  int dim = 0;

  Vector dense() const;
};

struct CosampConfig {
  int sparsity = 1;
  int iterations = 1;
  double ls_tolerance = 1e-10;
  int ls_refine_steps = 2;
};

// Smallest l >= 0 with 2^l >= 4/theta, i.e. ceil(log2(4/theta)). Computed in
// integer arithmetic; the floating form ceil(log(theta/4)/log(0.5)) rounds
// the wrong way at theta values like 0.25.
int halting_iterations(double theta);

// Indices of the k largest-magnitude entries of u, ties broken toward the
// lower index; returned ascending.
std::vector<int> top_k(const Vector& u, int k);

struct LeastSquaresResult {
  Vector coeffs;  // aligned with the support passed in
  bool rank_deficient = false;
};

// Minimize ||A_S b - y|| over the columns S of A; minimum-norm solution when
// the submatrix is rank deficient, with a few iterative-refinement passes.
LeastSquaresResult least_squares_on_support(const Matrix& A, const Vector& y,
                                            const std::vector<int>& support,
                                            double tolerance, int refine_steps);

struct CosampDiagnostics {
  int iterations_run = 0;
  bool rank_deficient = false;
  double residual_norm = 0.0;
};

// Compressive sampling matching pursuit: proxy from Z^T residual, support
// merge, least squares, prune to the s largest. Requires 2*sparsity <= dim.
SparseEstimate cosamp(const SensingMatrix& Z, const Vector& y,
                      const CosampConfig& config, CosampDiagnostics* diag = nullptr);

}  // namespace zorofa
