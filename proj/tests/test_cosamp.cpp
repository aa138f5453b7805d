#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "zorofa/cosamp.hpp"
#include "zorofa/rng.hpp"

using namespace zorofa;

namespace {

Vector random_sparse(int n, int s, Rng& rng) {
  Vector v = Vector::Zero(n);
  int placed = 0;
  while (placed < s) {
    int i = static_cast<int>(rng.uniform_int(n));
    if (v[i] != 0.0) continue;
    double mag = 1.0 + rng.uniform01();
    v[i] = rng.rademacher() * mag;
    ++placed;
  }
  return v;
}

// Plain normal-equations solve by Gaussian elimination with partial pivoting,
// as an independent check on the least-squares routine. Only valid for
// well-conditioned full-rank supports.
Vector normal_equations(const Matrix& A, const Vector& y, const std::vector<int>& support) {
  int k = static_cast<int>(support.size());
  Matrix sub(A.rows(), k);
  for (int j = 0; j < k; ++j) sub.col(j) = A.col(support[j]);
  Matrix G = sub.transpose() * sub;
  Vector rhs = sub.transpose() * y;
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(G(r, col)) > std::abs(G(pivot, col))) pivot = r;
    G.row(col).swap(G.row(pivot));
    std::swap(rhs[col], rhs[pivot]);
    for (int r = col + 1; r < k; ++r) {
      double factor = G(r, col) / G(col, col);
      G.row(r) -= factor * G.row(col);
      rhs[r] -= factor * rhs[col];
    }
  }
  Vector b(k);
  for (int r = k - 1; r >= 0; --r) {
    double acc = rhs[r];
    for (int c = r + 1; c < k; ++c) acc -= G(r, c) * b[c];
    b[r] = acc / G(r, r);
  }
  return b;
}

}  // namespace

TEST_SUITE("cosamp") {

TEST_CASE("halting iteration counts at boundary contractions") {
  CHECK(halting_iterations(0.25) == 4);
  CHECK(halting_iterations(0.5) == 3);
  CHECK(halting_iterations(0.4) == 4);
  CHECK(halting_iterations(0.99) == 3);
  CHECK_THROWS_AS(halting_iterations(0.0), std::domain_error);
  CHECK_THROWS_AS(halting_iterations(1.0), std::domain_error);
}

TEST_CASE("top_k picks largest magnitudes, ties to the lower index") {
  Vector u(5);
  u << 1.0, -3.0, 2.0, -2.0, 0.5;
  CHECK(top_k(u, 1) == std::vector<int>{1});
  CHECK(top_k(u, 2) == std::vector<int>{1, 2});   // |2| at index 2 beats |-2| at 3
  CHECK(top_k(u, 3) == std::vector<int>{1, 2, 3});
  CHECK(top_k(u, 5) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(top_k(u, 0).empty());
  CHECK_THROWS_AS(top_k(u, 6), std::invalid_argument);
  CHECK_THROWS_AS(top_k(u, -1), std::invalid_argument);
}

TEST_CASE("dense expands a sparse estimate") {
  SparseEstimate e;
  e.dim = 6;
  e.support = {1, 4};
  e.values = {2.5, -1.0};
  Vector v = e.dense();
  CHECK(v.size() == 6);
  CHECK(v[1] == 2.5);
  CHECK(v[4] == -1.0);
  CHECK(v.lpNorm<1>() == 3.5);
}

TEST_CASE("least squares recovers an overdetermined system") {
  Rng rng(31);
  int rows = 20;
  Matrix A(rows, 6);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < 6; ++j) A(i, j) = rng.normal();
  std::vector<int> support = {0, 2, 5};
  Vector truth(3);
  truth << 1.5, -2.0, 0.75;
  Vector y = A.col(0) * truth[0] + A.col(2) * truth[1] + A.col(5) * truth[2];

  LeastSquaresResult res = least_squares_on_support(A, y, support, 1e-10, 2);
  CHECK_FALSE(res.rank_deficient);
  CHECK((res.coeffs - truth).norm() < 1e-10);

  // residual of a noisy system is orthogonal to the support columns
  Vector noise(rows);
  for (int i = 0; i < rows; ++i) noise[i] = 0.01 * rng.normal();
  res = least_squares_on_support(A, y + noise, support, 1e-10, 2);
  Vector r = y + noise;
  for (int j = 0; j < 3; ++j) r -= res.coeffs[j] * A.col(support[j]);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(A.col(support[j]).dot(r)) < 1e-9);

  // independent route: explicit normal equations give the same coefficients
  Vector alt = normal_equations(A, y + noise, support);
  CHECK((res.coeffs - alt).norm() < 1e-8);
}

TEST_CASE("least squares flags rank deficiency and splits duplicate columns") {
  Matrix A(4, 3);
  A.col(0) << 1, 1, 0, 0;
  A.col(1) << 1, 1, 0, 0;  // duplicate of column 0
  A.col(2) << 0, 0, 1, 1;
  Vector y(4);
  y << 2, 2, 3, 3;
  LeastSquaresResult res = least_squares_on_support(A, y, {0, 1, 2}, 1e-10, 2);
  CHECK(res.rank_deficient);
  // minimum-norm solution shares the weight across the duplicates
  CHECK(res.coeffs[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(res.coeffs[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(res.coeffs[2] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("exact recovery of a sparse vector") {
  Rng rng(41);
  RademacherBank bank(64, 101);
  SensingMatrix Z = sensing_matrix(bank, 40);
  Vector truth = random_sparse(64, 3, rng);
  Vector y = Z.scaled * truth;

  CosampConfig cfg;
  cfg.sparsity = 3;
  cfg.iterations = 10;
  CosampDiagnostics diag;
  SparseEstimate est = cosamp(Z, y, cfg, &diag);

  CHECK((est.dense() - truth).norm() < 1e-10);
  CHECK(est.support.size() == 3);
  CHECK(diag.residual_norm < 1e-10 * y.norm());
  CHECK(diag.iterations_run <= 10);
  for (size_t i = 1; i < est.support.size(); ++i)
    CHECK(est.support[i - 1] < est.support[i]);
}

TEST_CASE("early exit makes extra iterations harmless") {
  Rng rng(43);
  RademacherBank bank(48, 7);
  SensingMatrix Z = sensing_matrix(bank, 30);
  Vector truth = random_sparse(48, 4, rng);
  Vector y = Z.scaled * truth;

  CosampConfig a, b;
  a.sparsity = b.sparsity = 4;
  a.iterations = 10;
  b.iterations = 50;
  SparseEstimate ea = cosamp(Z, y, a);
  SparseEstimate eb = cosamp(Z, y, b);
  CHECK(ea.support == eb.support);
  CHECK(ea.values == eb.values);
}

TEST_CASE("zero measurements give the zero estimate") {
  RademacherBank bank(32, 2);
  SensingMatrix Z = sensing_matrix(bank, 16);
  CosampConfig cfg;
  cfg.sparsity = 4;
  cfg.iterations = 5;
  SparseEstimate est = cosamp(Z, Vector::Zero(16), cfg);
  CHECK(est.dense().norm() == 0.0);
}

TEST_CASE("argument validation") {
  RademacherBank bank(10, 2);
  SensingMatrix Z = sensing_matrix(bank, 6);
  CosampConfig cfg;
  cfg.sparsity = 6;  // 2s > n
  CHECK_THROWS_AS(cosamp(Z, Vector::Zero(6), cfg), std::invalid_argument);
  cfg.sparsity = 0;
  CHECK_THROWS_AS(cosamp(Z, Vector::Zero(6), cfg), std::invalid_argument);
  cfg.sparsity = 2;
  cfg.iterations = 0;
  CHECK_THROWS_AS(cosamp(Z, Vector::Zero(6), cfg), std::invalid_argument);
  cfg.iterations = 1;
  CHECK_THROWS_AS(cosamp(Z, Vector::Zero(5), cfg), std::invalid_argument);
}

TEST_CASE("recovery is deterministic") {
  Rng rng(47);
  RademacherBank bank(40, 11);
  SensingMatrix Z = sensing_matrix(bank, 24);
  Vector truth = random_sparse(40, 3, rng);
  Vector noise(24);
  for (int i = 0; i < 24; ++i) noise[i] = 1e-3 * rng.normal();
  Vector y = Z.scaled * truth + noise;
  CosampConfig cfg;
  cfg.sparsity = 3;
  cfg.iterations = 8;
  SparseEstimate a = cosamp(Z, y, cfg);
  SparseEstimate b = cosamp(Z, y, cfg);
  CHECK(a.support == b.support);
  CHECK(a.values == b.values);
}

TEST_CASE("noise in the measurements perturbs the estimate proportionally") {
  Rng rng(53);
  RademacherBank bank(80, 13);
  SensingMatrix Z = sensing_matrix(bank, 50);
  Vector truth = random_sparse(80, 5, rng);
  double noise_norm = 1e-3;
  Vector noise(50);
  for (int i = 0; i < 50; ++i) noise[i] = rng.normal();
  noise *= noise_norm / noise.norm();
  Vector y = Z.scaled * truth + noise;

  CosampConfig cfg;
  cfg.sparsity = 5;
  cfg.iterations = 12;
  SparseEstimate est = cosamp(Z, y, cfg);
  CHECK((est.dense() - truth).norm() < 25.0 * noise_norm);
}

}  // TEST_SUITE
