#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "zorofa/errors.hpp"
#include "zorofa/gradest.hpp"
#include "zorofa/rng.hpp"

using namespace zorofa;

namespace {

CountingOracle linear_oracle(const Vector& c) {
  int n = static_cast<int>(c.size());
  return CountingOracle(Objective{n, [c](const Vector& x) { return c.dot(x); }, {}, {}});
}

}  // namespace

TEST_SUITE("gradest") {

TEST_CASE("measurement counts") {
  CHECK(measurement_count(1.0, 20, 1000) == 139);  // ceil(20 ln 1000)
  CHECK(measurement_count(4.0, 8, 256) == 178);    // ceil(32 ln 256)
  CHECK(measurement_count(1.0, 1, 3) == 2);
  CHECK_THROWS_AS(measurement_count(0.0, 5, 100), std::invalid_argument);
  CHECK_THROWS_AS(measurement_count(1.0, 0, 100), std::invalid_argument);
  CHECK_THROWS_AS(measurement_count(1.0, 5, 1), std::invalid_argument);
}

TEST_CASE("compressed step size formula") {
  // h = theta eps / (11 n sigma) at theta=.25, eps=.01, n=100, sigma=1
  Vector c = Vector::Zero(100);
  c[3] = 1.0;
  CountingOracle oracle = linear_oracle(c);
  RademacherBank bank(100, 5);
  Vector x = Vector::Zero(100);
  GradEstimate est = cs_gradient(oracle, x, 0.0, bank, 4, 1.0, 0.25, 0.01, 1.0);
  CHECK(est.h == doctest::Approx(2.2727272727272727e-6).epsilon(1e-15));
  CHECK(est.path == GradPath::CS);
}

TEST_CASE("forward-difference step size formula") {
  // h = 2 theta eps / (sigma sqrt(n)) at theta=.25, eps=.01, n=100, sigma=1
  Vector c = Vector::Ones(100);
  CountingOracle oracle = linear_oracle(c);
  Vector x = Vector::Zero(100);
  GradEstimate est = fd_gradient(oracle, x, 0.0, 1.0, 0.25, 0.01);
  CHECK(est.h == doctest::Approx(5e-4).epsilon(1e-15));
  CHECK(est.path == GradPath::FD);
}

TEST_CASE("compressed path recovers a sparse linear gradient exactly") {
  int n = 128;
  Rng rng(61);
  Vector c = Vector::Zero(n);
  for (int i : {7, 30, 77, 101}) c[i] = 1.0 + rng.uniform01();
  CountingOracle oracle = linear_oracle(c);
  RademacherBank bank(n, 19);
  Rng xr(62);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = xr.normal();
  double f_x = oracle.evaluate(x);
  auto before = oracle.query_count();

  GradEstimate est = cs_gradient(oracle, x, f_x, bank, 4, 2.0, 0.25, 1e-3, 1.0);
  CHECK(est.queries == measurement_count(1.0, 4, n));
  CHECK(oracle.query_count() - before == est.queries);
  CHECK((est.g - c).norm() < 1e-8 * c.norm());
  CHECK_FALSE(est.rank_deficient);
}

TEST_CASE("compressed path refuses dense measurement counts") {
  int n = 10;  // s=4: ceil(4 ln 10) = 10 >= n
  CountingOracle oracle = linear_oracle(Vector::Ones(n));
  RademacherBank bank(n, 1);
  CHECK_THROWS_AS(
      cs_gradient(oracle, Vector::Zero(n), 0.0, bank, 4, 1.0, 0.25, 1e-3, 1.0),
      GateViolation);
}

TEST_CASE("dense path is exact on linear functions") {
  int n = 40;
  Rng rng(67);
  Vector c(n);
  for (int i = 0; i < n; ++i) c[i] = rng.normal();
  CountingOracle oracle = linear_oracle(c);
  Vector x = Vector::Zero(n);
  auto before = oracle.query_count();
  GradEstimate est = fd_gradient(oracle, x, 0.0, 1.5, 0.3, 1e-2);
  CHECK(est.queries == n);
  CHECK(oracle.query_count() - before == n);
  CHECK((est.g - c).norm() < 1e-9 * c.norm());
}

TEST_CASE("caller-chosen forward differences") {
  int n = 6;
  Vector c(n);
  c << 1, -2, 3, -4, 5, -6;
  CountingOracle oracle = linear_oracle(c);
  Vector x = Vector::Ones(n);
  double f_x = oracle.evaluate(x);
  Vector g = forward_difference(oracle, x, f_x, 1e-5);
  CHECK((g - c).norm() < 1e-8);
  CHECK(oracle.query_count() == 1 + n);
}

TEST_CASE("estimation arguments are validated") {
  int n = 64;
  CountingOracle oracle = linear_oracle(Vector::Ones(n));
  RademacherBank bank(n, 1);
  Vector x = Vector::Zero(n);
  CHECK_THROWS_AS(cs_gradient(oracle, x, 0.0, bank, 2, 0.0, 0.25, 1e-3, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cs_gradient(oracle, x, 0.0, bank, 2, 1.0, 0.6, 1e-3, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cs_gradient(oracle, x, 0.0, bank, 2, 1.0, 0.25, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(fd_gradient(oracle, x, 0.0, -1.0, 0.25, 1e-3), std::invalid_argument);
}

TEST_CASE("effective sparsity pins and monotonicity") {
  CHECK(effective_sparsity(0.25, 0.5) == doctest::Approx(44.6083015662674345).epsilon(1e-12));
  // tighter accuracy demands more coefficients
  CHECK(effective_sparsity(0.1, 0.5) > effective_sparsity(0.25, 0.5));
  // faster-decaying gradients need fewer coefficients
  CHECK(effective_sparsity(0.25, 0.3) < effective_sparsity(0.25, 0.5));
  CHECK_THROWS_AS(effective_sparsity(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(effective_sparsity(0.25, 1.0), std::domain_error);
}

TEST_CASE("tail bounds hold on arbitrary vectors") {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 20 + static_cast<int>(rng.uniform_int(60));
    Vector g(n);
    for (int i = 0; i < n; ++i) g[i] = rng.normal() * std::exp(3.0 * rng.uniform01());
    int s = 1 + static_cast<int>(rng.uniform_int(n - 1));
    TailBounds tb = compressibility_tail_bounds(g, s, 0.5);
    CHECK(tb.l2_ok);
    CHECK(tb.l1_ok);
    CHECK(tb.l2_ratio <= 1.0 + 1e-12);
    CHECK(tb.l1_ratio <= 1.0 + 1e-12);
  }
}

TEST_CASE("tail bounds vanish for exactly sparse vectors") {
  Vector g = Vector::Zero(30);
  g[4] = 2.0;
  g[17] = -1.0;
  TailBounds tb = compressibility_tail_bounds(g, 2, 0.5);
  CHECK(tb.l2_ratio == 0.0);
  CHECK(tb.l1_ratio == 0.0);
}

TEST_CASE("precision warning flags steps below the noise floor") {
  int n = 9;  // s=1: ceil(ln 9) = 3 < 9
  Vector c = Vector::Zero(n);
  c[2] = 1.0;
  Objective obj{n, [c](const Vector& x) { return 1.0e8 + c.dot(x); }, {}, {}};
  CountingOracle oracle(obj);
  RademacherBank bank(n, 1);
  Vector x = Vector::Zero(n);
  double f_x = oracle.evaluate(x);
  // huge sigma drives h to ~1e-15 while f sits at 1e8: differences are noise
  GradEstimate tiny = cs_gradient(oracle, x, f_x, bank, 1, 1.0e9, 0.25, 1e-3, 1.0);
  CHECK(tiny.precision_warning);
  // a sane sigma leaves plenty of signal
  GradEstimate sane = cs_gradient(oracle, x, f_x, bank, 1, 1.0, 0.25, 1.0, 1.0);
  CHECK_FALSE(sane.precision_warning);
}

}  // TEST_SUITE
