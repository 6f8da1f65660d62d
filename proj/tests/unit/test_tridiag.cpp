#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cpburgers/oracles.hpp"
#include "cpburgers/tridiag.hpp"

using cpb::Tridiagonal;

namespace {
std::vector<double> to_dense(const Tridiagonal& m) {
  const std::size_t n = m.size();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = m.diag[i];
    if (i + 1 < n) {
      a[(i + 1) * n + i] = m.lower[i];
      a[i * n + i + 1] = m.upper[i];
    }
  }
  return a;
}

double rel_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num = std::max(num, std::abs(x[i] - y[i]));
    den = std::max(den, std::abs(y[i]));
  }
  return num / den;
}
} // namespace

TEST(Tridiagonal, DominantSystemsMatchDense) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> size(1, 64);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng);
    Tridiagonal m(n);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      m.lower[i] = u(rng);
      m.upper[i] = u(rng);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double off = (i > 0 ? std::abs(m.lower[i - 1]) : 0.0) + (i + 1 < n ? std::abs(m.upper[i]) : 0.0);
      m.diag[i] = (off + 0.05 + std::abs(u(rng))) * (u(rng) < 0 ? -1.0 : 1.0);
      rhs[i] = u(rng);
    }
    ASSERT_TRUE(m.diagonally_dominant(0.0));
    const auto x = cpb::solve_tridiagonal(m, rhs);
    const auto ref = cpb::oracle::dense_solve(to_dense(m), rhs);
    EXPECT_LE(rel_diff(x, ref), 1e-11) << "trial " << trial;
  }
}

TEST(Tridiagonal, IndefiniteSystemUsesPivoting) {
  // Zero leading diagonal defeats plain elimination.
  Tridiagonal m(3);
  m.diag = {0.0, 1.0, 2.0};
  m.lower = {1.0, 1.0};
  m.upper = {3.0, 1.0};
  const std::vector<double> rhs{3.0, 3.0, 3.0};
  const auto x = cpb::solve_tridiagonal(m, rhs);
  const auto ref = cpb::oracle::dense_solve(to_dense(m), rhs);
  EXPECT_LE(rel_diff(x, ref), 1e-14);
}

TEST(Tridiagonal, SingularMatrixIsReported) {
  Tridiagonal m(2);
  m.diag = {1.0, 1.0};
  m.lower = {1.0};
  m.upper = {1.0};
  EXPECT_THROW(cpb::solve_tridiagonal(m, std::vector<double>{1.0, 2.0}), cpb::NumericalError);
}

TEST(Tridiagonal, DimensionMismatch) {
  Tridiagonal m(3);
  m.diag = {1, 1, 1};
  EXPECT_THROW(cpb::solve_tridiagonal(m, std::vector<double>{1.0, 2.0}), cpb::ValidationError);
}
