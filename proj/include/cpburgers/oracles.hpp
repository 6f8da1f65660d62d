#pragma once

// Independent reference computations used by the verification suites and the
// tests. Nothing here shares code paths with the routines it checks.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cpburgers/cpkernel.hpp"
#include "cpburgers/discretization.hpp"

namespace cpb::oracle {

/// Dense Gaussian elimination with partial pivoting; a is row-major n x n.
inline std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  if (a.size() != n * n) throw std::invalid_argument("dense_solve: dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0.0) throw std::runtime_error("dense_solve: singular");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }
  return x;
}

/// Classical Caputo L1 weight (n^{1-alpha} - (n-1)^{1-alpha}) / Gamma(2-alpha).
inline double caputo_l1_weight(std::size_t n, double alpha) {
  const double p = 1.0 - alpha;
  const double dn = static_cast<double>(n);
  const double diff = n == 1 ? 1.0 : std::pow(dn, p) * -std::expm1(p * std::log1p(-1.0 / dn));
  return diff / std::tgamma(2.0 - alpha);
}

/// Caputo L1 derivative written as a sum over increments:
///   tau^{-alpha} sum_{j=0}^{k-1} b_{k-j} (u^{j+1} - u^j)
inline double caputo_l1_increments(std::span<const double> u, double tau, double alpha) {
  const std::size_t k = u.size() - 1;
  double acc = 0.0;
  for (std::size_t j = 0; j < k; ++j) acc += caputo_l1_weight(k - j, alpha) * (u[j + 1] - u[j]);
  return acc / std::pow(tau, alpha);
}

/// F(n) = n^{1-alpha} E_{rho,2-alpha}^{-gamma}(omega t_n^rho), whose
/// increments are the weights.
inline double weight_primitive(const CpParams& cp, double tau, std::size_t n) {
  if (n == 0) return 0.0;
  const double dn = static_cast<double>(n);
  return std::pow(dn, 1.0 - cp.alpha) * cp.kernel_factor(2.0 - cp.alpha, dn * tau);
}

/// Left side minus right side of the discrete positivity inequality
///   sum_k [a_1 U_k - sum_{j<k} (a_{k-j} - a_{k-j+1}) U_j - a_k U_0] U_k
///     >= (a_N / 2) sum_k U_k^2 - (F(N) / 2) U_0^2
/// for U = (U_0..U_N). Nonnegative when the inequality holds.
inline double positivity_gap(std::span<const double> u, const WeightSequence& w) {
  const std::size_t n = u.size() - 1;
  const auto a = [&](std::size_t i) { return w.a(i); };
  double lhs = 0.0;
  double squares = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double bracket = a(1) * u[k] - a(k) * u[0];
    for (std::size_t j = 1; j < k; ++j) bracket -= (a(k - j) - a(k - j + 1)) * u[j];
    lhs += bracket * u[k];
    squares += u[k] * u[k];
  }
  const double primitive = weight_primitive(w.params(), w.tau(), n);
  const double rhs = 0.5 * a(n) * squares - 0.5 * primitive * u[0] * u[0];
  return lhs - rhs;
}

/// Right side of the a-priori bound
///   sum_k ||u^k||_inf^2 <= F(N) L / (8 mu) ||u^0||_h^2 + mu L / (8 a_N) sum_k ||f^k||_h^2
inline double stability_bound(const WeightSequence& w, const SpaceGrid& grid, const StateVector& u0,
                              std::span<const StateVector> sources) {
  const std::size_t n = w.size();
  const double primitive = weight_primitive(w.params(), w.tau(), n);
  const double l = grid.length();
  double f_sum = 0.0;
  for (const auto& f : sources) f_sum += inner_product_h(f, f, grid);
  const double u0_sq = inner_product_h(u0, u0, grid);
  return primitive * l / (8.0 * w.mu()) * u0_sq + w.mu() * l / (8.0 * w.a(n)) * f_sum;
}

} // namespace cpb::oracle
