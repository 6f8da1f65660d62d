#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cpburgers/errors.hpp"

namespace cpb {

/// Tridiagonal matrix in band storage: lower[i] = A(i+1, i), upper[i] = A(i, i+1).
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  explicit Tridiagonal(std::size_t n = 0) : lower(n ? n - 1 : 0), diag(n), upper(n ? n - 1 : 0) {}

  std::size_t size() const noexcept { return diag.size(); }

  double max_abs() const {
    double m = 0.0;
    for (double v : lower) m = std::max(m, std::abs(v));
    for (double v : diag) m = std::max(m, std::abs(v));
    for (double v : upper) m = std::max(m, std::abs(v));
    return m;
  }

  bool diagonally_dominant(double slack) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      double off = 0.0;
      if (i > 0) off += std::abs(lower[i - 1]);
      if (i + 1 < n) off += std::abs(upper[i]);
      if (std::abs(diag[i]) < off - slack) return false;
    }
    return true;
  }
};

namespace detail {

inline constexpr double pivot_floor = 1e-14;

[[noreturn]] inline void singular(std::size_t row) {
  throw NumericalError("tridiagonal solve: pivot below 1e-14 of the matrix scale at row " + std::to_string(row));
}

// Thomas algorithm, no pivoting.
inline std::vector<double> thomas(const Tridiagonal& m, std::span<const double> rhs, double scale) {
  const std::size_t n = m.size();
  std::vector<double> c(n), x(rhs.begin(), rhs.end());
  double pivot = m.diag[0];
  if (std::abs(pivot) < pivot_floor * scale) singular(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      pivot = m.diag[i] - m.lower[i - 1] * c[i - 1];
      if (std::abs(pivot) < pivot_floor * scale) singular(i);
      x[i] -= m.lower[i - 1] * x[i - 1];
    }
    if (i + 1 < n) c[i] = m.upper[i] / pivot;
    x[i] /= pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

// Gaussian elimination with partial pivoting on the band; row swaps create
// a second superdiagonal.
inline std::vector<double> pivoting(Tridiagonal m, std::span<const double> rhs, double scale) {
  const std::size_t n = m.size();
  std::vector<double> b(rhs.begin(), rhs.end());
  std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
  auto& d = m.diag;
  auto& dl = m.lower;
  auto& du = m.upper;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (std::abs(d[i]) < pivot_floor * scale) singular(i);
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = temp;
      const double tb = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tb - fact * b[i + 1];
    }
  }
  if (std::abs(d[n - 1]) < pivot_floor * scale) singular(n - 1);

  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t i = n >= 2 ? n - 2 : 0; i-- > 0;)
    b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  return b;
}

} // namespace detail

/// Solves m x = rhs. Diagonally dominant systems take the Thomas algorithm;
/// anything else falls back to partial pivoting.
inline std::vector<double> solve_tridiagonal(const Tridiagonal& m, std::span<const double> rhs) {
  const std::size_t n = m.size();
  if (n == 0 || rhs.size() != n || m.lower.size() + 1 != n || m.upper.size() + 1 != n)
    throw ValidationError("tridiagonal solve: dimension mismatch");
  const double scale = m.max_abs();
  if (!(scale > 0.0) || !std::isfinite(scale)) detail::singular(0);
  if (m.diagonally_dominant(1e-12 * scale)) return detail::thomas(m, rhs, scale);
  return detail::pivoting(m, rhs, scale);
}

} // namespace cpb
