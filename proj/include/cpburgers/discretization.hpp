#pragma once

// Uniform grid on [0, L] with homogeneous Dirichlet data. Only the interior
// values u_1..u_{M-1} are stored; u_0 = u_M = 0 structurally.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cpburgers/cpkernel.hpp"
#include "cpburgers/errors.hpp"

namespace cpb {

class SpaceGrid {
public:
  SpaceGrid(std::size_t cells, double length) : m_(cells), l_(length), h_(length / static_cast<double>(cells)) {
    if (cells < 3) throw ValidationError("grid: M must be >= 3");
    if (!(length > 0.0) || !std::isfinite(length)) throw ValidationError("grid: L must be positive");
  }

  std::size_t cells() const noexcept { return m_; }
  std::size_t interior() const noexcept { return m_ - 1; }
  double length() const noexcept { return l_; }
  double h() const noexcept { return h_; }

  /// x_i = i h for i = 0..M
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * h_; }

private:
  std::size_t m_;
  double l_;
  double h_;
};

/// Interior nodal values u_1..u_{M-1} at one time level.
class StateVector {
public:
  StateVector() = default;
  explicit StateVector(std::size_t n, double value = 0.0) : v_(n, value) {}
  explicit StateVector(std::vector<double> values) : v_(std::move(values)) {}
  StateVector(std::initializer_list<double> values) : v_(values) {}

  /// Samples g at x_1..x_{M-1}.
  static StateVector sample(const SpaceGrid& grid, const std::function<double(double)>& g) {
    StateVector s(grid.interior());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = g(grid.x(i + 1));
    return s;
  }

  std::size_t size() const noexcept { return v_.size(); }
  double& operator[](std::size_t i) noexcept { return v_[i]; }
  double operator[](std::size_t i) const noexcept { return v_[i]; }

  /// Value at grid index i in 0..M, including the zero boundary.
  double node(std::ptrdiff_t i) const noexcept {
    return (i <= 0 || i > static_cast<std::ptrdiff_t>(v_.size())) ? 0.0 : v_[static_cast<std::size_t>(i - 1)];
  }

  std::span<double> values() noexcept { return v_; }
  std::span<const double> values() const noexcept { return v_; }
  auto begin() noexcept { return v_.begin(); }
  auto end() noexcept { return v_.end(); }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }

  friend bool operator==(const StateVector&, const StateVector&) = default;

private:
  std::vector<double> v_;
};

using SolutionHistory = std::vector<StateVector>;

namespace detail {
inline void require_size(const StateVector& w, std::size_t n, const char* op) {
  if (w.size() != n)
    throw ValidationError(std::string(op) + ": dimension mismatch (expected " + std::to_string(n) +
                          ", got " + std::to_string(w.size()) + ")");
}
} // namespace detail

/// (w_{i+1} - 2 w_i + w_{i-1}) / h^2
inline StateVector second_diff(const StateVector& w, const SpaceGrid& grid) {
  detail::require_size(w, grid.interior(), "second_diff");
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  StateVector out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto i = static_cast<std::ptrdiff_t>(k + 1);
    out[k] = (w.node(i + 1) - 2.0 * w[k] + w.node(i - 1)) * inv_h2;
  }
  return out;
}

/// Delta w_i = w_{i+1} - w_{i-1}, without the 1/(2h) factor.
inline StateVector central_diff(const StateVector& w) {
  StateVector out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto i = static_cast<std::ptrdiff_t>(k + 1);
    out[k] = w.node(i + 1) - w.node(i - 1);
  }
  return out;
}

/// Backward difference delta_x w_i = (w_i - w_{i-1}) / h for i = 1..M.
/// Has M entries: the last one reaches the boundary node w_M = 0.
inline std::vector<double> backward_diff(const StateVector& w, const SpaceGrid& grid) {
  detail::require_size(w, grid.interior(), "backward_diff");
  std::vector<double> out(grid.cells());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto i = static_cast<std::ptrdiff_t>(k + 1);
    out[k] = (w.node(i) - w.node(i - 1)) / grid.h();
  }
  return out;
}

/// Galerkin form of u u_x: (1/6h)(w_i Delta w_i + Delta(w^2)_i)
inline StateVector nonlinear_term(const StateVector& w, const SpaceGrid& grid) {
  detail::require_size(w, grid.interior(), "nonlinear_term");
  const double scale = 1.0 / (6.0 * grid.h());
  StateVector out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto i = static_cast<std::ptrdiff_t>(k + 1);
    const double left = w.node(i - 1);
    const double right = w.node(i + 1);
    out[k] = scale * (w[k] * (right - left) + (right * right - left * left));
  }
  return out;
}

/// <v, w>_h = sum_{i=1}^{M-1} h v_i w_i
inline double inner_product_h(const StateVector& v, const StateVector& w, const SpaceGrid& grid) {
  detail::require_size(v, grid.interior(), "inner_product_h");
  detail::require_size(w, grid.interior(), "inner_product_h");
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * w[i];
  return grid.h() * acc;
}

/// h-weighted inner product of two difference vectors over all M cells.
inline double cell_inner_product(std::span<const double> v, std::span<const double> w, const SpaceGrid& grid) {
  if (v.size() != grid.cells() || w.size() != grid.cells())
    throw ValidationError("cell_inner_product: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * w[i];
  return grid.h() * acc;
}

inline double norm_h(const StateVector& w, const SpaceGrid& grid) {
  return std::sqrt(inner_product_h(w, w, grid));
}

inline double norm_inf(const StateVector& w) {
  double m = 0.0;
  for (double x : w) m = std::max(m, std::abs(x));
  return m;
}

/// Sign carried by the a_k u^0 term of the history right-hand side.
enum class HistorySign {
  consistent,  ///< + a_k u^0, what moving the term across the scheme gives
  literal,     ///< - a_k u^0, as the closed-form H^k is sometimes printed
};

/// H^k = mu f^k + sum_{j=1}^{k-1} (a_{k-j} - a_{k-j+1}) u^j +/- a_k u^0
///
/// levels holds at least u^0..u^{k-1}.
inline StateVector history_rhs(std::span<const StateVector> levels, const WeightSequence& w, std::size_t k,
                               const StateVector& f_k, HistorySign sign = HistorySign::consistent) {
  if (k < 1 || k > w.size()) throw ValidationError("history_rhs: k must lie in 1..N");
  if (levels.size() < k)
    throw ValidationError("history_rhs: missing history levels (need " + std::to_string(k) + ", have " +
                          std::to_string(levels.size()) + ")");
  const std::size_t n = f_k.size();
  for (std::size_t j = 0; j < k; ++j) detail::require_size(levels[j], n, "history_rhs");

  StateVector h(n);
  const double mu = w.mu();
  const double ak = sign == HistorySign::consistent ? w.a(k) : -w.a(k);
  for (std::size_t i = 0; i < n; ++i) h[i] = mu * f_k[i] + ak * levels[0][i];
  for (std::size_t j = 1; j < k; ++j) {
    const double c = w.a(k - j) - w.a(k - j + 1);
    const StateVector& u = levels[j];
    for (std::size_t i = 0; i < n; ++i) h[i] += c * u[i];
  }
  return h;
}

} // namespace cpb
