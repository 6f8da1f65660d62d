#pragma once

// Manufactured solutions u(x,t) = t^nu g(x) and the error measures used in
// refinement studies.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cpburgers/cpkernel.hpp"
#include "cpburgers/discretization.hpp"
#include "cpburgers/errors.hpp"
#include "cpburgers/solver.hpp"

namespace cpb {

using SpaceFunction = std::function<double(double)>;
using SpaceTimeFunction = std::function<double(double, double)>;

struct ManufacturedProblem {
  std::string label;
  SpaceTimeFunction exact;
  SpaceTimeFunction source;
  SpaceFunction phi;

  // Separable structure exact = t^nu g(x), with analytic g', g''.
  double nu = 1.0;
  SpaceFunction g;
  SpaceFunction dg;
  SpaceFunction d2g;

  double exact_dx(double x, double t) const { return std::pow(t, nu) * dg(x); }
  double exact_dxx(double x, double t) const { return std::pow(t, nu) * d2g(x); }
};

namespace detail {
// CP derivative of t^nu, extended by continuity to t = 0.
inline double power_rate(double nu, double t, const CpParams& cp) {
  if (t > 0.0) return cp_derivative_power(nu, t, cp);
  if (t == 0.0 && nu > cp.alpha) return 0.0;
  throw ValidationError("manufactured: source undefined at t = 0 for nu <= alpha");
}
} // namespace detail

/// Exact t^nu g(x) with source D(t^nu) g + t^{2 nu} g g' - t^nu g''.
inline ManufacturedProblem build_power_separable(double nu, SpaceFunction g, SpaceFunction dg, SpaceFunction d2g,
                                                 const CpParams& cp, std::string label = "power") {
  cp.validate();
  if (!(nu > 0.0)) throw ValidationError("manufactured: nu must be positive");
  ManufacturedProblem p;
  p.label = std::move(label);
  p.nu = nu;
  p.g = std::move(g);
  p.dg = std::move(dg);
  p.d2g = std::move(d2g);
  p.exact = [nu, g = p.g](double x, double t) { return std::pow(t, nu) * g(x); };
  p.phi = [nu, g = p.g](double x) { return std::pow(0.0, nu) * g(x); };
  p.source = [nu, cp, g = p.g, dg = p.dg, d2g = p.d2g](double x, double t) {
    const double tn = std::pow(t, nu);
    return detail::power_rate(nu, t, cp) * g(x) + tn * tn * g(x) * dg(x) - tn * d2g(x);
  };
  return p;
}

/// u = t^2 sin(pi x) on (0,1) x (0,1).
inline ManufacturedProblem example1(const CpParams& cp) {
  cp.validate();
  using std::numbers::pi;
  ManufacturedProblem p = build_power_separable(
      2.0, [](double x) { return std::sin(pi * x); }, [](double x) { return pi * std::cos(pi * x); },
      [](double x) { return -pi * pi * std::sin(pi * x); }, cp, "example1");
  p.phi = [](double) { return 0.0; };
  p.source = [cp](double x, double t) {
    const double a = cp.alpha;
    return 2.0 * std::sin(pi * x) * std::pow(t, 2.0 - a) * cp.kernel_factor(3.0 - a, t) +
           0.5 * pi * std::pow(t, 4.0) * std::sin(2.0 * pi * x) + pi * pi * t * t * std::sin(pi * x);
  };
  return p;
}

/// u = t^5 x(x-1) on (0,1) x (0,1).
inline ManufacturedProblem example2(const CpParams& cp) {
  cp.validate();
  ManufacturedProblem p = build_power_separable(
      5.0, [](double x) { return x * (x - 1.0); }, [](double x) { return 2.0 * x - 1.0; },
      [](double) { return 2.0; }, cp, "example2");
  p.phi = [](double) { return 0.0; };
  p.source = [cp](double x, double t) {
    const double a = cp.alpha;
    return 120.0 * x * (x - 1.0) * std::pow(t, 5.0 - a) * cp.kernel_factor(6.0 - a, t) +
           x * (x - 1.0) * (2.0 * x - 1.0) * std::pow(t, 10.0) - 2.0 * std::pow(t, 5.0);
  };
  return p;
}

/// Builds a problem from its label: "example1", "example2" or
/// "power:<nu>:<g>" with g one of sin, parabola, cubic (scaled to length L).
inline ManufacturedProblem problem_from_label(const std::string& label, const CpParams& cp, double length = 1.0) {
  if (label == "example1") return example1(cp);
  if (label == "example2") return example2(cp);
  if (label.rfind("power:", 0) == 0) {
    const auto second = label.find(':', 6);
    if (second == std::string::npos) throw ValidationError("problem: expected power:<nu>:<g>");
    double nu = 0.0;
    try {
      std::size_t used = 0;
      nu = std::stod(label.substr(6, second - 6), &used);
      if (used != second - 6) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ValidationError("problem: cannot parse nu in '" + label + "'");
    }
    const std::string id = label.substr(second + 1);
    const double L = length;
    using std::numbers::pi;
    if (id == "sin")
      return build_power_separable(
          nu, [L](double x) { return std::sin(pi * x / L); }, [L](double x) { return pi / L * std::cos(pi * x / L); },
          [L](double x) { return -(pi / L) * (pi / L) * std::sin(pi * x / L); }, cp, label);
    if (id == "parabola")
      return build_power_separable(
          nu, [L](double x) { return x * (x - L); }, [L](double x) { return 2.0 * x - L; },
          [](double) { return 2.0; }, cp, label);
    if (id == "cubic")
      return build_power_separable(
          nu, [L](double x) { return x * x * (L - x); }, [L](double x) { return 2.0 * L * x - 3.0 * x * x; },
          [L](double x) { return 2.0 * L - 6.0 * x; }, cp, label);
    throw ValidationError("problem: unknown profile '" + id + "' (sin, parabola, cubic)");
  }
  throw ValidationError("problem: unknown label '" + label + "'");
}

/// Xi = max over interior nodes and levels k = 1..N of |u(x_i, t_k) - u_i^k|.
inline double max_error(const SolveReport& report, const ManufacturedProblem& problem, const SpaceGrid& grid,
                        double tau) {
  if (report.levels.size() < 2) throw ValidationError("max_error: report holds no computed levels");
  double xi = 0.0;
  for (std::size_t k = 1; k < report.levels.size(); ++k) {
    const double t = static_cast<double>(k) * tau;
    const StateVector& u = report.levels[k];
    detail::require_size(u, grid.interior(), "max_error");
    for (std::size_t i = 0; i < u.size(); ++i)
      xi = std::max(xi, std::abs(problem.exact(grid.x(i + 1), t) - u[i]));
  }
  return xi;
}

/// Theta = log2(Xi_coarse / Xi_fine)
inline double observed_order(double xi_coarse, double xi_fine) { return std::log2(xi_coarse / xi_fine); }

struct ConvergenceRow {
  std::size_t level = 0;
  double xi = 0.0;
  std::optional<double> theta;
  double time_ms = 0.0;
  std::size_t iterations = 0;
};

struct ConvergenceReport {
  double alpha = 0.0;
  std::string axis = "time";
  std::vector<ConvergenceRow> rows;
  std::optional<std::string> failure;  ///< set when the sweep stopped early

  /// Appends a row and derives its order from the previous one.
  void append(std::size_t level, double xi, double time_ms, std::size_t iterations) {
    ConvergenceRow r{level, xi, std::nullopt, time_ms, iterations};
    if (!rows.empty()) r.theta = observed_order(rows.back().xi, xi);
    rows.push_back(r);
  }
};

} // namespace cpb
