#pragma once

// Fully implicit scheme for the time-fractional Burgers equation
//
//   D^alpha_CP u + u u_x = u_xx + f   on (0,L) x (0,T),  u(0,t) = u(L,t) = 0,
//
// where each time level solves
//
//   a_1 u^k - mu delta_x^2 u^k + mu psi(u^k) = H^k
//
// by the linearised iteration
//
//   [a_1 I - (mu/h^2) E1 + (mu/2h) diag(E2 U)] U_new
//       = (mu/2h) diag(E2 U) U - (mu/6h) diag(E3 U) E2 U + H^k
//
// with E1 = tridiag(1,-2,1), E2 = tridiag(-1,0,1), E3 = tridiag(1,1,1),
// started from the previous level.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cpburgers/cpkernel.hpp"
#include "cpburgers/discretization.hpp"
#include "cpburgers/errors.hpp"
#include "cpburgers/tridiag.hpp"

namespace cpb {

struct NewtonSettings {
  std::size_t max_step = 500;
  double it_acc = 1e-8;

  void validate() const {
    if (max_step < 1) throw ValidationError("newton: maxstep must be >= 1");
    if (!(it_acc > 0.0)) throw ValidationError("newton: itacc must be positive");
  }
};

struct ProblemSpec {
  CpParams cp;
  SpaceGrid grid{64, 1.0};
  double T = 1.0;
  std::size_t N = 64;
  std::function<double(double)> phi = [](double) { return 0.0; };
  std::function<double(double, double)> f = [](double, double) { return 0.0; };
  HistorySign history_sign = HistorySign::consistent;

  double tau() const { return T / static_cast<double>(N); }

  void validate() const {
    cp.validate();
    if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("problem: T must be positive");
    if (N < 1) throw ValidationError("problem: N must be >= 1");
    if (!phi || !f) throw ValidationError("problem: phi and f must be set");
  }
};

struct SolveReport {
  SolutionHistory levels;                      // u^0..u^N
  std::vector<std::size_t> newton_iterations;  // per step k = 1..N
  std::size_t total_iterations = 0;
  std::chrono::duration<double, std::milli> wall_time{0};
};

struct StepResult {
  StateVector state;
  std::size_t iterations = 0;
};

/// One linearised iteration from U^(s) to U^(s+1).
inline StateVector newton_step(const StateVector& current, const StateVector& rhs_history, const WeightSequence& w,
                               const SpaceGrid& grid) {
  const std::size_t n = grid.interior();
  detail::require_size(current, n, "newton_step");
  detail::require_size(rhs_history, n, "newton_step");

  const double mu = w.mu();
  const double h = grid.h();
  const double a1 = w.a(1);
  const double diffusion = mu / (h * h);
  const double convect = mu / (2.0 * h);
  const double nonlinear = mu / (6.0 * h);

  Tridiagonal b(n);
  std::vector<double> rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::ptrdiff_t>(k + 1);
    const double left = current.node(i - 1);
    const double right = current.node(i + 1);
    const double e2u = right - left;
    const double e3u = left + current[k] + right;
    b.diag[k] = a1 + 2.0 * diffusion + convect * e2u;
    if (k + 1 < n) {
      b.lower[k] = -diffusion;
      b.upper[k] = -diffusion;
    }
    rhs[k] = convect * e2u * current[k] - nonlinear * e3u * e2u + rhs_history[k];
  }
  return StateVector(solve_tridiagonal(b, rhs));
}

/// a_1 u - mu delta_x^2 u + mu psi(u) - H, the defect of the nonlinear level equation.
inline StateVector level_residual(const StateVector& u, const StateVector& rhs_history, const WeightSequence& w,
                                  const SpaceGrid& grid) {
  const StateVector d2 = second_diff(u, grid);
  const StateVector psi = nonlinear_term(u, grid);
  detail::require_size(rhs_history, u.size(), "level_residual");
  StateVector r(u.size());
  const double mu = w.mu();
  for (std::size_t i = 0; i < u.size(); ++i)
    r[i] = w.a(1) * u[i] - mu * d2[i] + mu * psi[i] - rhs_history[i];
  return r;
}

/// Iterates from U^(0) = u^{k-1} until max |U^(s) - U^(s-1)| < it_acc.
inline StepResult iterate_level(const StateVector& start, const StateVector& rhs_history, const WeightSequence& w,
                                const SpaceGrid& grid, const NewtonSettings& settings, std::size_t k = 0) {
  settings.validate();
  StateVector current = start;
  for (std::size_t s = 1;; ++s) {
    StateVector next = newton_step(current, rhs_history, w, grid);
    double change = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) change = std::max(change, std::abs(next[i] - current[i]));
    if (!std::isfinite(change))
      throw NonConvergenceError("time step " + std::to_string(k) + ": iteration diverged", k, s);
    if (change < settings.it_acc) return {std::move(next), s};
    if (s >= settings.max_step)
      throw NonConvergenceError("time step " + std::to_string(k) +
                                    ": It is not convergent within the given number of steps (" +
                                    std::to_string(settings.max_step) + ")",
                                k, s);
    current = std::move(next);
  }
}

/// Advances to level k given u^0..u^{k-1} in history.
inline StepResult advance_step(std::span<const StateVector> history, std::size_t k, const WeightSequence& w,
                               const SpaceGrid& grid, const StateVector& f_k, const NewtonSettings& settings,
                               HistorySign sign = HistorySign::consistent) {
  const StateVector rhs = history_rhs(history, w, k, f_k, sign);
  return iterate_level(history[k - 1], rhs, w, grid, settings, k);
}

inline SolveReport solve(const ProblemSpec& problem, const NewtonSettings& settings) {
  problem.validate();
  settings.validate();
  const auto started = std::chrono::steady_clock::now();

  const SpaceGrid& grid = problem.grid;
  const double tau = problem.tau();
  const WeightSequence w = compute_weights(problem.cp, tau, problem.N);

  SolveReport report;
  report.levels.reserve(problem.N + 1);
  report.levels.push_back(StateVector::sample(grid, problem.phi));
  report.newton_iterations.reserve(problem.N);

  for (std::size_t k = 1; k <= problem.N; ++k) {
    const double t = static_cast<double>(k) * tau;
    const StateVector f_k = StateVector::sample(grid, [&](double x) { return problem.f(x, t); });
    StepResult step;
    try {
      step = advance_step(report.levels, k, w, grid, f_k, settings, problem.history_sign);
    } catch (const NonConvergenceError&) {
      throw;
    } catch (const NumericalError& e) {
      throw NumericalError("time step " + std::to_string(k) + ": " + e.what());
    }
    report.newton_iterations.push_back(step.iterations);
    report.total_iterations += step.iterations;
    report.levels.push_back(std::move(step.state));
  }
  report.wall_time = std::chrono::steady_clock::now() - started;
  return report;
}

} // namespace cpb
