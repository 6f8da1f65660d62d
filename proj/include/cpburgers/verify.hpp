#pragma once

// Property suites run by `cpburgers verify`. Each suite checks one invariant
// of the library against an independent computation and reports the worst
// observed value.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cpburgers/cpkernel.hpp"
#include "cpburgers/discretization.hpp"
#include "cpburgers/manufactured.hpp"
#include "cpburgers/mlf.hpp"
#include "cpburgers/oracles.hpp"
#include "cpburgers/solver.hpp"
#include "cpburgers/tridiag.hpp"

namespace cpb {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double ms = 0.0;
};

struct VerifyOptions {
  /// Replaces the central difference inside the skew-symmetry suite with a
  /// biased stencil; that suite must then fail.
  bool tamper_stencil = false;
};

namespace verify_detail {

struct Outcome {
  bool passed;
  std::string detail;
};

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

inline Outcome worst_at_most(double worst, double limit, const std::string& what) {
  return {worst <= limit, what + " worst " + fmt(worst) + " (limit " + fmt(limit) + ")"};
}

inline StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  StateVector s(n);
  for (auto& v : s) v = d(rng);
  return s;
}

inline Outcome mlf_exp() {
  double worst = 0.0;
  for (int z = -5; z <= 5; ++z) {
    const double e = prabhakar_e({1.0, 1.0, 1.0}, z, 1e-15);
    worst = std::max(worst, std::abs(e - std::exp(z)) / std::exp(std::abs(z)));
  }
  return worst_at_most(worst, 1e-12, "|E_{1,1}^1(z) - e^z| / e^|z|");
}

inline Outcome mlf_g_zero() {
  double worst = 0.0;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> a(0.3, 1.5), b(0.5, 2.0), z(-20.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double bb = b(rng);
    const double e = prabhakar_e({a(rng), bb, 0.0}, z(rng), 1e-15);
    const double ref = 1.0 / std::tgamma(bb);
    worst = std::max(worst, std::abs(e - ref) / ref);
  }
  return worst_at_most(worst, 1e-13, "relative deviation from 1/Gamma(b)");
}

inline Outcome mlf_polynomial() {
  double worst = 0.0;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> a(0.3, 1.5), b(0.5, 2.0), z(-4.0, 4.0);
  for (int n = 0; n <= 5; ++n) {
    for (int i = 0; i < 20; ++i) {
      const double aa = a(rng), bb = b(rng), zz = z(rng);
      // (-n)_m / m! = (-1)^m C(n, m)
      double ref = 0.0, scale = 0.0;
      for (int m = 0; m <= n; ++m) {
        const double binom = std::tgamma(n + 1.0) / (std::tgamma(m + 1.0) * std::tgamma(n - m + 1.0));
        const double t = ((m % 2) ? -1.0 : 1.0) * binom * std::pow(zz, m) / std::tgamma(aa * m + bb);
        ref += t;
        scale += std::abs(t);
      }
      const auto r = prabhakar_e_detailed({aa, bb, -static_cast<double>(n)}, zz, 1e-15);
      worst = std::max(worst, std::abs(r.value - ref) / std::max(scale, 1e-300));
      if (r.terms > static_cast<std::size_t>(n) + 1) return {false, "polynomial case summed extra terms"};
    }
  }
  return worst_at_most(worst, 1e-13, "deviation from the finite polynomial (scaled)");
}

inline Outcome mlf_refinement() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> a(0.3, 1.5), b(0.5, 2.0), g(-3.0, 3.0), z(-4.0, 4.0);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const PrabhakarTriplet p{a(rng), b(rng), g(rng)};
    const double zz = z(rng);
    for (double tol = 1e-4; tol > 1e-13; tol *= 0.5) {
      const double coarse = prabhakar_e(p, zz, tol);
      const double fine = prabhakar_e(p, zz, tol * 0.5);
      worst = std::max(worst, std::abs(fine - coarse) / (tol * std::max(1.0, std::abs(coarse))));
    }
  }
  return worst_at_most(worst, 1.0, "change under tolerance halving / previous tolerance");
}

inline Outcome weights_omega_zero() {
  double worst = 0.0;
  for (double alpha : {0.1, 0.2, 0.4, 0.6, 0.8, 0.9}) {
    const CpParams cp{alpha, 0.8, 0.5, 0.0};
    const std::size_t n = 4096;
    const auto w = compute_weights(cp, 1.0 / static_cast<double>(n), n);
    for (std::size_t k = 1; k <= n; ++k) {
      const double ref = oracle::caputo_l1_weight(k, alpha);
      worst = std::max(worst, std::abs(w.a(k) - ref) / ref);
    }
  }
  return worst_at_most(worst, 1e-12, "relative deviation from Caputo L1 weights");
}

inline Outcome weights_monotone() {
  // Below alpha ~ 0.15 the default kernel itself makes a_n rise near t ~ 0.5.
  std::size_t checked = 0;
  for (double alpha : {0.2, 0.4, 0.5, 0.6, 0.8, 0.9}) {
    CpParams cp;
    cp.alpha = alpha;
    const std::size_t n = std::size_t{1} << 14;
    const auto w = compute_weights(cp, 1.0 / static_cast<double>(n), n);  // throws if violated
    for (std::size_t k = 2; k <= n; ++k)
      if (!(w.a(k) > 0.0 && w.a(k) < w.a(k - 1))) return {false, "a_n not decreasing at n = " + std::to_string(k)};
    checked += n;
  }
  return {true, std::to_string(checked) + " weights positive and strictly decreasing"};
}

inline Outcome weights_telescoping() {
  double worst = 0.0;
  for (double alpha : {0.2, 0.4, 0.6, 0.8}) {
    CpParams cp;
    cp.alpha = alpha;
    for (std::size_t n : {1u, 7u, 64u, 4096u}) {
      const double tau = 1.0 / static_cast<double>(n);
      const auto w = compute_weights(cp, tau, n);
      double sum = 0.0;
      for (double a : w.values()) sum += a;
      const double ref = oracle::weight_primitive(cp, tau, n);
      worst = std::max(worst, std::abs(sum - ref) / std::abs(ref));
    }
  }
  return worst_at_most(worst, 1e-12, "relative telescoping defect");
}

inline Outcome weights_reject_nonmonotone() {
  // Large positive omega drives E_{rho,2-alpha}^{-gamma}(omega t^rho) down
  // fast enough that the increments turn negative.
  for (double omega : {1.0, 2.0, 4.0, 8.0, 12.0, 16.0}) {
    CpParams cp;
    cp.omega = omega;
    try {
      compute_weights(cp, 1.0 / 64.0, 64);
    } catch (const StabilityError& e) {
      return {true, "omega = " + fmt(omega) + " rejected at a_" + std::to_string(e.index())};
    }
  }
  return {false, "no extreme omega triggered the stability precondition"};
}

inline Outcome discrete_annihilates_constants() {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> c(-100.0, 100.0);
  double worst = 0.0;
  for (double alpha : {0.2, 0.5, 0.8}) {
    CpParams cp;
    cp.alpha = alpha;
    const auto w = compute_weights(cp, 1.0 / 64.0, 64);
    for (std::size_t k = 1; k <= 64; ++k) {
      const double value = c(rng);
      const std::vector<double> hist(k + 1, value);
      const double d = discrete_cp_apply(hist, w);
      worst = std::max(worst, std::abs(d) / (std::abs(value) * w.a(1) / w.mu()));
    }
  }
  return worst_at_most(worst, 1e-13, "|D c| / (|c| a_1 / mu)");
}

inline Outcome positivity_inequality() {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double worst = std::numeric_limits<double>::infinity();
  int count = 0;
  const double alphas[] = {0.2, 0.4, 0.6, 0.8};
  for (std::size_t n : {4u, 16u, 64u}) {
    for (int i = 0; i < (n == 64 ? 66 : 67); ++i, ++count) {
      CpParams cp;
      cp.alpha = alphas[i % 4];
      const auto w = compute_weights(cp, 1.0 / static_cast<double>(n), n);
      std::vector<double> u(n + 1);
      for (auto& v : u) v = d(rng);
      worst = std::min(worst, oracle::positivity_gap(u, w));
    }
  }
  return {worst >= -1e-10, std::to_string(count) + " sequences, smallest gap " + fmt(worst)};
}

inline Outcome power_rule_quadrature() {
  double worst = 0.0;
  for (double alpha : {0.2, 0.4, 0.6, 0.8}) {
    CpParams cp;
    cp.alpha = alpha;
    for (double nu : {1.0, 2.0, 5.0}) {
      for (double t : {0.25, 0.5, 1.0}) {
        const double closed = cp_derivative_power(nu, t, cp);
        const double quad =
            cp_derivative_quadrature([nu](double s) { return nu * std::pow(s, nu - 1.0); }, t, cp, 1e-10);
        worst = std::max(worst, std::abs(quad - closed) / std::abs(closed));
      }
    }
  }
  return worst_at_most(worst, 1e-6, "relative quadrature vs closed form");
}

inline Outcome discrete_order() {
  std::string detail;
  bool ok = true;
  for (double alpha : {0.2, 0.4, 0.6, 0.8}) {
    CpParams cp;
    cp.alpha = alpha;
    double prev = 0.0, order = 0.0;
    for (std::size_t n : {32u, 64u, 128u, 256u}) {
      const double tau = 1.0 / static_cast<double>(n);
      const auto w = compute_weights(cp, tau, n);
      std::vector<double> u(n + 1);
      for (std::size_t j = 0; j <= n; ++j) u[j] = std::pow(static_cast<double>(j) * tau, 3.0);
      double err = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double d = discrete_cp_apply(std::span<const double>(u.data(), k + 1), w);
        err = std::max(err, std::abs(d - cp_derivative_power(3.0, static_cast<double>(k) * tau, cp)));
      }
      if (prev > 0.0) order = std::log2(prev / err);
      prev = err;
    }
    ok = ok && order >= (2.0 - alpha) - 0.1;
    detail += "alpha " + fmt(alpha) + ": order " + fmt(order) + "; ";
  }
  return {ok, detail};
}

using DeltaOperator = std::function<StateVector(const StateVector&)>;

inline Outcome skew_symmetry(const DeltaOperator& delta) {
  std::mt19937_64 rng(16);
  double worst = 0.0;
  for (std::size_t m : {8u, 64u, 512u}) {
    const SpaceGrid grid(m, 1.0);
    for (int i = 0; i < 100; ++i) {
      const StateVector w = random_state(grid.interior(), rng);
      StateVector sq(w.size());
      for (std::size_t k = 0; k < w.size(); ++k) sq[k] = w[k] * w[k];
      const StateVector dw = delta(w), dsq = delta(sq);
      double sum = 0.0, scale = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        const double term = (w[k] * dw[k] + dsq[k]) * w[k];
        sum += term;
        scale += std::abs(term);
      }
      worst = std::max(worst, std::abs(sum) / scale);
    }
  }
  return worst_at_most(worst, 1e-12, "|<w Delta w + Delta w^2, w>_h| relative to its terms");
}

inline Outcome summation_by_parts() {
  std::mt19937_64 rng(17);
  double worst = 0.0;
  for (std::size_t m : {8u, 64u, 512u}) {
    const SpaceGrid grid(m, 1.0);
    for (int i = 0; i < 100; ++i) {
      const StateVector w1 = random_state(grid.interior(), rng), w2 = random_state(grid.interior(), rng);
      const double lhs = inner_product_h(second_diff(w1, grid), w2, grid);
      const auto d1 = backward_diff(w1, grid), d2 = backward_diff(w2, grid);
      const double rhs = cell_inner_product(d1, d2, grid);
      double scale = 0.0;
      for (std::size_t k = 0; k < d1.size(); ++k) scale += grid.h() * std::abs(d1[k] * d2[k]);
      worst = std::max(worst, std::abs(lhs + rhs) / scale);
    }
  }
  return worst_at_most(worst, 1e-12, "|<d2 w1, w2>_h + <d w1, d w2>_h| relative");
}

inline Outcome discrete_sobolev() {
  std::mt19937_64 rng(18);
  double worst = 0.0;
  for (std::size_t m : {8u, 64u, 512u}) {
    for (double length : {0.5, 1.0, 3.0}) {
      const SpaceGrid grid(m, length);
      for (int i = 0; i < 34; ++i) {
        const StateVector w = random_state(grid.interior(), rng);
        const auto d = backward_diff(w, grid);
        const double bound = std::sqrt(length) / 2.0 * std::sqrt(cell_inner_product(d, d, grid));
        worst = std::max(worst, norm_inf(w) / bound);
      }
    }
  }
  return worst_at_most(worst, 1.0 + 1e-12, "||w||_inf / (sqrt(L)/2 ||d w||_h)");
}

inline Outcome spatial_consistency() {
  using std::numbers::pi;
  double prev_d2 = 0.0, prev_nl = 0.0;
  double min_d2 = 1e9, max_d2 = -1e9, min_nl = 1e9, max_nl = -1e9;
  for (std::size_t m : {16u, 32u, 64u, 128u, 256u}) {
    const SpaceGrid grid(m, 1.0);
    const StateVector u = StateVector::sample(grid, [](double x) { return std::sin(pi * x); });
    const StateVector d2 = second_diff(u, grid), psi = nonlinear_term(u, grid);
    double e2 = 0.0, enl = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double x = grid.x(k + 1);
      e2 = std::max(e2, std::abs(d2[k] + pi * pi * u[k]));
      enl = std::max(enl, std::abs(psi[k] - pi * std::sin(pi * x) * std::cos(pi * x)));
    }
    if (prev_d2 > 0.0) {
      const double o2 = std::log2(prev_d2 / e2), onl = std::log2(prev_nl / enl);
      min_d2 = std::min(min_d2, o2), max_d2 = std::max(max_d2, o2);
      min_nl = std::min(min_nl, onl), max_nl = std::max(max_nl, onl);
    }
    prev_d2 = e2, prev_nl = enl;
  }
  const bool ok = min_d2 >= 1.95 && max_d2 <= 2.05 && min_nl >= 1.9 && max_nl <= 2.1;
  return {ok, "second difference order in [" + fmt(min_d2) + ", " + fmt(max_d2) + "], nonlinear term order in [" +
                  fmt(min_nl) + ", " + fmt(max_nl) + "]"};
}

inline Outcome tridiagonal_oracle() {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> size(1, 64);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = size(rng);
    Tridiagonal m(n);
    std::vector<double> dense(n * n, 0.0), rhs(n);
    for (std::size_t k = 0; k + 1 < n; ++k) m.lower[k] = d(rng), m.upper[k] = d(rng);
    for (std::size_t k = 0; k < n; ++k) {
      const double off = (k > 0 ? std::abs(m.lower[k - 1]) : 0.0) + (k + 1 < n ? std::abs(m.upper[k]) : 0.0);
      m.diag[k] = (d(rng) < 0 ? -1.0 : 1.0) * (off + 0.1 + std::abs(d(rng)));
      rhs[k] = d(rng);
      dense[k * n + k] = m.diag[k];
      if (k > 0) dense[k * n + k - 1] = m.lower[k - 1];
      if (k + 1 < n) dense[k * n + k + 1] = m.upper[k];
    }
    const auto x = solve_tridiagonal(m, rhs);
    const auto ref = oracle::dense_solve(dense, rhs);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < n; ++k) num = std::max(num, std::abs(x[k] - ref[k])), den = std::max(den, std::abs(ref[k]));
    worst = std::max(worst, num / den);
  }
  return worst_at_most(worst, 1e-11, "relative deviation from dense elimination");
}

inline Outcome zero_data() {
  for (double alpha : {0.2, 0.4, 0.6, 0.8}) {
    ProblemSpec p;
    p.cp.alpha = alpha;
    p.grid = SpaceGrid(32, 1.0);
    p.N = 16;
    const auto r = solve(p, NewtonSettings{});
    for (const auto& level : r.levels)
      for (double v : level)
        if (v != 0.0) return {false, "nonzero value for zero data at alpha " + fmt(alpha)};
  }
  return {true, "all levels identically zero"};
}

inline Outcome level_residuals() {
  double worst = 0.0;
  for (int ex = 1; ex <= 2; ++ex) {
    for (double alpha : {0.2, 0.8}) {
      CpParams cp;
      cp.alpha = alpha;
      const auto mp = ex == 1 ? example1(cp) : example2(cp);
      const SpaceGrid grid(256, 1.0);
      const std::size_t n = 16;
      const double tau = 1.0 / n;
      const auto w = compute_weights(cp, tau, n);
      const NewtonSettings s{500, 1e-8};
      SolutionHistory levels{StateVector::sample(grid, mp.phi)};
      for (std::size_t k = 1; k <= n; ++k) {
        const double t = static_cast<double>(k) * tau;
        const auto f = StateVector::sample(grid, [&](double x) { return mp.source(x, t); });
        const auto rhs = history_rhs(levels, w, k, f);
        auto step = iterate_level(levels.back(), rhs, w, grid, s, k);
        worst = std::max(worst, norm_inf(level_residual(step.state, rhs, w, grid)) / (10.0 * s.it_acc * w.a(1)));
        levels.push_back(std::move(step.state));
      }
    }
  }
  return worst_at_most(worst, 1.0, "level residual / (10 ItAcc a_1)");
}

inline Outcome stability_estimate() {
  double worst = 0.0;
  for (int ex = 1; ex <= 2; ++ex) {
    for (double alpha : {0.2, 0.5, 0.8}) {
      CpParams cp;
      cp.alpha = alpha;
      const auto mp = ex == 1 ? example1(cp) : example2(cp);
      ProblemSpec p;
      p.cp = cp;
      p.grid = SpaceGrid(64, 1.0);
      p.N = 32;
      p.phi = mp.phi;
      p.f = mp.source;
      const auto r = solve(p, NewtonSettings{});
      const auto w = compute_weights(cp, p.tau(), p.N);
      std::vector<StateVector> sources;
      double lhs = 0.0;
      for (std::size_t k = 1; k <= p.N; ++k) {
        const double t = static_cast<double>(k) * p.tau();
        sources.push_back(StateVector::sample(p.grid, [&](double x) { return mp.source(x, t); }));
        lhs += std::pow(norm_inf(r.levels[k]), 2);
      }
      worst = std::max(worst, lhs / oracle::stability_bound(w, p.grid, r.levels[0], sources));
    }
  }
  return worst_at_most(worst, 1.0, "sum ||u^k||_inf^2 / bound");
}

inline Outcome source_consistency() {
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_closed = 0.0, worst_quad = 0.0;
  using std::numbers::pi;
  for (double alpha : {0.3, 0.7}) {
    CpParams cp;
    cp.alpha = alpha;
    const std::vector<ManufacturedProblem> problems{example1(cp), example2(cp),
                                                    problem_from_label("power:3:cubic", cp)};
    for (const auto& mp : problems) {
      for (int i = 0; i < 20; ++i) {
        const double x = unit(rng), t = 0.05 + 0.95 * unit(rng);
        const double transport = mp.exact(x, t) * mp.exact_dx(x, t) - mp.exact_dxx(x, t);
        const double closed = cp_derivative_power(mp.nu, t, cp) * mp.g(x);
        const double nu = mp.nu;
        const double quad =
            cp_derivative_quadrature([nu](double s) { return nu * std::pow(s, nu - 1.0); }, t, cp, 1e-11) * mp.g(x);
        const double src = mp.source(x, t);
        worst_closed = std::max(worst_closed, std::abs(closed + transport - src));
        worst_quad = std::max(worst_quad, std::abs(quad + transport - src));
      }
    }
  }
  const bool ok = worst_closed <= 1e-9 && worst_quad <= 1e-9;
  return {ok, "closed-form residual " + fmt(worst_closed) + ", quadrature residual " + fmt(worst_quad)};
}

} // namespace verify_detail

/// Runs every suite in order; never throws for a failing check.
inline std::vector<SuiteResult> run_verify(const VerifyOptions& options = {}) {
  using namespace verify_detail;
  DeltaOperator delta = [](const StateVector& w) { return central_diff(w); };
  if (options.tamper_stencil) {
    delta = [](const StateVector& w) {
      StateVector out = central_diff(w);
      for (std::size_t k = 0; k < w.size(); ++k) out[k] += 0.5 * w.node(static_cast<std::ptrdiff_t>(k));
      return out;
    };
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> suites{
      {"mlf.exponential_reduction", mlf_exp},
      {"mlf.third_parameter_zero", mlf_g_zero},
      {"mlf.negative_integer_polynomial", mlf_polynomial},
      {"mlf.tolerance_refinement", mlf_refinement},
      {"cpkernel.omega_zero_is_caputo_l1", weights_omega_zero},
      {"cpkernel.weights_decreasing", weights_monotone},
      {"cpkernel.weights_telescope", weights_telescoping},
      {"cpkernel.extreme_omega_rejected", weights_reject_nonmonotone},
      {"cpkernel.constants_annihilated", discrete_annihilates_constants},
      {"cpkernel.positivity_inequality", positivity_inequality},
      {"cpkernel.power_rule_vs_quadrature", power_rule_quadrature},
      {"cpkernel.discrete_derivative_order", discrete_order},
      {"discretization.skew_symmetry", [delta] { return skew_symmetry(delta); }},
      {"discretization.summation_by_parts", summation_by_parts},
      {"discretization.discrete_sobolev", discrete_sobolev},
      {"discretization.second_order_consistency", spatial_consistency},
      {"solver.tridiagonal_vs_dense", tridiagonal_oracle},
      {"solver.zero_data", zero_data},
      {"solver.level_residual", level_residuals},
      {"solver.stability_bound", stability_estimate},
      {"manufactured.source_consistency", source_consistency},
  };

  std::vector<SuiteResult> results;
  for (const auto& [name, run] : suites) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r;
    r.name = name;
    try {
      const Outcome o = run();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

} // namespace cpb
