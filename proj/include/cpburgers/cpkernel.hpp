#pragma once

// Caputo-Prabhakar time derivative
//
//   D u(t) = int_0^t (t-s)^{-alpha} E_{rho,1-alpha}^{-gamma}(omega (t-s)^rho) u'(s) ds
//
// together with its piecewise-linear (L1-type) discretisation on a uniform
// time grid, a quadrature evaluation of the integral, and the closed form for
// powers t^nu.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cpburgers/errors.hpp"
#include "cpburgers/mlf.hpp"

namespace cpb {

struct CpParams {
  double alpha = 0.5;
  double rho = 0.8;
  double gamma = 0.5;
  double omega = -0.5;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw ValidationError("cp: alpha must satisfy alpha in (0,1)");
    if (!(rho > 0.0) || !std::isfinite(rho))
      throw ValidationError("cp: rho must satisfy rho > 0");
    if (!std::isfinite(gamma)) throw ValidationError("cp: gamma must be finite");
    if (!std::isfinite(omega)) throw ValidationError("cp: omega must be finite");
  }

  /// E_{rho,b}^{-gamma}(omega t^rho)
  double kernel_factor(double b, double t, double tol = 1e-15) const {
    return prabhakar_e(PrabhakarTriplet{rho, b, -gamma}, omega * std::pow(t, rho), tol);
  }
};

/// Convolution weights a_1..a_N on the grid t_n = n tau, and mu = tau^alpha.
///
/// a_n = n^{1-alpha} E_{rho,2-alpha}^{-gamma}(omega t_n^rho)
///     - (n-1)^{1-alpha} E_{rho,2-alpha}^{-gamma}(omega t_{n-1}^rho)
class WeightSequence {
public:
  WeightSequence(CpParams params, double tau, std::vector<double> a)
      : params_(params), tau_(tau), mu_(std::pow(tau, params.alpha)), a_(std::move(a)) {}

  const CpParams& params() const noexcept { return params_; }
  double tau() const noexcept { return tau_; }
  double mu() const noexcept { return mu_; }
  std::size_t size() const noexcept { return a_.size(); }

  /// 1-based, a(1) .. a(size()).
  double a(std::size_t n) const { return a_.at(n - 1); }
  std::span<const double> values() const noexcept { return a_; }

private:
  CpParams params_;
  double tau_;
  double mu_;
  std::vector<double> a_;
};

namespace detail {

// n^p - (n-1)^p without cancellation for large n.
inline double power_difference(std::size_t n, double p) {
  const double dn = static_cast<double>(n);
  if (n == 1) return 1.0;
  return -std::pow(dn, p) * std::expm1(p * std::log1p(-1.0 / dn));
}

// Expands the Prabhakar factor of a_n termwise:
//   a_n = sum_m c_m (omega tau^rho)^m / Gamma(rho m + 2 - alpha)
//               * (n^{rho m + 1 - alpha} - (n-1)^{rho m + 1 - alpha})
// where c_m = (-gamma)_m / m!. The m-dependent factors are shared by all n.
class WeightSeries {
public:
  WeightSeries(const CpParams& p, double tau) : p_(p), x_(p.omega * std::pow(tau, p.rho)) {}

  // Returns false when the series is unsuitable in double precision.
  bool evaluate(std::size_t n, double tol, double& out) {
    double sum = 0.0;
    double abs_sum = 0.0;
    int small_run = 0;
    for (std::size_t m = 0; m < mlf_limits::max_terms; ++m) {
      const double c = coefficient(m);
      if (c == 0.0 && vanished_) break;
      const double term = c * power_difference(n, p_.rho * static_cast<double>(m) + 1.0 - p_.alpha);
      sum += term;
      abs_sum += std::abs(term);
      if (m >= mlf_limits::min_terms && std::abs(term) < tol * std::abs(sum)) {
        if (++small_run == mlf_limits::small_terms_to_stop) break;
      } else {
        small_run = 0;
      }
      if (m + 1 == mlf_limits::max_terms) return false;
    }
    out = sum;
    return std::isfinite(sum) && abs_sum <= 1e3 * std::abs(sum);
  }

private:
  double coefficient(std::size_t m) {
    while (coef_.size() <= m) {
      const std::size_t k = coef_.size();
      if (k == 0) {
        log_c_ = 0.0;
        sign_c_ = 1.0;
      } else {
        const double factor = (-p_.gamma + static_cast<double>(k - 1)) / static_cast<double>(k);
        if (factor == 0.0 || vanished_) {
          vanished_ = true;
          coef_.push_back(0.0);
          continue;
        }
        log_c_ += std::log(std::abs(factor));
        if (factor < 0.0) sign_c_ = -sign_c_;
      }
      double value;
      if (k == 0) {
        value = 1.0 / std::tgamma(2.0 - p_.alpha);
      } else if (x_ == 0.0) {
        value = 0.0;
      } else {
        const double kd = static_cast<double>(k);
        double sign = sign_c_;
        if (x_ < 0.0 && (k % 2 == 1)) sign = -sign;
        value = sign * std::exp(log_c_ + kd * std::log(std::abs(x_)) - std::lgamma(p_.rho * kd + 2.0 - p_.alpha));
      }
      coef_.push_back(value);
    }
    return coef_[m];
  }

  CpParams p_;
  double x_;
  std::vector<double> coef_;
  double log_c_ = 0.0;
  double sign_c_ = 1.0;
  bool vanished_ = false;
};

} // namespace detail

/// Computes a_1..a_N and checks that they are positive and strictly
/// decreasing; throws StabilityError naming the first offending index.
inline WeightSequence compute_weights(const CpParams& params, double tau, std::size_t n_steps,
                                      double tol = 1e-15) {
  params.validate();
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("weights: tau must be positive");
  if (n_steps < 1) throw ValidationError("weights: n_steps must be >= 1");

  std::vector<double> a(n_steps);
  detail::WeightSeries series(params, tau);
  const double b = 2.0 - params.alpha;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    double value = 0.0;
    if (!series.evaluate(n, tol, value)) {
      // Large |omega t^rho|: difference of two full evaluations.
      const double dn = static_cast<double>(n);
      const double hi = std::pow(dn, 1.0 - params.alpha) * params.kernel_factor(b, dn * tau, tol);
      const double lo = n == 1 ? 0.0
                               : std::pow(dn - 1.0, 1.0 - params.alpha) *
                                     params.kernel_factor(b, (dn - 1.0) * tau, tol);
      value = hi - lo;
    }
    a[n - 1] = value;
  }

  for (std::size_t n = 1; n <= n_steps; ++n) {
    const double an = a[n - 1];
    if (!(an > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "weights: stability precondition violated, a_" << n << " = " << an << " is not positive";
      throw StabilityError(os.str(), n);
    }
    if (n > 1 && !(an < a[n - 2])) {
      std::ostringstream os;
      os.precision(17);
      os << "weights: stability precondition violated, a_" << n << " = " << an
         << " is not below a_" << (n - 1) << " = " << a[n - 2];
      throw StabilityError(os.str(), n);
    }
  }
  return WeightSequence(params, tau, std::move(a));
}

/// Discrete CP derivative at level k from the nodal history u^0..u^k:
///   (1/mu) [a_1 u^k - sum_{j=1}^{k-1} (a_{k-j} - a_{k-j+1}) u^j - a_k u^0]
inline double discrete_cp_apply(std::span<const double> history, const WeightSequence& w) {
  if (history.size() < 2) throw ValidationError("discrete_cp_apply: need at least levels u^0, u^1");
  const std::size_t k = history.size() - 1;
  if (k > w.size()) throw ValidationError("discrete_cp_apply: level exceeds the weight table");
  double acc = w.a(1) * history[k] - w.a(k) * history[0];
  for (std::size_t j = 1; j < k; ++j) acc -= (w.a(k - j) - w.a(k - j + 1)) * history[j];
  return acc / w.mu();
}

/// Closed form of the CP derivative of t^nu:
///   Gamma(nu+1) t^{nu-alpha} E_{rho,nu+1-alpha}^{-gamma}(omega t^rho).
inline double cp_derivative_power(double nu, double t, const CpParams& params, double tol = 1e-15) {
  params.validate();
  if (!(nu > 0.0)) throw ValidationError("cp_derivative_power: nu must be positive");
  if (!(t > 0.0)) throw ValidationError("cp_derivative_power: t must be positive");
  return std::tgamma(nu + 1.0) * std::pow(t, nu - params.alpha) *
         params.kernel_factor(nu + 1.0 - params.alpha, t, tol);
}

/// Quadrature evaluation of the CP derivative from u'.
///
/// With s = t (1 - x):
///   t int_0^1 (t x)^{-alpha} E_{rho,1-alpha}^{-gamma}(omega (t x)^rho) u'(t (1 - x)) dx
/// integrated by tanh-sinh, which absorbs the algebraic endpoint behaviour.
inline double cp_derivative_quadrature(const std::function<double(double)>& f_prime, double t,
                                       const CpParams& params, double tol = 1e-10) {
  params.validate();
  if (!(t > 0.0)) throw ValidationError("cp_derivative_quadrature: t must be positive");
  if (!(tol > 0.0) || tol > 1e-4)
    throw ValidationError("cp_derivative_quadrature: tolerance must lie in (0, 1e-4]");

  const PrabhakarTriplet kernel{params.rho, 1.0 - params.alpha, -params.gamma};
  // xc is the signed distance to the nearer endpoint, so 1 - x stays exact near x = 1.
  auto integrand = [&](double x, double xc) {
    const double v = t * x;
    const double s = t * (x > 0.5 ? xc : 1.0 - x);
    const double z = params.omega == 0.0 ? 0.0 : params.omega * std::pow(v, params.rho);
    return t * std::pow(v, -params.alpha) * prabhakar_e(kernel, z) * f_prime(s);
  };

  double error = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  boost::math::quadrature::tanh_sinh<double> rule;
  const double value = rule.integrate(integrand, 0.0, 1.0, std::max(0.1 * tol, 1e-13), &error, &l1, &levels);
  // An integrand that cancels to ~0 is judged against its L1 norm instead.
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * l1;
  if (!std::isfinite(value) || (error > tol * std::abs(value) && error > noise))
    throw NumericalError("cp_derivative_quadrature: quadrature did not reach the tolerance");
  return value;
}

} // namespace cpb
