#pragma once

// Three-parameter Mittag-Leffler (Prabhakar) function
//
//   E_{a,b}^{g}(z) = sum_{m>=0} (g)_m z^m / (Gamma(a m + b) m!)
//
// for real parameters and real argument, by direct series summation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>

#include <mpfr.h>

#include "cpburgers/errors.hpp"

namespace cpb {

/// Parameters (a, b, g) of E_{a,b}^{g}. The scheme uses a = rho, b = 1-alpha or
/// 2-alpha, g = -gamma.
struct PrabhakarTriplet {
  double a = 1.0;
  double b = 1.0;
  double g = 1.0;

  void validate() const {
    if (!(a > 0.0) || !std::isfinite(a))
      throw ValidationError("prabhakar: first parameter a must satisfy a > 0");
    if (!(b > 0.0) || !std::isfinite(b))
      throw ValidationError("prabhakar: second parameter b must satisfy b > 0");
    if (!std::isfinite(g))
      throw ValidationError("prabhakar: third parameter g must be finite");
  }
};

/// Value plus diagnostics of one series evaluation.
struct PrabhakarResult {
  double value = 0.0;
  std::size_t terms = 0;        ///< number of series terms summed
  double cancellation = 1.0;    ///< largest |term| / |sum|
  bool precision_loss = false;  ///< cancellation exceeded 1e12
  bool extended = false;        ///< summed in multiprecision
};

namespace mlf_limits {
inline constexpr double reliable_argument = 20.0;
inline constexpr std::size_t min_terms = 8;
inline constexpr std::size_t max_terms = 2000;
inline constexpr int small_terms_to_stop = 3;
inline constexpr double cancellation_warning = 1e12;
inline constexpr double max_tolerance = 1e-3;
} // namespace mlf_limits

namespace detail {

// A term counts toward the stop rule when it and the geometric tail it
// implies (ratio to the previous term) are both below the threshold.
inline bool term_is_small(double mag, double prev_mag, double threshold) {
  if (!(mag < threshold)) return false;
  if (!(prev_mag > 0.0)) return true;
  const double r = mag / prev_mag;
  if (r >= 1.0) return false;
  return mag * r / (1.0 - r) < threshold;
}

// (g)_{m+1} / (m+1)! = (g)_m / m! * (g + m) / (m + 1); zero once g + m hits 0.
inline bool pochhammer_vanishes(double g, std::size_t m) { return g + static_cast<double>(m) == 0.0; }

class MpfrNumber {
public:
  explicit MpfrNumber(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  ~MpfrNumber() { mpfr_clear(v_); }
  MpfrNumber(const MpfrNumber&) = delete;
  MpfrNumber& operator=(const MpfrNumber&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

private:
  mpfr_t v_;
};

struct SeriesOutcome {
  double value = 0.0;
  std::size_t terms = 0;
  double abs_sum = 0.0;   // sum of |term|
  double max_term = 0.0;
  double rounding = 0.0;  // estimated absolute rounding error
  bool converged = false;
};

// Double-precision summation. Terms are formed in the log domain, so z^m and
// Gamma(a m + b) never overflow on their own.
inline SeriesOutcome sum_double(const PrabhakarTriplet& p, double z, double tol) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  SeriesOutcome out;

  double sum = 1.0 / std::tgamma(p.b);
  double comp = 0.0;  // Neumaier compensation
  out.abs_sum = std::abs(sum);
  out.max_term = std::abs(sum);
  out.rounding = eps * std::abs(sum);
  out.terms = 1;

  if (z == 0.0 || p.g == 0.0) {
    out.value = sum;
    out.converged = true;
    return out;
  }

  const double log_abs_z = std::log(std::abs(z));
  double log_coef = 0.0;  // log |(g)_m / m!|
  double coef_sign = 1.0;
  int small_run = 0;
  double prev_mag = out.abs_sum;

  for (std::size_t m = 1; m < mlf_limits::max_terms; ++m) {
    if (pochhammer_vanishes(p.g, m - 1)) {
      out.converged = true;  // exact polynomial
      break;
    }
    const double factor = (p.g + static_cast<double>(m - 1)) / static_cast<double>(m);
    log_coef += std::log(std::abs(factor));
    if (factor < 0.0) coef_sign = -coef_sign;

    const double lg = std::lgamma(p.a * static_cast<double>(m) + p.b);
    const double log_term = log_coef + static_cast<double>(m) * log_abs_z - lg;
    if (log_term > 700.0) break;  // overflow: leave converged == false

    double sign = coef_sign;
    if (z < 0.0 && (m % 2 == 1)) sign = -sign;
    const double term = sign * std::exp(log_term);

    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
    out.terms = m + 1;

    const double mag = std::abs(term);
    out.abs_sum += mag;
    out.max_term = std::max(out.max_term, mag);
    out.rounding += mag * eps *
                    (2.0 + std::abs(log_coef) + std::abs(static_cast<double>(m) * log_abs_z) + std::abs(lg));

    const double current = sum + comp;
    const bool small = term_is_small(mag, prev_mag, tol * std::max(1.0, std::abs(current)));
    prev_mag = mag;
    if (m >= mlf_limits::min_terms && small) {
      if (++small_run == mlf_limits::small_terms_to_stop) {
        out.converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  out.value = sum + comp;
  return out;
}

// Multiprecision summation at the given working precision.
inline SeriesOutcome sum_mpfr(const PrabhakarTriplet& p, double z, double tol, mpfr_prec_t bits) {
  SeriesOutcome out;
  const mpfr_rnd_t rnd = MPFR_RNDN;
  MpfrNumber sum(bits), term(bits), coef(bits), zpow(bits), arg(bits), gam(bits), tmp(bits);
  MpfrNumber abs_sum(bits), max_term(bits), threshold(bits);

  mpfr_set_d(arg.get(), p.b, rnd);
  mpfr_gamma(gam.get(), arg.get(), rnd);
  mpfr_ui_div(sum.get(), 1, gam.get(), rnd);
  mpfr_abs(abs_sum.get(), sum.get(), rnd);
  mpfr_set(max_term.get(), abs_sum.get(), rnd);
  mpfr_set_ui(coef.get(), 1, rnd);
  mpfr_set_ui(zpow.get(), 1, rnd);
  out.terms = 1;

  int small_run = 0;
  double prev_mag = mpfr_get_d(abs_sum.get(), rnd);
  bool converged = (z == 0.0 || p.g == 0.0);
  for (std::size_t m = 1; !converged && m < mlf_limits::max_terms; ++m) {
    if (pochhammer_vanishes(p.g, m - 1)) {
      converged = true;
      break;
    }
    // coef *= (g + m - 1) / m
    mpfr_set_d(tmp.get(), p.g, rnd);
    mpfr_add_ui(tmp.get(), tmp.get(), static_cast<unsigned long>(m - 1), rnd);
    mpfr_mul(coef.get(), coef.get(), tmp.get(), rnd);
    mpfr_div_ui(coef.get(), coef.get(), static_cast<unsigned long>(m), rnd);
    mpfr_mul_d(zpow.get(), zpow.get(), z, rnd);

    mpfr_set_d(arg.get(), p.a, rnd);
    mpfr_mul_ui(arg.get(), arg.get(), static_cast<unsigned long>(m), rnd);
    mpfr_add_d(arg.get(), arg.get(), p.b, rnd);
    mpfr_gamma(gam.get(), arg.get(), rnd);

    mpfr_mul(term.get(), coef.get(), zpow.get(), rnd);
    mpfr_div(term.get(), term.get(), gam.get(), rnd);
    mpfr_add(sum.get(), sum.get(), term.get(), rnd);
    out.terms = m + 1;

    mpfr_abs(tmp.get(), term.get(), rnd);
    mpfr_add(abs_sum.get(), abs_sum.get(), tmp.get(), rnd);
    if (mpfr_cmp(tmp.get(), max_term.get()) > 0) mpfr_set(max_term.get(), tmp.get(), rnd);

    // threshold = tol * max(1, |sum|)
    mpfr_abs(threshold.get(), sum.get(), rnd);
    if (mpfr_cmp_ui(threshold.get(), 1) < 0) mpfr_set_ui(threshold.get(), 1, rnd);
    mpfr_mul_d(threshold.get(), threshold.get(), tol, rnd);
    const double mag = mpfr_get_d(tmp.get(), rnd);
    const bool small = term_is_small(mag, prev_mag, mpfr_get_d(threshold.get(), rnd));
    prev_mag = mag;
    if (m >= mlf_limits::min_terms && small) {
      if (++small_run == mlf_limits::small_terms_to_stop) converged = true;
    } else {
      small_run = 0;
    }
  }
  out.converged = converged;
  out.value = mpfr_get_d(sum.get(), rnd);
  out.abs_sum = mpfr_get_d(abs_sum.get(), rnd);
  out.max_term = mpfr_get_d(max_term.get(), rnd);
  out.rounding = 0.0;
  return out;
}

inline std::string describe(const PrabhakarTriplet& p, double z) {
  std::ostringstream os;
  os.precision(17);
  os << "E_{" << p.a << "," << p.b << "}^{" << p.g << "}(" << z << ")";
  return os.str();
}

} // namespace detail

/// Evaluates E_{a,b}^{g}(z) with diagnostics.
///
/// Terms are summed in double precision until three consecutive terms fall
/// below tol * max(1, |sum|) (never before term 8). When the estimated
/// rounding error of that sum exceeds the requested accuracy, typically for
/// negative z of larger magnitude where the series alternates with huge
/// terms, the sum is redone in MPFR with enough bits to absorb the
/// cancellation.
inline PrabhakarResult prabhakar_e_detailed(const PrabhakarTriplet& p, double z, double tol = 1e-15) {
  p.validate();
  if (!(tol > 0.0) || tol > mlf_limits::max_tolerance)
    throw ValidationError("prabhakar: tolerance must lie in (0, 1e-3]");
  if (!std::isfinite(z) || std::abs(z) > mlf_limits::reliable_argument)
    throw NumericalError("prabhakar: argument outside the reliable range |z| <= 20 for " +
                         detail::describe(p, z));

  constexpr double eps = std::numeric_limits<double>::epsilon();
  detail::SeriesOutcome s = detail::sum_double(p, z, tol);
  bool extended = false;

  const double accuracy = std::max(tol, 64.0 * eps) * std::max(1.0, std::abs(s.value));
  if (!s.converged || s.rounding > accuracy) {
    // Bits to carry the cancellation between the largest partial magnitudes
    // and the result, plus a margin below the requested tolerance.
    const double target = std::max(std::abs(s.value), 1e-30);
    auto bits = static_cast<mpfr_prec_t>(
        96 + std::ceil(std::log2(std::max(1.0, s.abs_sum) / std::min(1.0, target))) +
        std::ceil(-std::log2(tol)));
    for (int attempt = 0; attempt < 4; ++attempt) {
      s = detail::sum_mpfr(p, z, tol, bits);
      const double loss = std::log2(std::max(1.0, s.abs_sum) / std::max(std::abs(s.value), 1e-300));
      if (loss + 80.0 <= static_cast<double>(bits)) break;
      bits = static_cast<mpfr_prec_t>(loss) + 160;
    }
    extended = true;
  }

  if (!s.converged || !std::isfinite(s.value))
    throw NumericalError("prabhakar: series did not converge within " +
                         std::to_string(mlf_limits::max_terms) + " terms for " + detail::describe(p, z));

  PrabhakarResult r;
  r.value = s.value;
  r.terms = s.terms;
  r.cancellation = s.value != 0.0 ? s.max_term / std::abs(s.value) : std::numeric_limits<double>::infinity();
  r.precision_loss = r.cancellation > mlf_limits::cancellation_warning;
  r.extended = extended;
  return r;
}

inline double prabhakar_e(const PrabhakarTriplet& p, double z, double tol = 1e-15) {
  return prabhakar_e_detailed(p, z, tol).value;
}

/// Two-parameter Mittag-Leffler function E_{a,b}(z) = E_{a,b}^{1}(z).
inline double mlf_two_param(double a, double b, double z, double tol = 1e-15) {
  return prabhakar_e(PrabhakarTriplet{a, b, 1.0}, z, tol);
}

} // namespace cpb
