#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cpburgers/cpkernel.hpp"
#include "cpburgers/oracles.hpp"

using cpb::CpParams;
using cpb::compute_weights;

namespace {
CpParams with_alpha(double alpha, double omega = -0.5) {
  CpParams cp;
  cp.alpha = alpha;
  cp.omega = omega;
  return cp;
}
} // namespace

TEST(Weights, OmegaZeroFirstWeight) {
  for (double rho : {0.3, 0.8, 1.7})
    for (double gamma : {-1.0, 0.5, 2.0}) {
      const auto w = compute_weights({0.5, rho, gamma, 0.0}, 0.1, 1);
      EXPECT_NEAR(w.a(1), 2.0 / std::sqrt(std::numbers::pi), 1e-15);
      EXPECT_NEAR(w.a(1), 1.1283791671, 1e-10);
    }
}

TEST(Weights, OmegaZeroIsCaputoL1) {
  const std::size_t n = 4096;
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto w = compute_weights(with_alpha(alpha, 0.0), 1.0 / n, n);
    for (std::size_t k = 1; k <= n; ++k) {
      const double ref = cpb::oracle::caputo_l1_weight(k, alpha);
      ASSERT_LE(std::abs(w.a(k) - ref), 1e-12 * ref) << "alpha " << alpha << " k " << k;
    }
  }
}

TEST(Weights, MuIsTauToAlpha) {
  const auto w = compute_weights(with_alpha(0.3), 0.01, 4);
  EXPECT_DOUBLE_EQ(w.mu(), std::pow(0.01, 0.3));
  EXPECT_EQ(w.size(), 4u);
  EXPECT_DOUBLE_EQ(w.tau(), 0.01);
}

TEST(Weights, MatchDifferenceOfKernelEvaluations) {
  const CpParams cp = with_alpha(0.4);
  const double tau = 1.0 / 64;
  const auto w = compute_weights(cp, tau, 64);
  for (std::size_t k = 1; k <= 64; ++k) {
    const double ref = cpb::oracle::weight_primitive(cp, tau, k) - cpb::oracle::weight_primitive(cp, tau, k - 1);
    EXPECT_NEAR(w.a(k), ref, 1e-13) << k;
  }
}

TEST(Weights, Telescope) {
  for (double alpha : {0.2, 0.5, 0.8}) {
    const CpParams cp = with_alpha(alpha);
    const std::size_t n = 1000;
    const double tau = 1.0 / n;
    const auto w = compute_weights(cp, tau, n);
    double sum = 0.0;
    for (double a : w.values()) sum += a;
    const double ref = cpb::oracle::weight_primitive(cp, tau, n);
    EXPECT_NEAR(sum, ref, 1e-12 * ref);
  }
}

TEST(Weights, PositiveAndDecreasingForDefaults) {
  const std::size_t n = std::size_t{1} << 14;
  for (double alpha : {0.2, 0.4, 0.6, 0.8}) {
    const auto w = compute_weights(with_alpha(alpha), 1.0 / n, n);
    for (std::size_t k = 2; k <= n; ++k) ASSERT_LT(w.a(k), w.a(k - 1)) << alpha << " " << k;
    EXPECT_GT(w.a(n), 0.0);
  }
}

TEST(Weights, NonMonotoneKernelRaisesStabilityError) {
  try {
    compute_weights(with_alpha(0.5, 4.0), 1.0 / 256, 256);
    FAIL() << "expected StabilityError";
  } catch (const cpb::StabilityError& e) {
    EXPECT_GE(e.index(), 2u);
    EXPECT_NE(std::string(e.what()).find("a_" + std::to_string(e.index())), std::string::npos);
  }
}

TEST(Weights, Validation) {
  EXPECT_THROW(compute_weights(with_alpha(1.0), 0.1, 3), cpb::ValidationError);
  EXPECT_THROW(compute_weights(with_alpha(0.5), 0.0, 3), cpb::ValidationError);
  EXPECT_THROW(compute_weights(with_alpha(0.5), 0.1, 0), cpb::ValidationError);
}

TEST(DiscreteOperator, AnnihilatesConstants) {
  const auto w = compute_weights(with_alpha(0.6), 1.0 / 50, 50);
  for (double c : {0.0, 1.0, -3.5, 1e6}) {
    std::vector<double> h(51, c);
    for (std::size_t k = 1; k <= 50; ++k) {
      const double d = cpb::discrete_cp_apply(std::span(h).first(k + 1), w);
      EXPECT_LE(std::abs(d), 1e-13 * std::abs(c) * w.a(1) / w.mu()) << c << " " << k;
    }
  }
}

TEST(DiscreteOperator, FirstLevel) {
  const auto w = compute_weights(with_alpha(0.3), 0.05, 4);
  const std::vector<double> h{0.25, 1.75};
  EXPECT_NEAR(cpb::discrete_cp_apply(h, w), w.a(1) / w.mu() * 1.5, 1e-14);
}

TEST(DiscreteOperator, LinearHistoryMatchesL1) {
  const std::size_t n = 40;
  const double tau = 1.0 / n;
  const auto w = compute_weights(with_alpha(0.5, 0.0), tau, n);
  std::vector<double> u(n + 1);
  for (std::size_t j = 0; j <= n; ++j) u[j] = static_cast<double>(j) * tau;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto h = std::span<const double>(u).first(k + 1);
    const double ref = cpb::oracle::caputo_l1_increments(h, tau, 0.5);
    EXPECT_NEAR(cpb::discrete_cp_apply(h, w), ref, 1e-13 * std::abs(ref));
    // L1 is exact for linear functions: t^{1/2} / Gamma(3/2).
    EXPECT_NEAR(ref, std::sqrt(k * tau) / std::tgamma(1.5), 1e-12);
  }
}

TEST(DiscreteOperator, Validation) {
  const auto w = compute_weights(with_alpha(0.5), 0.1, 2);
  const std::vector<double> one{1.0};
  const std::vector<double> four{1.0, 2.0, 3.0, 4.0};
  EXPECT_THROW(cpb::discrete_cp_apply(one, w), cpb::ValidationError);
  EXPECT_THROW(cpb::discrete_cp_apply(four, w), cpb::ValidationError);
}

TEST(DiscreteOperator, PositivityInequality) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  const CpParams cp;
  for (std::size_t n : {4u, 16u, 64u}) {
    const auto w = compute_weights(cp, 1.0 / n, n);
    for (int trial = 0; trial < 70; ++trial) {
      std::vector<double> u(n + 1);
      for (double& x : u) x = normal(rng);
      if (trial % 7 == 0) u[0] = 0.0;
      EXPECT_GE(cpb::oracle::positivity_gap(u, w), -1e-10) << n << " " << trial;
    }
  }
}

TEST(DiscreteOperator, OrderForCubic) {
  for (double alpha : {0.2, 0.5, 0.8}) {
    const CpParams cp = with_alpha(alpha);
    double prev = 0.0;
    for (std::size_t n : {64u, 128u, 256u, 512u}) {
      const double tau = 1.0 / n;
      const auto w = compute_weights(cp, tau, n);
      std::vector<double> u(n + 1);
      for (std::size_t j = 0; j <= n; ++j) u[j] = std::pow(j * tau, 3);
      double err = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double d = cpb::discrete_cp_apply(std::span<const double>(u).first(k + 1), w);
        err = std::max(err, std::abs(d - cpb::cp_derivative_power(3.0, k * tau, cp)));
      }
      if (prev > 0.0) {
        EXPECT_GE(std::log2(prev / err), 2.0 - alpha - 0.1) << alpha << " " << n;
      }
      prev = err;
    }
  }
}

TEST(PowerRule, ClosedForms) {
  const CpParams cp = with_alpha(0.35);
  for (double t : {0.1, 0.5, 1.0}) {
    EXPECT_NEAR(cpb::cp_derivative_power(2, t, cp), 2 * std::pow(t, 2 - 0.35) * cp.kernel_factor(3 - 0.35, t), 1e-14);
    EXPECT_NEAR(cpb::cp_derivative_power(5, t, cp), 120 * std::pow(t, 5 - 0.35) * cp.kernel_factor(6 - 0.35, t),
                1e-13);
  }
  const CpParams plain = with_alpha(0.35, 0.0);
  EXPECT_NEAR(cpb::cp_derivative_power(1, 0.7, plain), std::pow(0.7, 0.65) / std::tgamma(1.65), 1e-14);
}

TEST(PowerRule, QuadratureAgrees) {
  for (double alpha : {0.2, 0.4, 0.6, 0.8})
    for (double nu : {1.0, 2.0, 5.0})
      for (double t : {0.25, 0.5, 1.0}) {
        const CpParams cp = with_alpha(alpha);
        const double q = cpb::cp_derivative_quadrature([nu](double s) { return nu * std::pow(s, nu - 1); }, t, cp);
        const double c = cpb::cp_derivative_power(nu, t, cp);
        EXPECT_LE(std::abs(q - c), 1e-6 * std::abs(c)) << alpha << " " << nu << " " << t;
      }
}

TEST(PowerRule, QuadratureExamples) {
  const CpParams cp;
  EXPECT_NEAR(cpb::cp_derivative_quadrature([](double s) { return 2 * s; }, 0.5, cp),
              cpb::cp_derivative_power(2, 0.5, cp), 1e-6 * cpb::cp_derivative_power(2, 0.5, cp));
  EXPECT_EQ(cpb::cp_derivative_quadrature([](double) { return 0.0; }, 0.8, cp), 0.0);
  const double v = cpb::cp_derivative_quadrature([](double) { return 1.0; }, 1.0, with_alpha(0.3, 0.0));
  EXPECT_NEAR(v, 1.0 / std::tgamma(1.7), 1e-10);
  EXPECT_NEAR(v, 1.1005474055, 1e-9);
}

TEST(PowerRule, QuadratureHandlesSingularDerivative) {
  // u = t^{1/2}: u' blows up at s = 0.
  const CpParams cp = with_alpha(0.4);
  const double q = cpb::cp_derivative_quadrature([](double s) { return 0.5 / std::sqrt(s); }, 0.6, cp, 1e-9);
  EXPECT_NEAR(q, cpb::cp_derivative_power(0.5, 0.6, cp), 1e-8);
}

TEST(PowerRule, Validation) {
  const CpParams cp;
  EXPECT_THROW(cpb::cp_derivative_power(0.0, 1.0, cp), cpb::ValidationError);
  EXPECT_THROW(cpb::cp_derivative_power(1.0, 0.0, cp), cpb::ValidationError);
  EXPECT_THROW(cpb::cp_derivative_quadrature([](double) { return 1.0; }, 1.0, cp, 1e-3), cpb::ValidationError);
  EXPECT_THROW(cpb::cp_derivative_quadrature([](double) { return 1.0; }, -1.0, cp), cpb::ValidationError);
}
