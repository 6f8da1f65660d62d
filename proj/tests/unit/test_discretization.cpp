#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cpburgers/cpkernel.hpp"
#include "cpburgers/discretization.hpp"

using cpb::SpaceGrid;
using cpb::StateVector;
using std::numbers::pi;

namespace {
StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  StateVector s(n);
  for (double& x : s.values()) x = u(rng);
  return s;
}
} // namespace

TEST(Grid, Geometry) {
  const SpaceGrid g(8, 2.0);
  EXPECT_EQ(g.cells(), 8u);
  EXPECT_EQ(g.interior(), 7u);
  EXPECT_DOUBLE_EQ(g.h(), 0.25);
  EXPECT_DOUBLE_EQ(g.x(8), 2.0);
  EXPECT_THROW(SpaceGrid(2, 1.0), cpb::ValidationError);
  EXPECT_THROW(SpaceGrid(8, 0.0), cpb::ValidationError);
}

TEST(State, NodeIncludesZeroBoundary) {
  const StateVector s{1.0, 2.0, 3.0};
  EXPECT_EQ(s.node(0), 0.0);
  EXPECT_EQ(s.node(1), 1.0);
  EXPECT_EQ(s.node(3), 3.0);
  EXPECT_EQ(s.node(4), 0.0);
}

TEST(SecondDiff, SineIsSecondOrder) {
  for (std::size_t m : {16u, 64u, 256u}) {
    const SpaceGrid g(m, 1.0);
    const auto w = StateVector::sample(g, [](double x) { return std::sin(pi * x); });
    const auto d2 = cpb::second_diff(w, g);
    for (std::size_t i = 0; i < w.size(); ++i)
      EXPECT_LE(std::abs(d2[i] + pi * pi * w[i]), std::pow(pi, 4) / 12 * g.h() * g.h());
  }
}

TEST(SecondDiff, ExactOnQuadratics) {
  const SpaceGrid g(10, 1.0);
  const auto w = StateVector::sample(g, [](double x) { return x * (1.0 - x); });
  for (double v : cpb::second_diff(w, g)) EXPECT_NEAR(v, -2.0, 1e-12);
}

TEST(SecondDiff, ZeroAndDimension) {
  const SpaceGrid g(6, 1.0);
  for (double v : cpb::second_diff(StateVector(5), g)) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(cpb::second_diff(StateVector(4), g), cpb::ValidationError);
}

TEST(CentralDiff, HandValues) {
  EXPECT_EQ(cpb::central_diff(StateVector{1, 2, 3}), (StateVector{2, 2, -2}));
  EXPECT_EQ(cpb::central_diff(StateVector(4)), StateVector(4));
  const auto c = cpb::central_diff(StateVector(5, 2.5));
  EXPECT_EQ(c, (StateVector{2.5, 0, 0, 0, -2.5}));
}

TEST(BackwardDiff, ReachesRightBoundary) {
  const SpaceGrid g(4, 1.0);
  const auto d = cpb::backward_diff(StateVector{1, 2, 3}, g);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_DOUBLE_EQ(d[0], 4.0);
  EXPECT_DOUBLE_EQ(d[3], -12.0);
}

TEST(NonlinearTerm, ApproximatesTransport) {
  const SpaceGrid g(512, 1.0);
  const auto w = StateVector::sample(g, [](double x) { return std::sin(pi * x); });
  const auto psi = cpb::nonlinear_term(w, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double x = g.x(i + 1);
    worst = std::max(worst, std::abs(psi[i] - std::sin(pi * x) * pi * std::cos(pi * x)));
  }
  EXPECT_LE(worst, 2.0 * std::pow(pi, 3) * g.h() * g.h());
  for (double v : cpb::nonlinear_term(StateVector(511), g)) EXPECT_EQ(v, 0.0);
}

TEST(NonlinearTerm, SkewSymmetric) {
  std::mt19937_64 rng(3);
  for (std::size_t m : {8u, 64u, 512u}) {
    const SpaceGrid g(m, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto w = random_state(m - 1, rng);
      const double n = cpb::norm_h(w, g);
      EXPECT_LE(std::abs(cpb::inner_product_h(cpb::nonlinear_term(w, g), w, g)), 1e-12 * n * n * n / g.h());
    }
  }
}

TEST(InnerProduct, OnesOnTenCells) {
  const SpaceGrid g(10, 1.0);
  const StateVector ones(9, 1.0);
  EXPECT_NEAR(cpb::inner_product_h(ones, ones, g), 0.9, 1e-15);
  EXPECT_NEAR(cpb::norm_h(ones, g), std::sqrt(0.9), 1e-15);
  EXPECT_EQ(cpb::norm_inf(StateVector{1, -4, 2}), 4.0);
}

TEST(InnerProduct, SummationByPartsAndSobolev) {
  std::mt19937_64 rng(11);
  for (std::size_t m : {8u, 64u, 512u}) {
    const SpaceGrid g(m, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_state(m - 1, rng);
      const auto b = random_state(m - 1, rng);
      const double lhs = cpb::inner_product_h(cpb::second_diff(a, g), b, g);
      const double rhs = cpb::cell_inner_product(cpb::backward_diff(a, g), cpb::backward_diff(b, g), g);
      EXPECT_LE(std::abs(lhs + rhs), 1e-12 * (std::abs(lhs) + std::abs(rhs) + 1.0));
      const auto da = cpb::backward_diff(a, g);
      const double grad = std::sqrt(cpb::cell_inner_product(da, da, g));
      EXPECT_LE(cpb::norm_inf(a), std::sqrt(g.length()) / 2 * grad * (1 + 1e-12));
    }
  }
}

TEST(HistoryRhs, FirstLevelSigns) {
  const auto w = cpb::compute_weights(cpb::CpParams{}, 0.1, 3);
  const std::vector<StateVector> levels{StateVector{1.0, -2.0}};
  const StateVector f{0.5, 0.25};
  const auto consistent = cpb::history_rhs(levels, w, 1, f);
  const auto literal = cpb::history_rhs(levels, w, 1, f, cpb::HistorySign::literal);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_DOUBLE_EQ(consistent[i], w.mu() * f[i] + w.a(1) * levels[0][i]);
    EXPECT_DOUBLE_EQ(literal[i], w.mu() * f[i] - w.a(1) * levels[0][i]);
  }
}

TEST(HistoryRhs, ZeroHistoryLeavesSource) {
  const auto w = cpb::compute_weights(cpb::CpParams{}, 0.1, 5);
  const std::vector<StateVector> levels(4, StateVector(3));
  const StateVector f{1, 2, 3};
  const auto h = cpb::history_rhs(levels, w, 4, f);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(h[i], w.mu() * f[i]);
}

TEST(HistoryRhs, ThirdLevelByHand) {
  const auto w = cpb::compute_weights(cpb::CpParams{}, 0.2, 3);
  const std::vector<StateVector> levels{StateVector{0.3}, StateVector{-1.1}, StateVector{2.4}};
  const StateVector f{0.7};
  const double expected = w.mu() * 0.7 + (w.a(2) - w.a(3)) * -1.1 + (w.a(1) - w.a(2)) * 2.4 + w.a(3) * 0.3;
  EXPECT_NEAR(cpb::history_rhs(levels, w, 3, f)[0], expected, 1e-15);
}

TEST(HistoryRhs, Validation) {
  const auto w = cpb::compute_weights(cpb::CpParams{}, 0.1, 3);
  const std::vector<StateVector> levels{StateVector(2), StateVector(2)};
  EXPECT_THROW(cpb::history_rhs(levels, w, 3, StateVector(2)), cpb::ValidationError);
  EXPECT_THROW(cpb::history_rhs(levels, w, 0, StateVector(2)), cpb::ValidationError);
  EXPECT_THROW(cpb::history_rhs(levels, w, 2, StateVector(3)), cpb::ValidationError);
}
