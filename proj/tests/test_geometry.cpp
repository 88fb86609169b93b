#include <gtest/gtest.h>

#include <cmath>

#include "bergman/geometry.hpp"

using namespace bergman;

TEST(EvalRho, DiskCenterAndHalf) {
  const auto disk = DomainModel::unit_disk();
  EXPECT_EQ(eval_rho(disk, Complex(0.0, 0.0)), 1.0);
  EXPECT_EQ(eval_rho(disk, Complex(0.5, 0.0)), 0.5);
}

TEST(EvalRho, BallUsesEuclideanNorm) {
  const auto ball = DomainModel::unit_ball(2);
  const Point z = {Complex(0.6, 0.0), Complex(0.0, 0.0)};
  EXPECT_NEAR(eval_rho(ball, z), 0.4, 1e-15);
}

TEST(EvalRho, BidiskIsMinimumOverFactors) {
  const auto bidisk = DomainModel::bidisk();
  const Point z = {Complex(0.2, 0.0), Complex(0.0, 0.7)};
  EXPECT_NEAR(eval_rho(bidisk, z), 0.3, 1e-15);
}

TEST(EvalRho, InteriorValuesInUnitInterval) {
  SplitMix64 rng(5);
  const auto disk = DomainModel::unit_disk();
  const auto ball = DomainModel::unit_ball(3);
  for (int i = 0; i < 200; ++i) {
    const Complex z = std::polar(0.999 * rng.uniform() + 1e-6, 2.0 * kPi * rng.uniform());
    const double v = eval_rho(disk, z);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
    Point w = {z * 0.5, z * 0.5, z * 0.5};
    const double u = eval_rho(ball, w);
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(DomainModel, RejectsBadCutoff) {
  EXPECT_THROW(DomainModel::unit_disk(0.0), LabError);
  EXPECT_THROW(DomainModel::unit_disk(1.0), LabError);
  EXPECT_THROW(DomainModel::unit_ball(1), LabError);
}

TEST(LeviCheck, BallAtPoleHasUnitEigenvalue) {
  const Point p = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
  const auto r = levi_check(defining::ball(2), p);
  ASSERT_EQ(r.levi_eigenvalues.size(), 1u);
  EXPECT_NEAR(r.min_eigenvalue, 1.0, 1e-4);
  EXPECT_TRUE(r.pseudoconvex);
}

TEST(LeviCheck, BallAtHundredSeededPoints) {
  const auto points = sample_boundary(DomainModel::unit_ball(2), 100, 7);
  for (const auto& p : points) {
    const auto r = levi_check(defining::ball(2), p);
    EXPECT_NEAR(r.min_eigenvalue, 1.0, 1e-4);
    EXPECT_LE(r.max_tangency_residual(), 1e-8);
  }
}

TEST(LeviCheck, TangentBasisOrthonormal) {
  const auto points = sample_boundary(DomainModel::unit_ball(3), 10, 2);
  for (const auto& p : points) {
    const auto r = levi_check(defining::ball(3), p);
    ASSERT_EQ(r.tangent_basis.size(), 2u);
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        Complex dot{};
        for (std::size_t j = 0; j < 3; ++j) dot += r.tangent_basis[a][j] * std::conj(r.tangent_basis[b][j]);
        EXPECT_NEAR(std::abs(dot - (a == b ? 1.0 : 0.0)), 0.0, 1e-12);
      }
    }
    EXPECT_LE(r.max_tangency_residual(), 1e-8);
    EXPECT_TRUE(std::is_sorted(r.levi_eigenvalues.begin(), r.levi_eigenvalues.end()));
  }
}

TEST(LeviCheck, ShellInnerBoundaryIsNotPseudoconvex) {
  const Point p = {Complex(1.0 / std::sqrt(2.0), 0.0), Complex(0.0, 0.0)};
  const auto r = levi_check(defining::shell(2, 0.5), p);
  EXPECT_LT(r.min_eigenvalue, 0.0);
  EXPECT_FALSE(r.pseudoconvex);
}

TEST(LeviCheck, ShellOuterBoundaryIsPseudoconvex) {
  const Point p = {Complex(0.0, 0.0), Complex(0.0, 1.0)};
  const auto r = levi_check(defining::shell(2, 0.5), p);
  EXPECT_GT(r.min_eigenvalue, 0.0);
}

TEST(LeviCheck, DiskIsDegeneratePass) {
  const Point p = {std::polar(1.0, 0.3)};
  const auto r = levi_check(defining::disk(), p);
  EXPECT_TRUE(r.tangent_basis.empty());
  EXPECT_TRUE(r.levi_eigenvalues.empty());
  EXPECT_TRUE(std::isinf(r.min_eigenvalue));
  EXPECT_GT(r.min_eigenvalue, 0.0);
  EXPECT_TRUE(r.pseudoconvex);
}

TEST(LeviCheck, SignInvariantUnderPositiveScaling) {
  const Point inner = {Complex(1.0 / std::sqrt(2.0), 0.0), Complex(0.0, 0.0)};
  const Point outer = {Complex(0.6, 0.0), Complex(0.0, 0.8)};
  for (double c : {0.5, 2.0}) {
    for (const auto& f : {defining::ball(2), defining::shell(2, 0.5)}) {
      const Point& p = f.name == "ball" ? outer : inner;
      const double base = levi_check(f, p).min_eigenvalue;
      const double scaled = levi_check(f.scaled(c), p).min_eigenvalue;
      EXPECT_EQ(std::signbit(base), std::signbit(scaled));
      EXPECT_NEAR(scaled, c * base, 1e-6);
    }
  }
}

TEST(LeviCheck, RejectsInteriorPoint) {
  const Point p = {Complex(0.5, 0.0), Complex(0.0, 0.0)};
  try {
    levi_check(defining::ball(2), p);
    FAIL();
  } catch (const LabError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOnBoundary);
  }
}

TEST(SampleBoundary, DiskPointsOnCircleAndReproducible) {
  const auto a = sample_boundary(DomainModel::unit_disk(), 4, 1);
  const auto b = sample_boundary(DomainModel::unit_disk(), 4, 1);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a, b);
  for (const auto& p : a) EXPECT_NEAR(std::abs(p[0]), 1.0, 1e-15);
}

TEST(SampleBoundary, BallPointsOnSphere) {
  const auto pts = sample_boundary(DomainModel::unit_ball(2), 100, 7);
  ASSERT_EQ(pts.size(), 100u);
  for (const auto& p : pts) EXPECT_LT(std::abs(std::sqrt(defining::norm_sq(p)) - 1.0), 1e-12);
}

TEST(SampleBoundary, ZeroCountIsInvalid) {
  try {
    sample_boundary(DomainModel::unit_disk(), 0, 1);
    FAIL();
  } catch (const LabError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidCount);
  }
}
