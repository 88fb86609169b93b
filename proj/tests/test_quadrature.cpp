#include <gtest/gtest.h>

#include <cmath>

#include "bergman/families.hpp"
#include "bergman/quadrature.hpp"

using namespace bergman;

TEST(DiskGrid, NormalizedClassicalWeightHasUnitMass) {
  for (double alpha : {0.0, 1.0, 2.5, -0.5}) {
    const auto g = disk_grid(64, 128, alpha, WeightVariant::OneMinusModSq);
    EXPECT_NEAR((alpha + 1.0) / kPi * g.total_weight(), 1.0, 1e-12) << alpha;
  }
}

TEST(DiskGrid, SecondMomentAgainstArea) {
  const auto g = disk_grid(64, 128, 0.0);
  const double v = g.integrate([](Complex z) { return std::norm(z); }).real() / kPi;
  EXPECT_NEAR(v, 0.5, 1e-12);
}

TEST(DiskGrid, LiteralWeightMoments) {
  // int (1-|z|)^a |z|^{2k} dA = 2 pi B(2k+2, a+1)
  for (double a : {0.0, 3.0, -0.5}) {
    const auto g = disk_grid(32, 64, a, WeightVariant::OneMinusMod);
    for (int k = 0; k < 10; ++k) {
      const double q = g.integrate([k](Complex z) { return std::pow(std::norm(z), k); }).real();
      const double exact = 2.0 * kPi * std::exp(std::lgamma(2 * k + 2) + std::lgamma(a + 1) - std::lgamma(2 * k + a + 3));
      EXPECT_NEAR(q, exact, 1e-12 * exact) << a << " " << k;
    }
  }
}

TEST(DiskGrid, WeightsPositiveAndNodesInside) {
  const auto g = disk_grid(16, 32, 1.5, WeightVariant::OneMinusMod);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    EXPECT_GT(g.weights[i], 0.0);
    EXPECT_LT(std::abs(g.nodes[i]), 1.0);
  }
}

TEST(DiskGrid, Preconditions) {
  try {
    disk_grid(2, 512, 0.0);
    FAIL();
  } catch (const LabError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidCount);
  }
  try {
    disk_grid(8, 8, -1.0);
    FAIL();
  } catch (const LabError& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadWeight);
  }
}

TEST(DiskGrid, RefinementConverges) {
  auto f = [](Complex z) { return std::norm(1.0 / (1.0 - 0.5 * z)); };
  for (auto v : {WeightVariant::OneMinusMod, WeightVariant::OneMinusModSq}) {
    const double a = disk_grid(64, 128, 1.0, v).integrate(f).real();
    const double b = disk_grid(128, 256, 1.0, v).integrate(f).real();
    EXPECT_LT(std::abs(b - a) / std::abs(b), 1e-8);
  }
}

TEST(CircleGrid, NodesOnCircleAndWeightsSumToOne) {
  const auto g = circle_grid(0.3, 100);
  for (const auto& z : g.nodes) EXPECT_LT(std::abs(std::abs(z) - 0.7), 1e-14);
  EXPECT_NEAR(g.total_weight(), 1.0, 1e-15);
}

TEST(CirclePMean, MonomialSquare) {
  for (int k : {0, 1, 4}) {
    for (double r : {0.05, 0.3, 0.9}) {
      EXPECT_NEAR(circle_p_mean(monomial(k), r, 2.0), std::pow(1.0 - r, 2 * k), 1e-14);
    }
  }
}

TEST(CirclePMean, ConstantGivesModulusPower) {
  const auto c = polynomial({Complex(3.0, 4.0)}, "5");
  for (double p : {0.5, 1.0, 2.0, 3.3}) EXPECT_NEAR(circle_p_mean(c, 0.4, p), std::pow(5.0, p), 1e-12 * std::pow(5.0, p));
}

TEST(CirclePMean, GeometricSeriesParseval) {
  // f = 1 / (1 - 0.9 z) through its Taylor series and through the sampled evaluator
  const auto f = extremal(0.9, 0.0, 1.0);
  const double exact = 1.0 / (1.0 - 0.855 * 0.855);
  EXPECT_NEAR(circle_p_mean(f, 0.05, 2.0), exact, 1e-10);
  SampledFunction bare;
  bare.eval = f.eval;
  EXPECT_NEAR(circle_p_mean(bare, 0.05, 2.0), exact, 1e-10);
  EXPECT_NEAR(series_circle_mean(*f.series, 0.95, 2.0), exact, 1e-10);
}

TEST(CirclePMean, NonincreasingInLevelForHolomorphic) {
  std::vector<SampledFunction> fs = {monomial(3), extremal(0.9, 0.0, 1.0),
                                     generate(FamilySpec::random_poly(6, 1, 9)).front()};
  for (const auto& f : fs) {
    for (double p : {0.5, 2.0}) {
      double prev = std::numeric_limits<double>::infinity();
      for (double r = 0.02; r < 0.99; r += 0.07) {
        const double v = circle_p_mean(f, r, p);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, prev * (1.0 + 1e-12)) << f.description << " r=" << r;
        prev = v;
      }
    }
  }
}

TEST(RadialIntegral, LinearIntegrand) {
  EXPECT_NEAR(radial_integral([](double r) { return r; }, 1.0), 1.0, 1e-10);
}

TEST(RadialIntegral, SquareRootPowerRule) {
  EXPECT_NEAR(radial_integral([](double r) { return std::sqrt(r); }, 0.5), std::sqrt(2.0), 1e-8);
}

TEST(RadialIntegral, ConstantDiverges) {
  try {
    radial_integral([](double) { return 1.0; }, 1.0);
    FAIL();
  } catch (const LabError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivergenceSuspected);
  }
}

TEST(RadialIntegral, SlowPowerDecay) {
  // int_0^1 r^{0.1} dr / r = 10; the march runs out to u = -log r ~ 370
  EXPECT_NEAR(radial_integral([](double r) { return std::pow(r, 0.1); }, 1.0), 10.0, 1e-8);
}

TEST(RadialSup, FindsInteriorMaximum) {
  // r (1 - r) peaks at 1/2 with value 1/4
  EXPECT_NEAR(radial_sup([](double r) { return r * (1.0 - r); }, 1.0), 0.25, 1e-10);
}

TEST(BoundaryWeight, DistanceFormMatchesRadiusForm) {
  for (double s : {0.5, 0.1, 0.01}) {
    for (auto v : {WeightVariant::OneMinusMod, WeightVariant::OneMinusModSq}) {
      EXPECT_NEAR(boundary_weight_from_distance(s, 1.7, v), boundary_weight(1.0 - s, 1.7, v), 1e-13);
    }
  }
  EXPECT_TRUE(std::isfinite(boundary_weight_from_distance(1e-300, -0.5, WeightVariant::OneMinusMod)));
}
