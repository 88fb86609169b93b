#include <gtest/gtest.h>

#include <cmath>

#include "bergman/kernels.hpp"
#include "bergman/quadrature.hpp"

using namespace bergman;

TEST(HenkinRamirez, Examples) {
  EXPECT_EQ(henkin_ramirez(0.0, Complex(0.3, 0.4)), Complex(1.0, 0.0));
  EXPECT_NEAR(std::abs(henkin_ramirez(0.6, 0.6) - 0.64), 0.0, 1e-15);
  const Complex b = std::polar(1.0, 1.1);
  EXPECT_NEAR(std::abs(henkin_ramirez(b, b)), 0.0, 1e-15);
}

TEST(HenkinRamirez, BidiskComponentwise) {
  const auto bd = DomainModel::bidisk();
  const std::vector<Complex> z = {0.5, Complex(0.0, 0.5)}, xi = {0.5, Complex(0.0, 0.5)};
  const auto v = henkin_ramirez(bd, z, xi);
  EXPECT_NEAR(std::abs(v[0] - 0.75), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v[1] - 0.75), 0.0, 1e-15);
  EXPECT_THROW(henkin_ramirez(DomainModel::unit_ball(2), z, xi), LabError);
}

TEST(KernelTypeT, OriginAndZeroPairing) {
  EXPECT_NEAR(std::abs(kernel_type_t(0.0, 0.0, KernelSpec(0.0)) - 1.0 / kPi), 0.0, 1e-15);
  for (double t : {0.0, 1.0, 2.5}) {
    const KernelSpec k(t);
    EXPECT_NEAR(std::abs(kernel_type_t(0.5, 0.0, k) - k.c_norm()), 0.0, 1e-15);
  }
}

TEST(KernelTypeT, BoundHoldsWithEquality) {
  SplitMix64 rng(17);
  for (double t : {0.0, 2.0, 0.7}) {
    const KernelSpec k(t);
    for (int i = 0; i < 1000; ++i) {
      const Complex z = std::polar(std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
      const Complex xi = std::polar(std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
      const double ratio = std::abs(kernel_type_t(z, xi, k)) * std::pow(std::abs(henkin_ramirez(z, xi)), t + 2.0);
      ASSERT_NEAR(ratio, k.c_norm(), 1e-12 * k.c_norm());
    }
  }
}

TEST(KernelTypeT, NearDiagonalGrowth) {
  const Complex w = std::polar(0.99, 0.4);
  const KernelSpec k(2.0);
  const double expected = 3.0 / kPi * std::pow(1.0 - 0.99 * 0.99, -4.0);
  EXPECT_NEAR(std::abs(kernel_type_t(w, w, k)), expected, 1e-9 * expected);
}

TEST(KernelTypeT, HolomorphicInFirstArgument) {
  SplitMix64 rng(4);
  for (double t : {0.0, 1.5, 3.0}) {
    const KernelSpec k(t);
    for (int i = 0; i < 20; ++i) {
      const Complex xi = std::polar(0.9 * rng.uniform(), 2.0 * kPi * rng.uniform());
      const double res = holomorphy_residual([&](Complex z) { return kernel_type_t(z, xi, k); }, 100 + i);
      EXPECT_LT(res, 1e-6);
    }
  }
}

TEST(KernelSpec, RejectsInvalidType) {
  EXPECT_THROW(KernelSpec(-1.0), LabError);
  EXPECT_THROW(KernelSpec(0.0, 0), LabError);
  EXPECT_EQ(KernelSpec(1.0, 1, Normalization::None).c_norm(), 1.0);
  EXPECT_EQ(KernelSpec(1.0, 2).t_tilde(), 4.0);
}

TEST(ProductKernel, Examples) {
  const auto a = product_kernel_D({0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
  EXPECT_NEAR(std::abs(a - 1.0 / (kPi * kPi)), 0.0, 1e-15);
  const auto b = product_kernel_D({0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}, WeightVariant::OneMinusMod);
  EXPECT_NEAR(std::abs(b - 1.0 / (kPi * kPi)), 0.0, 1e-15);
}

TEST(ProductKernel, FactorizesExactly) {
  SplitMix64 rng(8);
  auto pt = [&] { return std::polar(0.95 * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform()); };
  for (int i = 0; i < 100; ++i) {
    const std::array<Complex, 2> z = {pt(), pt()}, xi = {pt(), pt()};
    const std::array<double, 2> alpha = {2.0 * rng.uniform() - 0.5, 3.0 * rng.uniform()};
    for (auto v : {WeightVariant::OneMinusMod, WeightVariant::OneMinusModSq}) {
      const Complex whole = product_kernel_D(z, xi, alpha, v);
      const Complex parts = kernel_factor_D(xi[0], z[0], alpha[0], v) * kernel_factor_D(xi[1], z[1], alpha[1], v);
      EXPECT_EQ(whole, parts);
    }
  }
}

TEST(ModulusPowerCircleMean, MatchesDirectQuadrature) {
  for (double rho : {0.0, 0.3, 0.9, 0.99}) {
    for (double e : {-4.0, -2.5, -1.0, 1.0, 0.5}) {
      CircleMeanOptions opt;
      opt.rel_tol = 1e-13;
      const double direct =
          circle_average([&](Complex z) { return std::pow(std::abs(1.0 - z), e); }, rho, opt);
      EXPECT_NEAR(modulus_power_circle_mean(rho, e), direct, 1e-10 * direct) << rho << " " << e;
    }
  }
}

TEST(ModulusPowerCircleMean, SquareModulusClosedForm) {
  // mean |1 - rho e^{i theta}|^{-2} = 1 / (1 - rho^2)
  for (double rho : {0.5, 0.99, 0.9999}) {
    EXPECT_NEAR(modulus_power_circle_mean(rho, -2.0), 1.0 / (1.0 - rho * rho), 1e-10 / (1.0 - rho * rho));
  }
}
