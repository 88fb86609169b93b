#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "bergman/core.hpp"
#include "bergman/fft.hpp"
#include "bergman/gauss_jacobi.hpp"

using namespace bergman;

TEST(SplitMix64, SameSeedSameStream) {
  SplitMix64 a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(SplitMix64, UniformInUnitInterval) {
  SplitMix64 rng(7);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000.0, 0.5, 0.02);
}

TEST(PairwiseSum, MatchesExactSumOfSmallIntegers) {
  std::vector<double> v(1000);
  std::iota(v.begin(), v.end(), 1.0);
  EXPECT_EQ(pairwise_sum(v), 500500.0);
}

TEST(NextPow2, RoundsUp) {
  EXPECT_EQ(next_pow2(1), 1u);
  EXPECT_EQ(next_pow2(5), 8u);
  EXPECT_EQ(next_pow2(64), 64u);
  EXPECT_EQ(next_pow2(65), 128u);
}

TEST(ParallelMap, ResultIndependentOfThreadCount) {
  auto fn = [](std::size_t i) { return std::sin(static_cast<double>(i)) * 1e3; };
  const auto one = parallel_map<double>(257, fn, Execution{1});
  const auto eight = parallel_map<double>(257, fn, Execution{8});
  EXPECT_EQ(one, eight);
}

TEST(ParallelMap, PropagatesErrors) {
  auto fn = [](std::size_t i) -> int {
    if (i == 5) throw LabError(ErrorCode::InvalidArgument, "boom");
    return 0;
  };
  EXPECT_THROW(parallel_map<int>(10, fn, Execution{4}), LabError);
}

TEST(LogSpaceDown, EndpointsAndMonotone) {
  const auto v = log_space_down(1e-1, 1e-4, 20);
  ASSERT_EQ(v.size(), 20u);
  EXPECT_EQ(v.front(), 1e-1);
  EXPECT_EQ(v.back(), 1e-4);
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_LT(v[i], v[i - 1]);
  EXPECT_THROW(log_space_down(1e-4, 1e-1, 5), LabError);
}

TEST(LabError, CarriesCode) {
  try {
    require(false, ErrorCode::BadWeight, "x");
    FAIL();
  } catch (const LabError& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadWeight);
    EXPECT_NE(std::string(e.what()).find("BadWeight"), std::string::npos);
  }
}

TEST(GaussJacobi, IntegratesJacobiMoments) {
  // int_0^1 x^k (1-x)^a x^b dx = B(k+b+1, a+1)
  for (double a : {-0.5, 0.0, 2.5}) {
    for (double b : {0.0, 1.0}) {
      const auto rule = gauss_jacobi_unit(12, a, b);
      for (int k = 0; k < 20; ++k) {
        double q = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) q += rule.weights[i] * std::pow(rule.nodes[i], k);
        const double exact = std::exp(std::lgamma(k + b + 1) + std::lgamma(a + 1) - std::lgamma(k + b + a + 2));
        EXPECT_NEAR(q, exact, 1e-13 * std::max(1.0, exact)) << "a=" << a << " b=" << b << " k=" << k;
      }
    }
  }
}

TEST(GaussJacobi, NodesInsideOpenInterval) {
  const auto rule = gauss_legendre_unit(64);
  for (double x : rule.nodes) {
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(Fft, SynthesizeAnalyzeRoundTrip) {
  std::vector<Complex> c(32);
  SplitMix64 rng(3);
  for (auto& v : c) v = {rng.uniform() - 0.5, rng.uniform() - 0.5};
  const auto back = analyze(synthesize(c));
  for (std::size_t k = 0; k < c.size(); ++k) EXPECT_NEAR(std::abs(back[k] - c[k]), 0.0, 1e-14);
}

TEST(Fft, SynthesizeEvaluatesPolynomialOnCircle) {
  std::vector<Complex> c = {1.0, 2.0, 0.0, Complex(0.0, 1.0), 0.0, 0.0, 0.0, 0.0};
  const auto v = synthesize(c);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Complex z = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / 8.0);
    EXPECT_NEAR(std::abs(v[j] - (1.0 + 2.0 * z + Complex(0.0, 1.0) * z * z * z)), 0.0, 1e-13);
  }
}
