#include <gtest/gtest.h>

#include <cmath>

#include "bergman/experiments.hpp"
#include "bergman/families.hpp"
#include "bergman/verifiers.hpp"

using namespace bergman;

namespace {

SweepSpec short_sweep(double hi, double lo, std::size_t n) {
  SweepSpec s;
  s.distances = log_space_down(hi, lo, n);
  return s;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const LabError& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(DecideVerdict, Table) {
  EXPECT_EQ(decide_verdict(0.0, 0.01, 0.1, 0.05), Verdict::Bounded);
  EXPECT_EQ(decide_verdict(0.1, 0.01, 0.1, 0.05), Verdict::Bounded);
  EXPECT_EQ(decide_verdict(-0.5, 0.01, 0.1, 0.05), Verdict::GrowthDetected);
  EXPECT_EQ(decide_verdict(0.5, 0.01, 0.1, 0.05), Verdict::Inconclusive);
  EXPECT_EQ(decide_verdict(0.0, 0.2, 0.1, 0.05), Verdict::Inconclusive);
  EXPECT_EQ(decide_verdict(std::nan(""), 0.0, 0.1, 0.05), Verdict::Inconclusive);
}

TEST(FitTailSlope, RecoversPowerLaw) {
  std::vector<TrendPoint> pts;
  for (double d : log_space_down(1e-1, 1e-4, 20)) pts.push_back({d, 3.0 * std::pow(d, -0.7)});
  EXPECT_NEAR(fit_tail_slope(pts), -0.7, 1e-12);
  EXPECT_NEAR(fit_envelope_slope(pts), -0.7, 1e-12);
}

TEST(FitTailSlope, InfiniteValueIsGrowth) {
  std::vector<TrendPoint> pts = {{0.1, 1.0}, {0.01, kInfinity}};
  EXPECT_EQ(fit_tail_slope(pts), -kInfinity);
}

TEST(RunningSup, DecayingFamilyHasFlatEnvelope) {
  std::vector<TrendPoint> pts;
  for (double d : log_space_down(1e-1, 1e-4, 10)) pts.push_back({d, std::pow(d, 0.5)});
  const auto env = running_sup(pts);
  for (const auto& p : env) EXPECT_EQ(p.value, std::pow(0.1, 0.5));
  EXPECT_NEAR(fit_envelope_slope(pts), 0.0, 1e-12);
  EXPECT_NEAR(fit_tail_slope(pts), 0.5, 1e-12);
}

TEST(Lemma1a, CenterRatioBetweenOneAndTwoNormalisers) {
  // xi = 0: the kernel is the constant c_norm and rho(xi) = 1
  for (double r : {0.5, 0.1, 1e-3}) {
    const double c = KernelSpec(0.0).c_norm();
    const double ratio = lemma1a_circle_integral(0.0, r, 1.0) * std::pow(1.0 + r, 1.0);
    EXPECT_NEAR(lemma1a_circle_integral(0.0, r, 1.0), c, 1e-13);
    EXPECT_GE(ratio, c);
    EXPECT_LE(ratio, 2.0 * c);
  }
}

TEST(Lemma1a, RatioFlatAlongDiagonal) {
  auto ratio = [](double d) { return lemma1a_circle_integral(2.0, d, d) * std::pow(2.0 * d, 3.0); };
  const double a = ratio(0.01), b = ratio(0.001);
  EXPECT_TRUE(std::isfinite(a));
  EXPECT_LT(std::abs(b - a) / a, 0.25);
}

TEST(Lemma1a, SmallSweepBounded) {
  SweepSpec s = short_sweep(1e-1, 1e-3, 6);
  const auto rep = verify_lemma1a(0.0, s);
  EXPECT_EQ(rep.samples.size(), 36u);
  EXPECT_EQ(rep.verdict, Verdict::Bounded) << rep.tail_slope << " " << rep.grid_stability;
}

TEST(Lemma1b, CenterValueExactAndStable) {
  // xi = 0: 2 c int_0^1 (1-s) ds = c = 3/pi for t = 2, sigma = 1
  const double base = lemma1b_integral(2.0, 1.0, 1.0);
  EXPECT_NEAR(base, 3.0 / kPi, 1e-10);
  const double fine = lemma1b_integral(2.0, 1.0, 1.0, refined(SpaceOptions{}).radial);
  EXPECT_LT(std::abs(fine - base) / base, 1e-9);
}

TEST(Lemma1b, SweepBoundedAndViolationGrows) {
  const auto ok = verify_lemma1b(2.0, 1.0, short_sweep(1e-1, 1e-4, 8));
  EXPECT_EQ(ok.verdict, Verdict::Bounded);
  const auto bad = verify_lemma1b(1.0, 2.5, short_sweep(1e-1, 1e-4, 8), true);
  EXPECT_EQ(bad.verdict, Verdict::GrowthDetected);
  EXPECT_EQ(code_of([] { verify_lemma1b(1.0, 2.5); }), ErrorCode::InvalidHypothesis);
  EXPECT_EQ(code_of([] { verify_lemma1b(1.0, 0.0); }), ErrorCode::InvalidHypothesis);
}

TEST(Lemma2, LimitOneThird) {
  for (double r : {1e-3, 1e-5}) EXPECT_NEAR(lemma2_F(1.0, 3.0, 1.0, r), 1.0 / 3.0, 2.0 * r);
  const auto rep = verify_lemma2(1.0, 3.0, 1.0, short_sweep(1e-1, 1e-4, 10));
  EXPECT_EQ(rep.verdict, Verdict::Bounded);
  EXPECT_NEAR(rep.max_ratio, 1.0 / 3.0, 0.02 / 3.0);
}

TEST(Lemma2, ShortRangeBounded) {
  EXPECT_EQ(verify_lemma2(1.0, 3.0, 0.5, short_sweep(1e-1, 1e-4, 10)).verdict, Verdict::Bounded);
}

TEST(Lemma2, BoundaryCaseClosedForm) {
  // r^2 int_0^1 (r+R)^{-3} dR = (1 - r^2 / (1+r)^2) / 2
  for (double r : {0.1, 1e-3}) {
    EXPECT_NEAR(lemma2_F(2.0, 2.0, 1.0, r), 0.5 * (1.0 - r * r / ((1.0 + r) * (1.0 + r))), 1e-9);
  }
}

TEST(Lemma3, ConstantAtOriginClosedForm) {
  // z = 0, s = 1, p = 1/2: LHS = (1/3)^{1/2}, t = -1/2, RHS = 2 / ((t+1)(t+2)) = 8/3
  Lemma3Params prm;
  prm.p = 0.5;
  prm.s = 1.0;
  const auto one = polynomial({1.0}, "1");
  const auto [l, r] = lemma3_sides(one, prm, 0.0);
  EXPECT_NEAR(l, std::sqrt(1.0 / 3.0), 1e-9);
  EXPECT_NEAR(r, 8.0 / 3.0, 1e-8);
  const auto [lf, rf] = lemma3_sides(one, prm, 0.0, refined(SpaceOptions{}));
  EXPECT_LT(std::abs(lf / rf - l / r) / (l / r), 0.01);
}

TEST(Lemma3, DegenerateTypeRejected) {
  // s = 0, p = 1/2 gives t = -1
  Lemma3Params prm;
  prm.p = 0.5;
  prm.s = 0.0;
  EXPECT_EQ(code_of([&] { verify_lemma3(prm, generate(FamilySpec::monomials(2)), short_sweep(1e-1, 1e-2, 3)); }),
            ErrorCode::InvalidHypothesis);
}

TEST(Lemma3, MonomialSweepStable) {
  Lemma3Params prm;
  prm.p = 0.5;
  prm.s = 1.0;
  const auto rep = verify_lemma3(prm, generate(FamilySpec::monomials(4)), short_sweep(1e-1, 1e-2, 5));
  EXPECT_EQ(rep.verdict, Verdict::Bounded);
  EXPECT_TRUE(std::isfinite(rep.max_ratio));
}

TEST(Embedding, MismatchedExponentRejected) {
  EmbeddingParams e;
  e.p0 = 1.0;
  e.p1 = 2.0;
  e.delta0 = 1.0;
  e.delta0_prime = 2.5;  // the relation forces 3
  EXPECT_EQ(code_of([&] { verify_embedding(EmbeddingKind::Prop1, e, generate(FamilySpec::monomials(2))); }),
            ErrorCode::InvalidHypothesis);
  e.delta0_prime = 3.0;
  EXPECT_NO_THROW(resolve(EmbeddingKind::Prop1, e));
  EmbeddingParams c;
  c.p = 0.5;
  c.alpha = 0.0;
  EXPECT_EQ(resolve(EmbeddingKind::Cor1, c).beta, 2.0);
}

TEST(ScaleInvariance, RatiosUnchangedByFactorFive) {
  const SweepSpec sweep = short_sweep(1e-1, 1e-2, 3);
  const auto f = extremal(0.9, 1.0, 5.0);
  const auto g = scale(f, 5.0);
  EmbeddingParams e;
  for (auto kind : {EmbeddingKind::Prop2, EmbeddingKind::Cor1}) {
    EmbeddingParams prm = e;
    if (kind == EmbeddingKind::Cor1) prm.p = 0.5;
    const double a = verify_embedding(kind, prm, {f}, sweep).max_ratio;
    const double b = verify_embedding(kind, prm, {g}, sweep).max_ratio;
    EXPECT_NEAR(b, a, 1e-8 * a);
  }
  Lemma3Params prm;
  prm.p = 0.5;
  prm.s = 1.0;
  const auto [l1, r1] = lemma3_sides(monomial(2), prm, 0.9);
  const auto [l2, r2] = lemma3_sides(scale(monomial(2), 5.0), prm, 0.9);
  EXPECT_NEAR(l2 / r2, l1 / r1, 1e-8 * l1 / r1);
}

TEST(Report, JsonRoundTrip) {
  const auto rep = verify_lemma2(1.0, 3.0, 1.0, short_sweep(1e-1, 1e-3, 4));
  const auto back = report_from_json(to_json(rep));
  EXPECT_TRUE(same_report(rep, back));
  EXPECT_EQ(to_json(rep).dump(), to_json(back).dump());
  const auto csv = to_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "r,ratio");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}
