#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "bergman/families.hpp"
#include "bergman/operators.hpp"
#include "bergman/spaces.hpp"
#include "bergman/verifiers.hpp"

namespace bergman {

/// (s, m) for f_a = (1-a^2)^s / (1-az)^m with norm comparable to 1 as a -> 1.
/// A norm whose p-th power behaves like int (1-|z|)^{c-2} |f|^p dA scales as
/// (1-a)^{s + c/p - m} once m p > c, so m is the least integer above c / p
/// and s = m - c / p. Mixed A^{p,q}_delta has c = 1 + delta, A^p_alpha has c = alpha + 2.
struct ExtremalExponents {
  double s = 0.0;
  double m = 0.0;
};

inline ExtremalExponents extremal_exponents(double threshold_over_p) {
  const double m = std::floor(threshold_over_p + 1e-9) + 1.0;
  return {m - threshold_over_p, m};
}
inline ExtremalExponents extremal_exponents_mixed(double p, double delta) {
  return extremal_exponents((1.0 + delta) / p);
}
inline ExtremalExponents extremal_exponents_bergman(double p, double alpha) {
  return extremal_exponents((alpha + 2.0) / p);
}

/// Family label used to group members when fitting trends: the description
/// up to the first '(' or '^'.
inline std::string family_group(const std::string& description) {
  const auto cut = description.find_first_of("(^");
  return description.substr(0, cut);
}

namespace detail {

struct GroupTrend {
  std::string group;
  double slope = std::numeric_limits<double>::quiet_NaN();      // running-sup envelope
  double raw_slope = std::numeric_limits<double>::quiet_NaN();  // ratios themselves
};

/// Slopes per family group; groups without a boundary parameter are skipped.
inline std::vector<GroupTrend> group_slopes(const std::vector<std::string>& groups, const std::vector<double>& distance,
                                            const std::vector<double>& values) {
  std::vector<GroupTrend> out;
  std::vector<std::string> order;
  for (const auto& g : groups)
    if (std::find(order.begin(), order.end(), g) == order.end()) order.push_back(g);
  for (const auto& g : order) {
    std::vector<TrendPoint> pts;
    for (std::size_t i = 0; i < groups.size(); ++i)
      if (groups[i] == g && !std::isnan(distance[i])) pts.push_back({distance[i], values[i]});
    if (pts.size() >= 2) out.push_back({g, fit_envelope_slope(pts), fit_tail_slope(pts)});
  }
  return out;
}

/// Growth anywhere dominates; otherwise the slope of largest magnitude.
inline double worst_slope(const std::vector<GroupTrend>& trends, double slope_tol) {
  double worst = 0.0, growth = 0.0;
  for (const auto& t : trends) {
    if (std::isnan(t.slope)) return t.slope;
    growth = std::min(growth, t.slope);
    if (std::abs(t.slope) > std::abs(worst)) worst = t.slope;
  }
  return growth < -slope_tol ? growth : worst;
}

}  // namespace detail

// ---------------------------------------------------------------- embeddings

enum class EmbeddingKind { Prop1, Cor1, Prop2 };

inline const char* to_string(EmbeddingKind k) {
  switch (k) {
    case EmbeddingKind::Prop1: return "prop1";
    case EmbeddingKind::Cor1: return "cor1";
    case EmbeddingKind::Prop2: return "prop2";
  }
  return "prop1";
}

/// Exponents of the three inclusions (n = 1). NaN fields are derived.
///  Prop1: A^{p0,q}_{delta0} into A^{p1,q}_{delta0'}, (1 + delta0') / p1 = (1 + delta0) / p0
///  Cor1:  A^p_alpha into A^1_beta, beta = (2 + alpha) / p - 2
///  Prop2: A^{p,q0}_delta into A^{p,q1}_delta, q0 < q1 <= inf
struct EmbeddingParams {
  double p = 2.0, q0 = 1.0, q1 = 2.0, delta = 1.0;
  double p0 = 1.0, p1 = 2.0, q = 1.0, delta0 = 1.0;
  double delta0_prime = std::numeric_limits<double>::quiet_NaN();
  double alpha = 0.0;
  double beta = std::numeric_limits<double>::quiet_NaN();
  WeightVariant variant = WeightVariant::OneMinusMod;

  double derived_delta0_prime() const { return p1 * (1.0 + delta0) / p0 - 1.0; }
  double derived_beta() const { return (2.0 + alpha) / p - 2.0; }
};

/// Validates the exponent relation and fills derived fields.
inline EmbeddingParams resolve(EmbeddingKind kind, EmbeddingParams e) {
  switch (kind) {
    case EmbeddingKind::Prop1: {
      require(e.p0 > 0.0 && e.p0 < e.p1 && std::isfinite(e.p1), ErrorCode::InvalidHypothesis, "need 0 < p0 < p1 < inf");
      require(e.q > 0.0 && e.delta0 > 0.0, ErrorCode::InvalidHypothesis, "need q > 0 and delta0 > 0");
      const double d = e.derived_delta0_prime();
      if (!std::isnan(e.delta0_prime))
        require(std::abs(e.delta0_prime - d) <= 1e-12, ErrorCode::InvalidHypothesis,
                "delta0' violates (1 + delta0') / p1 = (1 + delta0) / p0");
      e.delta0_prime = d;
      require(d > 0.0, ErrorCode::InvalidHypothesis, "need delta0' > 0");
      break;
    }
    case EmbeddingKind::Cor1: {
      require(e.p > 0.0 && e.p <= 1.0 && e.alpha > -1.0, ErrorCode::InvalidHypothesis, "need 0 < p <= 1, alpha > -1");
      const double b = e.derived_beta();
      if (!std::isnan(e.beta))
        require(std::abs(e.beta - b) <= 1e-12, ErrorCode::InvalidHypothesis, "beta violates (2 + alpha) / p - 2");
      e.beta = b;
      break;
    }
    case EmbeddingKind::Prop2:
      require(e.p > 0.0 && e.delta > 0.0, ErrorCode::InvalidHypothesis, "need p > 0 and delta > 0");
      require(e.q0 > 0.0 && e.q0 < e.q1, ErrorCode::InvalidHypothesis, "need 0 < q0 < q1 <= inf");
      break;
  }
  return e;
}

inline Json embedding_json(EmbeddingKind kind, const EmbeddingParams& e) {
  switch (kind) {
    case EmbeddingKind::Prop1:
      return {{"p0", e.p0}, {"p1", e.p1}, {"q", detail::number_to_json(e.q)}, {"delta0", e.delta0},
              {"delta0_prime", e.delta0_prime}};
    case EmbeddingKind::Cor1:
      return {{"p", e.p}, {"alpha", e.alpha}, {"beta", e.beta}, {"variant", to_string(e.variant)}};
    case EmbeddingKind::Prop2:
      return {{"p", e.p}, {"q0", detail::number_to_json(e.q0)}, {"q1", detail::number_to_json(e.q1)},
              {"delta", e.delta}};
  }
  return Json::object();
}

/// Source and target norms of an inclusion.
inline std::pair<double, double> embedding_norms(EmbeddingKind kind, const EmbeddingParams& e, const SampledFunction& f,
                                                 const SpaceOptions& o) {
  switch (kind) {
    case EmbeddingKind::Prop1:
      return {mixed_norm(f, {e.p0, e.q, e.delta0, 1.0}, o), mixed_norm(f, {e.p1, e.q, e.delta0_prime, 1.0}, o)};
    case EmbeddingKind::Cor1:
      return {bergman_norm(f, e.p, e.alpha, e.variant, o), bergman_integral(f, 1.0, e.beta, e.variant, o)};
    case EmbeddingKind::Prop2:
      return {mixed_norm(f, {e.p, e.q0, e.delta, 1.0}, o), mixed_norm(f, {e.p, e.q1, e.delta, 1.0}, o)};
  }
  return {0.0, 0.0};
}

/// Exponents of the extremal members matched to the source norm.
inline ExtremalExponents embedding_extremal_exponents(EmbeddingKind kind, const EmbeddingParams& e) {
  switch (kind) {
    case EmbeddingKind::Prop1: return extremal_exponents_mixed(e.p0, e.delta0);
    case EmbeddingKind::Cor1: return extremal_exponents_bergman(e.p, e.alpha);
    case EmbeddingKind::Prop2: return extremal_exponents_mixed(e.p, e.delta);
  }
  return {};
}

/// Monomials k <= max_k plus extremal members a = 1 - d over the sweep distances.
inline std::vector<SampledFunction> embedding_family(EmbeddingKind kind, const EmbeddingParams& e,
                                                     const SweepSpec& sweep, int max_k = 16) {
  auto family = generate(FamilySpec::monomials(max_k));
  const auto ex = embedding_extremal_exponents(kind, resolve(kind, e));
  std::vector<double> radii;
  for (double d : sweep.distances) radii.push_back(1.0 - d);
  for (auto& f : generate(FamilySpec::extremal(ex.s, ex.m, radii))) family.push_back(std::move(f));
  return family;
}

/// ratio = target norm / source norm for every member.
inline BoundednessReport verify_embedding(EmbeddingKind kind, const EmbeddingParams& params,
                                          const std::vector<SampledFunction>& family, const SweepSpec& sweep = {}) {
  const EmbeddingParams e = resolve(kind, params);
  require(!family.empty(), ErrorCode::InvalidArgument, "embedding check needs a nonempty family");
  sweep.validate();
  auto norms = [&](const SpaceOptions& o) {
    return parallel_map<std::pair<double, double>>(
        family.size(), [&](std::size_t i) { return embedding_norms(kind, e, family[i], o); }, sweep.exec);
  };
  auto ratios_of = [](const std::vector<std::pair<double, double>>& v) {
    std::vector<double> out;
    for (const auto& [src, dst] : v) out.push_back(dst / src);
    return out;
  };
  const auto base = norms(sweep.space);
  const auto values = ratios_of(base);
  const double stability = relative_change(values, ratios_of(norms(refined(sweep.space))));

  BoundednessReport rep;
  rep.experiment = std::string("embedding_") + to_string(kind);
  rep.config = {{"which", to_string(kind)}, {"params", embedding_json(kind, e)}, {"family_size", family.size()},
                {"sweep", detail::sweep_json(sweep)}};
  std::vector<std::string> groups;
  std::vector<double> dist;
  for (std::size_t i = 0; i < family.size(); ++i) {
    rep.samples.push_back({{{"member", static_cast<double>(i)},
                            {"boundary_distance", family[i].boundary_distance},
                            {"source_norm", base[i].first},
                            {"target_norm", base[i].second}},
                           values[i],
                           family[i].description});
    groups.push_back(family_group(family[i].description));
    dist.push_back(family[i].boundary_distance);
  }
  const auto trends = detail::group_slopes(groups, dist, values);
  rep.max_ratio = max_finite(rep.samples);
  rep.tail_slope = detail::worst_slope(trends, sweep.slope_tol);
  rep.grid_stability = stability;
  for (const auto& t : trends) {
    rep.metrics.emplace_back("tail_slope[" + t.group + "]", t.slope);
    rep.metrics.emplace_back("raw_slope[" + t.group + "]", t.raw_slope);
  }
  const auto ex = embedding_extremal_exponents(kind, e);
  rep.metrics.emplace_back("extremal_s", ex.s);
  rep.metrics.emplace_back("extremal_m", ex.m);
  rep.verdict = decide_verdict(rep.tail_slope, stability, sweep.slope_tol, sweep.stability_tol);
  return rep;
}

// ---------------------------------------------------------------- theorem1

/// T_alpha on A^{p,q}_beta (mixed norm with delta = beta, r0 = 1).
struct Theorem1Params {
  double alpha = 3.0;
  double p = 0.5;
  double q = 0.5;
  double beta = 1.0;
  WeightVariant variant = WeightVariant::OneMinusMod;
};

/// Default theorem1 family: monomials k <= 12 and extremal members at
/// |a| = 0.9, 0.99, 0.999, 0.9999 with exponents matched to the source norm.
inline std::vector<SampledFunction> theorem1_family(const Theorem1Params& prm, int max_k = 12,
                                                    std::vector<double> radii = {0.9, 0.99, 0.999, 0.9999}) {
  auto family = generate(FamilySpec::monomials(max_k));
  const auto ex = extremal_exponents_mixed(prm.p, prm.beta);
  for (auto& f : generate(FamilySpec::extremal(ex.s, ex.m, std::move(radii)))) family.push_back(std::move(f));
  return family;
}

/// ratio = ||T_alpha f|| / ||f|| in A^{p,q}_beta. T_alpha f is taken in closed
/// form through its coefficient multipliers when f carries a Taylor series and
/// by modal quadrature otherwise. The report also tracks
/// int |f| dv_alpha / ||f||: if it grows, the integral defining T_alpha f is not
/// controlled on the source space and the verdict is GrowthDetected.
inline BoundednessReport boundedness_theorem1(const Theorem1Params& prm, const std::vector<SampledFunction>& family,
                                              const SweepSpec& sweep = {}, GridSize grid = {}) {
  require(prm.p > 0.0 && prm.p <= 1.0 && prm.q > 0.0 && prm.q <= 1.0, ErrorCode::InvalidHypothesis,
          "theorem1 needs 0 < p, q <= 1");
  require(prm.beta > 0.0, ErrorCode::InvalidHypothesis, "theorem1 needs beta > 0");
  require(prm.alpha > -1.0, ErrorCode::BadWeight, "alpha must exceed -1");
  require(!family.empty(), ErrorCode::InvalidArgument, "theorem1 needs a nonempty family");
  const DiskProjection T(prm.alpha, prm.variant, grid);
  const MixedParams norm{prm.p, prm.q, prm.beta, 1.0};

  struct Row {
    double source = 0, image = 0, absolute = 0;
    std::string error;
  };
  auto rows = [&](const SpaceOptions& o) {
    return parallel_map<Row>(
        family.size(),
        [&](std::size_t i) {
          Row row;
          try {
            row.source = mixed_norm(family[i], norm, o);
            row.image = mixed_norm(T.image(family[i]), norm, o);
            row.absolute = bergman_integral(family[i], 1.0, prm.alpha, prm.variant, o);
          } catch (const LabError& e) {
            row.error = e.what();
          }
          return row;
        },
        sweep.exec);
  };
  const auto base = rows(sweep.space);
  const auto fine = rows(refined(sweep.space));

  BoundednessReport rep;
  rep.experiment = "theorem1";
  rep.config = {{"alpha", prm.alpha},
                {"alpha0", prm.alpha + 2.0},
                {"p", prm.p},
                {"q", prm.q},
                {"beta", prm.beta},
                {"variant", to_string(prm.variant)},
                {"family_size", family.size()},
                {"sweep", detail::sweep_json(sweep)}};
  std::vector<std::string> groups;
  std::vector<double> dist, ratios, defined, ra, rb;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!base[i].error.empty() || !fine[i].error.empty()) {
      rep.notes.push_back("excluded " + family[i].description + ": " +
                          (base[i].error.empty() ? fine[i].error : base[i].error));
      continue;
    }
    const double ratio = base[i].image / base[i].source;
    const double absolute = base[i].absolute / base[i].source;
    rep.samples.push_back({{{"member", static_cast<double>(i)},
                            {"boundary_distance", family[i].boundary_distance},
                            {"source_norm", base[i].source},
                            {"image_norm", base[i].image},
                            {"absolute_integral_ratio", absolute}},
                           ratio,
                           family[i].description});
    groups.push_back(family_group(family[i].description));
    dist.push_back(family[i].boundary_distance);
    ratios.push_back(ratio);
    defined.push_back(absolute);
    ra.push_back(ratio);
    rb.push_back(fine[i].image / fine[i].source);
  }
  require(!rep.samples.empty(), ErrorCode::DivergenceSuspected, "every family member was excluded");
  const auto trends = detail::group_slopes(groups, dist, ratios);
  const auto defined_trends = detail::group_slopes(groups, dist, defined);
  rep.max_ratio = max_finite(rep.samples);
  rep.tail_slope = detail::worst_slope(trends, sweep.slope_tol);
  rep.grid_stability = relative_change(ra, rb);
  for (const auto& t : trends) {
    rep.metrics.emplace_back("tail_slope[" + t.group + "]", t.slope);
    rep.metrics.emplace_back("raw_slope[" + t.group + "]", t.raw_slope);
  }
  double defined_slope = 0.0;
  for (const auto& t : defined_trends) {
    rep.metrics.emplace_back("absolute_integral_slope[" + t.group + "]", t.slope);
    defined_slope = std::min(defined_slope, t.slope);
  }
  const auto ex = extremal_exponents_mixed(prm.p, prm.beta);
  rep.metrics.emplace_back("extremal_s", ex.s);
  rep.metrics.emplace_back("extremal_m", ex.m);
  rep.verdict = decide_verdict(rep.tail_slope, rep.grid_stability, sweep.slope_tol, sweep.stability_tol);
  if (defined_slope < -sweep.slope_tol) {
    rep.verdict = Verdict::GrowthDetected;
    rep.notes.push_back("int |f| dv_alpha grows against the source norm: T_alpha is not defined on the source space");
  }
  return rep;
}

// ---------------------------------------------------------------- theorem2

/// V_beta from L^{p1,p2}_{alpha1,alpha2} to A^{p1,p2}_{alpha1,alpha2} on the bidisk.
struct Theorem2Params {
  std::array<double, 2> p{2.0, 2.0};
  std::array<double, 2> alpha{0.0, 0.0};
  std::array<double, 2> beta{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  WeightVariant variant = WeightVariant::OneMinusModSq;

  std::array<double, 2> kernel_beta() const {
    return {std::isnan(beta[0]) ? alpha[0] : beta[0], std::isnan(beta[1]) ? alpha[1] : beta[1]};
  }
};

/// Tensor members: monomial pairs and f_a (x) f_a over the sweep distances.
inline std::vector<BivariateFunction> theorem2_tensor_family(const Theorem2Params& prm, const SweepSpec& sweep,
                                                             int max_k = 3) {
  std::vector<BivariateFunction> out;
  for (int j = 0; j <= max_k; ++j)
    for (int k = 0; k <= max_k; ++k)
      out.push_back(BivariateFunction::tensor({{monomial(j), monomial(k), 1.0}},
                                              "tensor(z1^" + std::to_string(j) + " z2^" + std::to_string(k) + ")"));
  const auto e1 = extremal_exponents_bergman(prm.p[0], prm.alpha[0]);
  const auto e2 = extremal_exponents_bergman(prm.p[1], prm.alpha[1]);
  for (double d : sweep.distances) {
    auto f = BivariateFunction::tensor({{extremal(1.0 - d, e1.s, e1.m), extremal(1.0 - d, e2.s, e2.m), 1.0}},
                                       "extremal_tensor(a=" + std::to_string(1.0 - d) + ")");
    f.boundary_distance = d;
    out.push_back(std::move(f));
  }
  return out;
}

/// Measurable members: conj(z1) z1^2 exp(-|z1|^2) (x) z2^k, and conj(z1) z1^2 f_a(z1) (x) f_a(z2).
inline std::vector<BivariateFunction> theorem2_nonanalytic_family(const Theorem2Params& prm,
                                                                  std::vector<double> radii = {0.5, 0.7, 0.8, 0.9}) {
  std::vector<BivariateFunction> out;
  for (int k = 0; k <= 2; ++k) {
    NonAnalyticRecipe g;
    g.conj_power = 1;
    g.power = 2;
    out.push_back(BivariateFunction::tensor({{non_analytic(g), monomial(k), 1.0}},
                                            "nonanalytic_gauss(k=" + std::to_string(k) + ")"));
  }
  const auto e1 = extremal_exponents_bergman(prm.p[0], prm.alpha[0]);
  const auto e2 = extremal_exponents_bergman(prm.p[1], prm.alpha[1]);
  for (double a : radii) {
    NonAnalyticRecipe r;
    r.conj_power = 1;
    r.power = 2;
    r.bump = NonAnalyticRecipe::Bump::Extremal;
    r.a = a;
    r.s = e1.s;
    r.m = e1.m;
    auto f = BivariateFunction::tensor({{non_analytic(r), extremal(a, e2.s, e2.m), 1.0}},
                                       "nonanalytic_extremal(a=" + std::to_string(a) + ")");
    f.boundary_distance = 1.0 - a;
    out.push_back(std::move(f));
  }
  return out;
}

/// Grid for the modal image of a measurable factor with boundary distance d.
inline GridSize modal_grid(double d, bool refine) {
  const double dd = std::isnan(d) ? 1.0 : d;
  std::size_t na = next_pow2(static_cast<std::size_t>(std::ceil(80.0 / dd)));
  na = std::max<std::size_t>(na, 256);
  if (refine) na *= 2;
  return {std::max<std::size_t>(64, na / 4), na};
}

/// Largest per-variable Wirtinger residual of a bidisk function over a few seeded slices.
inline double bidisk_holomorphy_residual(const BivariateFunction& f, std::uint64_t seed = 29) {
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Complex a = std::polar(0.8 * rng.uniform(), 2.0 * kPi * rng.uniform());
    const Complex b = std::polar(0.8 * rng.uniform(), 2.0 * kPi * rng.uniform());
    worst = std::max(worst, holomorphy_residual([&](Complex z) { return f(z, b); }, seed + 2 * i, 5));
    worst = std::max(worst, holomorphy_residual([&](Complex z) { return f(a, z); }, seed + 2 * i + 1, 5));
  }
  return worst;
}

/// ratio = ||V f||_{A} / ||f||_{L}. Every output is checked for holomorphy in
/// each variable; a failed check excludes nothing but forces a non-Bounded verdict.
inline BoundednessReport boundedness_theorem2(const Theorem2Params& prm, const std::vector<BivariateFunction>& family,
                                              const SweepSpec& sweep = {}) {
  require(prm.p[0] > 1.0 && prm.p[1] > 1.0, ErrorCode::InvalidHypothesis, "theorem2 needs p_j > 1");
  require(prm.alpha[0] > -1.0 && prm.alpha[1] > -1.0, ErrorCode::InvalidHypothesis, "theorem2 needs alpha_j > -1");
  require(!family.empty(), ErrorCode::InvalidArgument, "theorem2 needs a nonempty family");
  const auto beta = prm.kernel_beta();
  require(beta[0] > -1.0 && beta[1] > -1.0, ErrorCode::BadWeight, "beta_j must exceed -1");
  BidiskOptions nopt;
  nopt.variant = prm.variant;

  struct Row {
    double source = 0, image = 0, residual = 0;
    bool tagged = false;
  };
  auto rows = [&](const SpaceOptions& o, bool refine) {
    BidiskOptions bo = nopt;
    bo.space = o;
    if (refine) {
      bo.n_radial *= 2;
      bo.n_angular *= 2;
    }
    return parallel_map<Row>(
        family.size(),
        [&](std::size_t i) {
          const auto& f = family[i];
          bool modal = false;
          for (const auto& t : f.terms) modal = modal || !t.first.series || !t.second.series;
          const BidiskProjection V(beta, prm.variant, modal ? modal_grid(f.boundary_distance, refine) : GridSize{8, 8});
          const auto image = V.image(f);
          Row row;
          row.source = bidisk_mixed_norm(f, prm.p, prm.alpha, SpaceKind::L, bo);
          row.residual = bidisk_holomorphy_residual(image);
          row.tagged = image.tag == Analyticity::Holomorphic;
          row.image = bidisk_mixed_norm(image, prm.p, prm.alpha, SpaceKind::A, bo);
          return row;
        },
        sweep.exec);
  };
  const auto base = rows(sweep.space, false);
  const auto fine = rows(refined(sweep.space), true);

  BoundednessReport rep;
  rep.experiment = "theorem2";
  rep.config = {{"p", prm.p},
                {"alpha", prm.alpha},
                {"beta", beta},
                {"variant", to_string(prm.variant)},
                {"family_size", family.size()},
                {"sweep", detail::sweep_json(sweep)}};
  std::vector<std::string> groups;
  std::vector<double> dist, ratios, fine_ratios;
  double worst_residual = 0.0;
  bool all_tagged = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double ratio = base[i].image / base[i].source;
    rep.samples.push_back({{{"member", static_cast<double>(i)},
                            {"boundary_distance", family[i].boundary_distance},
                            {"source_norm", base[i].source},
                            {"image_norm", base[i].image},
                            {"holomorphy_residual", base[i].residual}},
                           ratio,
                           family[i].description});
    groups.push_back(family_group(family[i].description));
    dist.push_back(family[i].boundary_distance);
    ratios.push_back(ratio);
    fine_ratios.push_back(fine[i].image / fine[i].source);
    worst_residual = std::max(worst_residual, base[i].residual);
    all_tagged = all_tagged && base[i].tagged;
  }
  const auto trends = detail::group_slopes(groups, dist, ratios);
  rep.max_ratio = max_finite(rep.samples);
  rep.tail_slope = trends.empty() ? 0.0 : detail::worst_slope(trends, sweep.slope_tol);
  rep.grid_stability = relative_change(ratios, fine_ratios);
  for (const auto& t : trends) {
    rep.metrics.emplace_back("tail_slope[" + t.group + "]", t.slope);
    rep.metrics.emplace_back("raw_slope[" + t.group + "]", t.raw_slope);
  }
  rep.metrics.emplace_back("max_holomorphy_residual", worst_residual);
  rep.metrics.emplace_back("outputs_tagged_holomorphic", all_tagged ? 1.0 : 0.0);
  rep.verdict = decide_verdict(rep.tail_slope, rep.grid_stability, sweep.slope_tol, sweep.stability_tol);
  if (!(worst_residual < 1e-5) || !all_tagged) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back("an output failed the holomorphy spot check");
  }
  return rep;
}

}  // namespace bergman
