#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "bergman/core.hpp"
#include "bergman/functions.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Resolution knobs shared by the one-variable norms.
struct SpaceOptions {
  CircleMeanOptions circle{};
  RadialOptions radial{};
};

/// ||f||_{p,q,delta} with k = 0 on the disk: level circles of radius 1 - r,
/// weight r^delta, outer measure dr / r on (0, r0]. q may be +infinity.
struct MixedParams {
  double p = 1.0;
  double q = 1.0;
  double delta = 1.0;
  double r0 = 1.0;

  void validate() const {
    require(p > 0.0 && std::isfinite(p), ErrorCode::InvalidArgument, "mixed norm needs 0 < p < inf");
    require(q > 0.0, ErrorCode::InvalidArgument, "mixed norm needs q > 0");
    require(delta > 0.0, ErrorCode::InvalidArgument, "mixed norm needs delta > 0");
    require(r0 > 0.0 && r0 <= 1.0, ErrorCode::InvalidArgument, "r0 must lie in (0, 1]");
  }
};

inline double mixed_norm(const SampledFunction& f, const MixedParams& params, const SpaceOptions& opt = {}) {
  params.validate();
  auto level = [&](double r) { return std::pow(r, params.delta) * circle_p_mean(f, r, params.p, opt.circle); };
  if (std::isinf(params.q)) {
    return radial_sup([&](double r) { return std::pow(level(r), 1.0 / params.p); }, params.r0, opt.radial);
  }
  const double e = params.q / params.p;
  const double integral = radial_integral([&](double r) { return std::pow(level(r), e); }, params.r0, opt.radial);
  return std::pow(integral, 1.0 / params.q);
}

/// ||f||_{inf,p,delta} = ( int_0^{r0} (sup_{dD_r} |f|)^p r^{delta p - 1} dr )^{1/p}.
inline double sup_mixed_norm(const SampledFunction& f, double p, double delta, double r0 = 1.0,
                             const SpaceOptions& opt = {}) {
  require(p > 0.0 && delta > 0.0, ErrorCode::InvalidArgument, "need p > 0 and delta > 0");
  const double integral = radial_integral(
      [&](double r) { return std::pow(circle_sup(f, r, opt.circle), p) * std::pow(r, delta * p); }, r0, opt.radial);
  return std::pow(integral, 1.0 / p);
}

/// Weighted area measure used by the Bergman-type norms.
///  classical: (delta+1)/pi (1-|z|^2)^delta dA   (a probability measure)
///  literal:   (1/pi) (1-|z|)^delta dA           (rho^delta dv, dv normalised)
inline double bergman_weight_constant(double delta, WeightVariant v) {
  return v == WeightVariant::OneMinusModSq ? (delta + 1.0) / kPi : 1.0 / kPi;
}

/// int |f|^p d mu_delta in polar form, radial variable s = 1 - |z| on a log grid.
inline double bergman_integral(const SampledFunction& f, double p, double delta, WeightVariant variant,
                               const SpaceOptions& opt = {}) {
  require(p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
  require(delta > -1.0, ErrorCode::BadWeight, "delta must exceed -1");
  const double c = bergman_weight_constant(delta, variant);
  const double integral = radial_integral(
      [&](double s) {
        const double radius = 1.0 - s;
        return s * radius * boundary_weight_from_distance(s, delta, variant) * circle_p_mean(f, s, p, opt.circle);
      },
      1.0, opt.radial);
  return c * 2.0 * kPi * integral;
}

/// ||f||_{A^p_delta}.
inline double bergman_norm(const SampledFunction& f, double p, double delta,
                           WeightVariant variant = WeightVariant::OneMinusMod, const SpaceOptions& opt = {}) {
  return std::pow(bergman_integral(f, p, delta, variant, opt), 1.0 / p);
}

struct SupWeightedResult {
  double value = 0.0;
  Complex maximizer{};
  bool growth_flag = false;  // last refinement raised the sup by more than 10%
};

/// sup |f(z)| (1-|z|)^delta over a radial-angular grid, refined twice around
/// the running maximiser.
inline SupWeightedResult sup_weighted(const SampledFunction& f, double delta, std::size_t n_angular = 256) {
  require(delta > -1.0, ErrorCode::BadWeight, "delta must exceed -1");
  auto value_at = [&](double radius, double theta) {
    return std::abs(f(std::polar(radius, theta))) * std::pow(1.0 - radius, delta);
  };
  std::vector<double> radii;
  for (int i = 0; i <= 100; ++i) radii.push_back(0.99 * i / 100.0);
  for (double s : log_space_down(1e-2, 1e-8, 61)) radii.push_back(1.0 - s);
  std::sort(radii.begin(), radii.end());

  SupWeightedResult best;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (std::size_t j = 0; j < n_angular; ++j) {
      const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_angular);
      const double v = value_at(radii[i], th);
      if (v > best.value) {
        best.value = v;
        bi = i;
        bj = j;
      }
    }
  }
  double r_lo = radii[bi == 0 ? 0 : bi - 1], r_hi = radii[std::min(bi + 1, radii.size() - 1)];
  double dth = 2.0 * kPi / static_cast<double>(n_angular);
  double th_c = dth * static_cast<double>(bj);
  double radius_best = radii[bi];
  for (int pass = 0; pass < 2; ++pass) {
    const double before = best.value;
    constexpr int kSub = 21;
    double th_best = th_c;
    for (int a = 0; a < kSub; ++a) {
      const double radius = r_lo + (r_hi - r_lo) * a / (kSub - 1.0);
      for (int b = 0; b < kSub; ++b) {
        const double th = th_c - dth + 2.0 * dth * b / (kSub - 1.0);
        const double v = value_at(radius, th);
        if (v > best.value) {
          best.value = v;
          radius_best = radius;
          th_best = th;
        }
      }
    }
    const double span = (r_hi - r_lo) / (kSub - 1.0);
    r_lo = std::max(0.0, radius_best - span);
    r_hi = std::min(std::nextafter(1.0, 0.0), radius_best + span);
    th_c = th_best;
    dth = 2.0 * dth / (kSub - 1.0);
    if (pass == 1) best.growth_flag = best.value > 1.1 * before;
  }
  best.maximizer = std::polar(radius_best, th_c);
  return best;
}

inline double sup_weighted_norm(const SampledFunction& f, double delta) { return sup_weighted(f, delta).value; }

enum class SpaceKind { A, L };

struct BidiskOptions {
  std::size_t n_radial = 64;
  std::size_t n_angular = 128;
  WeightVariant variant = WeightVariant::OneMinusModSq;
  bool normalized = true;
  bool factor_single_terms = true;  // g (x) h: product of one-variable norms
  SpaceOptions space{};
};

/// Total mass of W_alpha dA on the disk.
inline double disk_weight_mass(double alpha, WeightVariant v) {
  return v == WeightVariant::OneMinusModSq ? kPi / (alpha + 1.0) : 2.0 * kPi / ((alpha + 1.0) * (alpha + 2.0));
}

/// ( int |g|^p W_alpha dA / mass )^{1/p}, or without the mass when `normalized` is false.
inline double disk_lp_norm(const SampledFunction& g, double p, double alpha, WeightVariant v, bool normalized,
                           const SpaceOptions& opt = {}) {
  double integral = bergman_integral(g, p, alpha, v, opt) / bergman_weight_constant(alpha, v);
  if (normalized) integral /= disk_weight_mass(alpha, v);
  return std::pow(integral, 1.0 / p);
}

namespace detail {

inline void check_bidisk_holomorphy(const BivariateFunction& f) {
  require(f.tag == Analyticity::Holomorphic, ErrorCode::TagMismatch, "A-space norm needs a holomorphic input");
  SplitMix64 rng(23);
  for (int i = 0; i < 5; ++i) {
    const Complex a = std::polar(0.8 * rng.uniform(), 2.0 * kPi * rng.uniform());
    const Complex b = std::polar(0.8 * rng.uniform(), 2.0 * kPi * rng.uniform());
    const double r1 = holomorphy_residual([&](Complex z) { return f(z, b); }, 31 + i, 3);
    const double r2 = holomorphy_residual([&](Complex z) { return f(a, z); }, 37 + i, 3);
    require(r1 < kHolomorphyTol && r2 < kHolomorphyTol, ErrorCode::TagMismatch,
            "input fails the per-variable holomorphy spot check");
  }
}

}  // namespace detail

/// Values of f on the product of two grids, row = z2 node, column = z1 node.
inline std::vector<Complex> bidisk_values(const BivariateFunction& f, const QuadGrid& g1, const QuadGrid& g2) {
  const std::size_t n1 = g1.nodes.size(), n2 = g2.nodes.size();
  std::vector<Complex> values(n1 * n2, Complex{});
  if (!f.terms.empty()) {
    for (const auto& t : f.terms) {
      std::vector<Complex> a(n1), b(n2);
      for (std::size_t i = 0; i < n1; ++i) a[i] = t.first(g1.nodes[i]);
      for (std::size_t j = 0; j < n2; ++j) b[j] = t.weight * t.second(g2.nodes[j]);
      for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t i = 0; i < n1; ++i) values[j * n1 + i] += a[i] * b[j];
    }
    return values;
  }
  for (std::size_t j = 0; j < n2; ++j)
    for (std::size_t i = 0; i < n1; ++i) values[j * n1 + i] = f(g1.nodes[i], g2.nodes[j]);
  return values;
}

/// Iterated mixed norm on the bidisk, z1 innermost:
/// ( int ( int |f|^{p1} dv_{a1}(z1) )^{p2/p1} dv_{a2}(z2) )^{1/p2}.
inline double bidisk_mixed_norm(const BivariateFunction& f, std::array<double, 2> p, std::array<double, 2> alpha,
                                SpaceKind space = SpaceKind::L, const BidiskOptions& opt = {}) {
  require(p[0] > 0.0 && p[1] > 0.0, ErrorCode::InvalidArgument, "exponents must be positive");
  require(alpha[0] > -1.0 && alpha[1] > -1.0, ErrorCode::BadWeight, "weights must exceed -1");
  if (space == SpaceKind::A) detail::check_bidisk_holomorphy(f);
  if (opt.factor_single_terms && f.terms.size() == 1) {
    // ( int ( |g|^{p1} int ... )^{p2/p1} )^{1/p2} = ||g||_{p1} ||h||_{p2} for one tensor term
    const auto& t = f.terms.front();
    return std::abs(t.weight) * disk_lp_norm(t.first, p[0], alpha[0], opt.variant, opt.normalized, opt.space) *
           disk_lp_norm(t.second, p[1], alpha[1], opt.variant, opt.normalized, opt.space);
  }
  const QuadGrid g1 = disk_grid(opt.n_radial, opt.n_angular, alpha[0], opt.variant);
  const QuadGrid g2 = disk_grid(opt.n_radial, opt.n_angular, alpha[1], opt.variant);
  const double m1 = opt.normalized ? g1.total_weight() : 1.0;
  const double m2 = opt.normalized ? g2.total_weight() : 1.0;
  const auto values = bidisk_values(f, g1, g2);
  const std::size_t n1 = g1.nodes.size(), n2 = g2.nodes.size();
  std::vector<double> outer(n2), inner(n1);
  for (std::size_t j = 0; j < n2; ++j) {
    for (std::size_t i = 0; i < n1; ++i) inner[i] = g1.weights[i] * std::pow(std::abs(values[j * n1 + i]), p[0]);
    outer[j] = g2.weights[j] * std::pow(pairwise_sum(inner) / m1, p[1] / p[0]);
  }
  return std::pow(pairwise_sum(outer) / m2, 1.0 / p[1]);
}

}  // namespace bergman
