#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "bergman/core.hpp"
#include "bergman/fft.hpp"
#include "bergman/functions.hpp"
#include "bergman/gauss_jacobi.hpp"

namespace bergman {

/// How the boundary weight is written: (1 - |z|)^a or (1 - |z|^2)^a.
enum class WeightVariant { OneMinusMod, OneMinusModSq };

inline const char* to_string(WeightVariant v) {
  return v == WeightVariant::OneMinusMod ? "literal" : "classical";
}

/// Same weight written in the boundary distance s = 1 - |z|, exact as s -> 0.
inline double boundary_weight_from_distance(double s, double alpha, WeightVariant v) {
  if (alpha == 0.0) return 1.0;
  const double base = v == WeightVariant::OneMinusMod ? s : s * (2.0 - s);
  return std::pow(base, alpha);
}

inline double boundary_weight(double radius, double alpha, WeightVariant v) {
  if (alpha == 0.0) return 1.0;
  const double base = v == WeightVariant::OneMinusMod ? 1.0 - radius : 1.0 - radius * radius;
  return std::pow(base, alpha);
}

enum class GridKind { DiskTensor, Circle, RadialLog };

/// Immutable quadrature grid.
///
/// DiskTensor weights discretise W(|z|) dA with the (unnormalised) area
/// measure dA; nodes are ring-major, n_angular per ring, angle 2 pi j / n_angular.
/// Circle grids discretise the normalised arc measure (weights sum to 1).
struct QuadGrid {
  GridKind kind = GridKind::DiskTensor;
  std::vector<Complex> nodes;
  std::vector<double> weights;
  std::size_t n_radial = 0;
  std::size_t n_angular = 0;
  double weight_exponent = 0.0;
  WeightVariant variant = WeightVariant::OneMinusModSq;
  double level = 0.0;  // r for Circle(r)

  // Per-ring data for DiskTensor: radius and the radial weight (angular factor 2 pi excluded).
  std::vector<double> radii;
  std::vector<double> radial_weights;

  template <typename Fn>
  Complex integrate(const Fn& f) const {
    std::vector<Complex> terms(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) terms[i] = weights[i] * Complex(f(nodes[i]));
    return pairwise_sum(terms);
  }

  double total_weight() const { return pairwise_sum(weights); }
};

/// Tensor grid for W(|z|) dA on the unit disk, W = (1-|z|)^alpha or (1-|z|^2)^alpha.
///
/// OneMinusModSq: Gauss-Jacobi in u = |z|^2 with weight (1-u)^alpha, exact for
/// polynomials in |z|^2 of degree < 2 n_radial. OneMinusMod: Gauss-Jacobi in
/// |z| with weight (1-|z|)^alpha |z|. Both are open rules, so no node sits on
/// |z| = 1.
inline QuadGrid disk_grid(std::size_t n_radial, std::size_t n_angular, double alpha,
                          WeightVariant variant = WeightVariant::OneMinusModSq) {
  require(n_radial >= 4 && n_angular >= 4, ErrorCode::InvalidCount, "disk grid needs at least 4x4 nodes");
  require(alpha > -1.0, ErrorCode::BadWeight, "weight exponent must exceed -1");
  QuadGrid g;
  g.kind = GridKind::DiskTensor;
  g.n_radial = n_radial;
  g.n_angular = n_angular;
  g.weight_exponent = alpha;
  g.variant = variant;

  if (variant == WeightVariant::OneMinusModSq) {
    const Rule1D rule = gauss_jacobi_unit(n_radial, alpha, 0.0);
    for (std::size_t i = 0; i < n_radial; ++i) {
      g.radii.push_back(std::sqrt(rule.nodes[i]));
      g.radial_weights.push_back(0.5 * rule.weights[i]);  // r dr = du / 2
    }
  } else {
    const Rule1D rule = gauss_jacobi_unit(n_radial, alpha, 1.0);
    g.radii = rule.nodes;
    g.radial_weights = rule.weights;
  }

  const double dtheta = 2.0 * kPi / static_cast<double>(n_angular);
  g.nodes.reserve(n_radial * n_angular);
  g.weights.reserve(n_radial * n_angular);
  for (std::size_t i = 0; i < n_radial; ++i) {
    for (std::size_t j = 0; j < n_angular; ++j) {
      g.nodes.push_back(std::polar(g.radii[i], dtheta * static_cast<double>(j)));
      g.weights.push_back(g.radial_weights[i] * dtheta);
    }
  }
  return g;
}

/// Equispaced grid on the level circle of D_r (radius 1 - r), normalised arc measure.
inline QuadGrid circle_grid(double r, std::size_t n_angular) {
  require(r > 0.0 && r < 1.0, ErrorCode::InvalidArgument, "level must lie in (0, 1)");
  require(n_angular >= 1, ErrorCode::InvalidCount, "circle grid needs nodes");
  QuadGrid g;
  g.kind = GridKind::Circle;
  g.level = r;
  g.n_angular = n_angular;
  const double radius = 1.0 - r;
  const double w = 1.0 / static_cast<double>(n_angular);
  for (std::size_t j = 0; j < n_angular; ++j) {
    g.nodes.push_back(std::polar(radius, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_angular)));
    g.weights.push_back(w);
  }
  return g;
}

struct CircleMeanOptions {
  std::size_t n_initial = 64;
  double rel_tol = 1e-13;
  std::size_t max_nodes = std::size_t{1} << 22;
  double oversample = 1.25;  // FFT length / significant Taylor terms
};

/// Normalised mean of g over the circle |z| = radius by the trapezoid rule,
/// doubling the node count until two successive levels agree. Nodes always
/// include angle 0.
template <typename G>
double circle_average(const G& g, double radius, const CircleMeanOptions& opt = {}) {
  std::size_t n = std::max<std::size_t>(4, opt.n_initial);
  std::vector<double> vals(n);
  for (std::size_t j = 0; j < n; ++j)
    vals[j] = g(std::polar(radius, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n)));
  double sum = pairwise_sum(vals);
  double mean = sum / static_cast<double>(n);
  if (radius == 0.0) return mean;
  int agreed = 0;
  while (n < opt.max_nodes) {
    std::vector<double> odd(n);
    for (std::size_t j = 0; j < n; ++j)
      odd[j] = g(std::polar(radius, 2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n)));
    sum += pairwise_sum(odd);
    n *= 2;
    const double next = sum / static_cast<double>(n);
    const bool close = std::abs(next - mean) <= opt.rel_tol * std::abs(next) + 1e-300;
    mean = next;
    if (close && ++agreed >= 2) break;
    if (!close) agreed = 0;
  }
  return mean;
}

/// |v|^p with the common exponents special-cased.
inline double abs_pow(Complex v, double p) {
  if (p == 2.0) return std::norm(v);
  if (p == 1.0) return std::abs(v);
  if (p == 0.5) return std::sqrt(std::abs(v));
  const double n2 = std::norm(v);
  return n2 == 0.0 ? 0.0 : std::exp(0.5 * p * std::log(n2));
}

/// Mean of |f|^p over |z| = radius for a Taylor series: synthesise the
/// truncated series on N >= K equispaced points with one FFT. The samples are
/// exact for N >= K; the trapezoid error of |f|^p decays like the tail of the
/// series itself.
inline double series_circle_mean(const TaylorSeries& s, double radius, double p, std::size_t min_nodes = 64,
                                 double oversample = 1.25) {
  const std::size_t k = std::max<std::size_t>(1, s.terms_for(radius));
  const auto wanted = static_cast<std::size_t>(std::ceil(oversample * static_cast<double>(k)));
  const std::size_t n = next_pow2(std::max({min_nodes, k, wanted}));
  std::vector<Complex> coeffs(n);
  double power = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    coeffs[i] = s.coeffs[i] * power;
    power *= radius;
  }
  const auto vals = synthesize(std::move(coeffs));
  std::vector<double> mags(n);
  for (std::size_t j = 0; j < n; ++j) mags[j] = abs_pow(vals[j], p);
  return pairwise_sum(mags) / static_cast<double>(n);
}

/// int_{dD_r} |f|^p d sigma_r on the circle of radius 1 - r.
inline double circle_p_mean(const SampledFunction& f, double r, double p, const CircleMeanOptions& opt = {}) {
  require(r >= 0.0 && r < 1.0, ErrorCode::InvalidArgument, "level must lie in [0, 1)");
  require(p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
  const double radius = 1.0 - r;
  if (f.radial_modulus) return std::pow(f.radial_modulus(radius), p);
  if (f.circle_mean) return f.circle_mean(radius, p);
  if (f.series) return series_circle_mean(*f.series, radius, p, opt.n_initial, opt.oversample);
  return circle_average([&](Complex z) { return abs_pow(f(z), p); }, radius, opt);
}

/// Max |f| over the circle of radius 1 - r (sampled, adaptively refined).
inline double circle_sup(const SampledFunction& f, double r, const CircleMeanOptions& opt = {}) {
  const double radius = 1.0 - r;
  std::size_t n = std::max<std::size_t>(4, opt.n_initial);
  double best = 0.0;
  double prev = -1.0;
  while (n <= opt.max_nodes) {
    for (std::size_t j = 0; j < n; ++j)
      best = std::max(best, std::abs(f(std::polar(radius, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n)))));
    if (prev >= 0.0 && best - prev <= opt.rel_tol * best) break;
    prev = best;
    n *= 2;
  }
  return best;
}

struct RadialOptions {
  double initial_width = 0.25;   // first panel width in u = -log(r / r0)
  double max_width = 64.0;
  double min_width = 1e-6;
  double rel_tol = 1e-11;        // per-panel Kronrod error relative to the running total
  double decay_tol = 1e-16;      // stop once the integrand falls below this fraction of its peak
  double u_max = 700.0;          // r0 e^{-700} ~ 1e-304
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae on [-1, 1] (positive half, descending) and weights.
inline constexpr std::array<double, 8> kKronrodX = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussW = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double gauss;
  double max_abs;
  std::array<double, 15> u;
  std::array<double, 15> values;
};

template <typename H>
Panel kronrod_panel(const H& h, double a, double b) {
  Panel p{};
  const double c = 0.5 * (a + b), half = 0.5 * (b - a);
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 15; ++i) {
    const int idx = i < 7 ? i : (i == 7 ? 7 : 14 - i);
    const double x = i < 7 ? -kKronrodX[idx] : (i == 7 ? 0.0 : kKronrodX[idx]);
    const double u = c + half * x;
    const double v = h(u);
    p.u[i] = u;
    p.values[i] = v;
    p.max_abs = std::max(p.max_abs, std::abs(v));
    k += kKronrodW[idx] * v;
    if (idx % 2 == 1) g += kGaussW[idx / 2] * v;
  }
  p.kronrod = k * half;
  p.gauss = g * half;
  return p;
}

}  // namespace detail

/// Samples (u, value) visited while integrating; u = -log(r / r0).
struct RadialTrace {
  std::vector<double> u;
  std::vector<double> values;
};

/// int_0^{r0} g(r) dr / r, computed as int_0^inf g(r0 e^{-u}) du with
/// adaptive Gauss-Kronrod panels marching in u. The march stops once the
/// integrand has decayed below decay_tol of its running peak; reaching u_max
/// first means g is not O(r^eps) at 0 and raises DivergenceSuspected.
template <typename G>
double radial_integral(const G& g, double r0, const RadialOptions& opt = {}, RadialTrace* trace = nullptr) {
  require(r0 > 0.0, ErrorCode::InvalidArgument, "r0 must be positive");
  auto h = [&](double u) { return static_cast<double>(g(r0 * std::exp(-u))); };
  std::vector<double> accepted;
  double acc = 0.0;
  double peak = 0.0;
  double u = 0.0;
  double width = opt.initial_width;
  bool rejected = false;
  while (true) {
    if (u >= opt.u_max) {
      if (peak == 0.0) return 0.0;
      throw LabError(ErrorCode::DivergenceSuspected, "radial integrand does not decay as r -> 0");
    }
    const double b = std::min(u + width, opt.u_max);
    const auto panel = detail::kronrod_panel(h, u, b);
    const double err = std::abs(panel.kronrod - panel.gauss);
    const bool ok = err <= opt.rel_tol * (std::abs(acc) + std::abs(panel.kronrod)) || err < 1e-300 ||
                    width <= opt.min_width;
    if (!ok) {
      width *= 0.5;
      rejected = true;
      continue;
    }
    accepted.push_back(panel.kronrod);
    acc += panel.kronrod;
    if (trace) {
      for (int i = 0; i < 15; ++i) {
        trace->u.push_back(panel.u[i]);
        trace->values.push_back(panel.values[i]);
      }
    }
    const double previous_peak = peak;
    peak = std::max(peak, panel.max_abs);
    u = b;
    const bool decayed = peak > 0.0 && panel.max_abs < opt.decay_tol * peak && previous_peak >= panel.max_abs;
    if (decayed) break;
    // no growth straight after a rejection
    if (!rejected) width = std::min(2.0 * width, opt.max_width);
    rejected = false;
  }
  return pairwise_sum(accepted);
}

/// sup of g over the radial scan used by radial_integral, refined by a
/// golden-section search around the best sampled node.
template <typename G>
double radial_sup(const G& g, double r0, const RadialOptions& opt = {}) {
  RadialTrace trace;
  radial_integral([&](double r) { return std::abs(g(r)); }, r0, opt, &trace);
  std::size_t best = 0;
  for (std::size_t i = 1; i < trace.values.size(); ++i)
    if (trace.values[i] > trace.values[best]) best = i;
  double lo = best == 0 ? 0.0 : trace.u[best - 1];
  double hi = best + 1 < trace.u.size() ? trace.u[best + 1] : trace.u[best];
  if (lo > hi) std::swap(lo, hi);
  auto h = [&](double uu) { return std::abs(static_cast<double>(g(r0 * std::exp(-uu)))); };
  double value = trace.values[best];
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = h(x1), f2 = h(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
    if (f1 > f2) {
      hi = x2; x2 = x1; f2 = f1; x1 = hi - phi * (hi - lo); f1 = h(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2; x2 = lo + phi * (hi - lo); f2 = h(x2);
    }
  }
  return std::max({value, f1, f2});
}

}  // namespace bergman
