#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bergman/core.hpp"
#include "bergman/functions.hpp"
#include "bergman/kernels.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/report.hpp"
#include "bergman/spaces.hpp"

namespace bergman {

/// Boundary-approach sweep. `distances` are distances to the boundary
/// (1 - |xi|, r, 1 - |a|, ...), strictly decreasing toward 0.
struct SweepSpec {
  std::vector<double> distances = log_space_down(1e-1, 1e-4, 20);
  std::vector<double> levels;  // second axis where one exists (lemma1a: r); empty = same as distances
  double slope_tol = 0.1;
  double stability_tol = 0.05;
  std::uint64_t seed = 1;
  SpaceOptions space{};
  Execution exec{};

  const std::vector<double>& level_axis() const { return levels.empty() ? distances : levels; }

  void validate() const {
    auto check = [](const std::vector<double>& v, const char* what) {
      require(!v.empty(), ErrorCode::InvalidArgument, std::string(what) + " must be nonempty");
      for (std::size_t i = 0; i < v.size(); ++i) {
        require(v[i] > 0.0 && v[i] < 1.0, ErrorCode::InvalidArgument, std::string(what) + " must lie in (0, 1)");
        if (i > 0)
          require(v[i] < v[i - 1], ErrorCode::InvalidArgument, std::string(what) + " must decrease strictly");
      }
    };
    check(distances, "sweep distances");
    if (!levels.empty()) check(levels, "sweep levels");
  }
};

/// One refinement step of every resolution knob.
inline SpaceOptions refined(SpaceOptions o) {
  o.circle.n_initial *= 2;
  o.circle.oversample *= 2.0;
  o.radial.initial_width *= 0.5;
  o.radial.rel_tol *= 0.1;
  return o;
}

struct TrendPoint {
  double distance = 0.0;
  double value = 0.0;
};

/// Least-squares slope of log(value) against log(distance) over the final
/// decade of the approach (distance <= 10 * smallest distance). Fewer than two
/// points in that decade: the two smallest distances are used.
inline double fit_tail_slope(std::vector<TrendPoint> pts) {
  std::erase_if(pts, [](const TrendPoint& p) { return !(p.distance > 0.0) || std::isnan(p.value); });
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.distance > b.distance; });
  for (const auto& p : pts)
    if (std::isinf(p.value)) return -std::numeric_limits<double>::infinity();
  const double dmin = pts.back().distance;
  std::vector<TrendPoint> tail;
  for (const auto& p : pts)
    if (p.distance <= 10.0 * dmin * (1.0 + 1e-12)) tail.push_back(p);
  if (tail.size() < 2) tail.assign(pts.end() - 2, pts.end());
  for (const auto& p : tail)
    if (!(p.value > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(tail.size());
  for (const auto& p : tail) {
    const double x = std::log(p.distance), y = std::log(p.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

/// Running sup toward the boundary: E(d) = max{value : distance >= d}. A bounded
/// family has a flat envelope whether its ratios level off or decay.
inline std::vector<TrendPoint> running_sup(std::vector<TrendPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.distance > b.distance; });
  double best = -std::numeric_limits<double>::infinity();
  for (auto& p : pts) {
    if (std::isnan(p.value)) continue;
    best = std::max(best, p.value);
    p.value = best;
  }
  return pts;
}

inline double fit_envelope_slope(const std::vector<TrendPoint>& pts) { return fit_tail_slope(running_sup(pts)); }

/// Ratio growing toward the boundary shows up as a negative slope.
inline Verdict decide_verdict(double slope, double stability, double slope_tol, double stability_tol) {
  if (std::isnan(slope) || std::isnan(stability) || !(stability < stability_tol)) return Verdict::Inconclusive;
  if (slope < -slope_tol) return Verdict::GrowthDetected;
  if (std::abs(slope) <= slope_tol) return Verdict::Bounded;
  return Verdict::Inconclusive;
}

/// max_i |b_i - a_i| / |a_i|.
inline double relative_change(const std::vector<double>& a, const std::vector<double>& b) {
  require(a.size() == b.size(), ErrorCode::InvalidArgument, "refinement changed the sample count");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(b[i] - a[i]) / std::max(std::abs(a[i]), 1e-300));
  }
  return worst;
}

inline double max_finite(const std::vector<Sample>& samples) {
  double m = 0.0;
  for (const auto& s : samples)
    if (std::isfinite(s.ratio)) m = std::max(m, s.ratio);
  return m;
}

namespace detail {

inline Json sweep_json(const SweepSpec& s) {
  Json j = Json::object();
  j["distances"] = s.distances;
  if (!s.levels.empty()) j["levels"] = s.levels;
  j["slope_tol"] = s.slope_tol;
  j["stability_tol"] = s.stability_tol;
  j["seed"] = s.seed;
  return j;
}

/// Runs `ratios(options)` at base and refined resolution.
template <typename Fn>
std::pair<std::vector<double>, double> with_refinement(const Fn& ratios, const SpaceOptions& base) {
  auto a = ratios(base);
  auto b = ratios(refined(base));
  const double stability = relative_change(a, b);
  return {std::move(a), stability};
}

}  // namespace detail

// ---------------------------------------------------------------- lemma1a

/// int_{dD_r} |K(z, xi)| d sigma_r(z) by adaptive trapezoid; xi on the positive axis.
inline double lemma1a_circle_integral(double t, double r, double xi_distance, const CircleMeanOptions& opt = {}) {
  const KernelSpec kernel(t);
  const Complex xi{1.0 - xi_distance, 0.0};
  const double e = t + 2.0;
  const bool even = std::floor(0.5 * e) == 0.5 * e && e <= 64.0;
  return circle_average(
      [&](Complex z) {
        const Complex phi = henkin_ramirez(z, xi);
        return kernel.c_norm() * (even ? 1.0 / std::pow(std::norm(phi), static_cast<int>(0.5 * e))
                                       : std::exp(-0.5 * e * std::log(std::norm(phi))));
      },
      1.0 - r, opt);
}

/// ratio(r, xi) = int_{dD_r} |K| d sigma_r * (rho(xi) + r)^{t+1} over the r x xi sweep.
/// tail_slope is fitted to the running envelope E(d) = max{ratio : r >= d, rho(xi) >= d}.
inline BoundednessReport verify_lemma1a(double t, const SweepSpec& sweep = {}) {
  require(t > -1.0, ErrorCode::InvalidHypothesis, "lemma1a needs t > -1");
  sweep.validate();
  const auto& rs = sweep.level_axis();
  const auto& ds = sweep.distances;
  const std::size_t n = rs.size() * ds.size();
  auto ratios = [&](const SpaceOptions& o) {
    return parallel_map<double>(
        n,
        [&](std::size_t i) {
          const double r = rs[i / ds.size()], d = ds[i % ds.size()];
          return lemma1a_circle_integral(t, r, d, o.circle) * std::pow(d + r, t + 1.0);
        },
        sweep.exec);
  };
  auto [values, stability] = detail::with_refinement(ratios, sweep.space);

  BoundednessReport rep;
  rep.experiment = "lemma1a";
  rep.config = {{"t", t}, {"sweep", detail::sweep_json(sweep)}};
  for (std::size_t i = 0; i < n; ++i)
    rep.samples.push_back({{{"r", rs[i / ds.size()]}, {"xi_distance", ds[i % ds.size()]}}, values[i], ""});

  std::vector<double> axis = rs;
  axis.insert(axis.end(), ds.begin(), ds.end());
  std::sort(axis.begin(), axis.end(), std::greater<>());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  std::vector<TrendPoint> envelope, joint, along_r, along_xi;
  for (double d : axis) {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (rs[i / ds.size()] >= d && ds[i % ds.size()] >= d) e = std::max(e, values[i]);
    if (e > 0.0) envelope.push_back({d, e});
  }
  for (std::size_t a = 0; a < rs.size(); ++a) {
    along_r.push_back({rs[a], values[a * ds.size() + ds.size() - 1]});
    if (a < ds.size()) joint.push_back({std::min(rs[a], ds[a]), values[a * ds.size() + a]});
  }
  for (std::size_t b = 0; b < ds.size(); ++b) along_xi.push_back({ds[b], values[(rs.size() - 1) * ds.size() + b]});

  rep.max_ratio = max_finite(rep.samples);
  rep.tail_slope = fit_tail_slope(envelope);  // already a running sup
  rep.grid_stability = stability;
  rep.metrics = {{"c_norm", KernelSpec(t).c_norm()},
                 {"slope_joint", fit_tail_slope(joint)},
                 {"slope_r", fit_tail_slope(along_r)},
                 {"slope_xi", fit_tail_slope(along_xi)}};
  rep.verdict = decide_verdict(rep.tail_slope, stability, sweep.slope_tol, sweep.stability_tol);
  return rep;
}

// ---------------------------------------------------------------- lemma1b

/// int_D |K(z, xi)| rho(z)^{sigma-1} dv(z) with rho = 1 - |z| and dv = dA / pi:
/// 2 int_0^1 R (1-R)^{sigma-1} c mean_theta |1 - R |xi| e^{i theta}|^{-(t+2)} dR,
/// integrated in S = 1 - R against dS / S.
inline double lemma1b_integral(double t, double sigma, double xi_distance, const RadialOptions& opt = {}) {
  const double c = KernelSpec(t).c_norm();
  const double xi = 1.0 - xi_distance;
  return radial_integral(
      [&](double s) {
        return 2.0 * (1.0 - s) * std::pow(s, sigma) * c * modulus_power_circle_mean((1.0 - s) * xi, -(t + 2.0));
      },
      1.0, opt);
}

/// ratio(xi) = int_D |K| rho^{sigma-1} dv * rho(xi)^{t+1-sigma}. `violation` admits
/// sigma >= t + 1, where the bound is expected to fail.
inline BoundednessReport verify_lemma1b(double t, double sigma, const SweepSpec& sweep = {}, bool violation = false) {
  require(sigma > 0.0, ErrorCode::InvalidHypothesis, "lemma1b needs sigma > 0");
  require(t > -1.0, ErrorCode::InvalidHypothesis, "lemma1b needs t > -1");
  require(violation || sigma - t - 1.0 < 0.0, ErrorCode::InvalidHypothesis,
          "lemma1b needs sigma - t - 1 < 0 (pass the violation flag to probe it)");
  sweep.validate();
  const auto& ds = sweep.distances;
  auto ratios = [&](const SpaceOptions& o) {
    return parallel_map<double>(
        ds.size(),
        [&](std::size_t i) { return lemma1b_integral(t, sigma, ds[i], o.radial) * std::pow(ds[i], t + 1.0 - sigma); },
        sweep.exec);
  };
  auto [values, stability] = detail::with_refinement(ratios, sweep.space);

  BoundednessReport rep;
  rep.experiment = "lemma1b";
  rep.config = {{"t", t}, {"sigma", sigma}, {"violation", violation}, {"sweep", detail::sweep_json(sweep)}};
  std::vector<TrendPoint> trend;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    rep.samples.push_back({{{"xi_distance", ds[i]}}, values[i], ""});
    trend.push_back({ds[i], values[i]});
  }
  rep.max_ratio = max_finite(rep.samples);
  rep.tail_slope = fit_envelope_slope(trend);
  rep.grid_stability = stability;
  rep.metrics = {{"raw_slope", fit_tail_slope(trend)},
                 {"exponent_sigma_minus_t_minus_1", sigma - t - 1.0},
                 {"center_value", lemma1b_integral(t, sigma, 1.0, sweep.space.radial)}};
  rep.verdict = decide_verdict(rep.tail_slope, stability, sweep.slope_tol, sweep.stability_tol);
  if (violation) rep.notes.push_back("hypothesis sigma - t - 1 < 0 deliberately violated");
  return rep;
}

// ---------------------------------------------------------------- lemma2

/// F(r) = r^delta int_0^{r0} R^{t-delta} (r+R)^{-(t+1)} dR.
inline double lemma2_F(double delta, double t, double r0, double r, const RadialOptions& opt = {}) {
  const double integral =
      radial_integral([&](double R) { return std::pow(R, t - delta + 1.0) * std::pow(r + R, -(t + 1.0)); }, r0, opt);
  return std::pow(r, delta) * integral;
}

/// F(r) over the sweep levels below r0. The r -> 0 limit is B(t - delta + 1, delta).
inline BoundednessReport verify_lemma2(double delta, double t, double r0, const SweepSpec& sweep = {}) {
  require(delta > 0.0, ErrorCode::InvalidHypothesis, "lemma2 needs delta > 0");
  require(t - delta > -1.0, ErrorCode::InvalidHypothesis, "lemma2 needs t - delta > -1");
  require(r0 > 0.0 && r0 <= 1.0, ErrorCode::InvalidHypothesis, "lemma2 needs 0 < r0 <= 1");
  sweep.validate();
  std::vector<double> rs;
  for (double r : sweep.distances)
    if (r < r0) rs.push_back(r);
  require(rs.size() >= 2, ErrorCode::InvalidArgument, "sweep needs at least two levels below r0");
  auto ratios = [&](const SpaceOptions& o) {
    return parallel_map<double>(rs.size(), [&](std::size_t i) { return lemma2_F(delta, t, r0, rs[i], o.radial); },
                                sweep.exec);
  };
  auto [values, stability] = detail::with_refinement(ratios, sweep.space);

  BoundednessReport rep;
  rep.experiment = "lemma2";
  rep.config = {{"delta", delta}, {"t", t}, {"r0", r0}, {"sweep", detail::sweep_json(sweep)}};
  std::vector<TrendPoint> trend;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    rep.samples.push_back({{{"r", rs[i]}}, values[i], ""});
    trend.push_back({rs[i], values[i]});
  }
  const double limit = std::exp(std::lgamma(t - delta + 1.0) + std::lgamma(delta) - std::lgamma(t + 1.0));
  rep.max_ratio = max_finite(rep.samples);
  rep.tail_slope = fit_envelope_slope(trend);
  rep.grid_stability = stability;
  rep.metrics = {{"raw_slope", fit_tail_slope(trend)},
                 {"sup_F", rep.max_ratio},
                 {"limit_closed_form", limit},
                 {"relative_gap_to_limit", std::abs(rep.max_ratio - limit) / limit}};
  rep.verdict = decide_verdict(rep.tail_slope, stability, sweep.slope_tol, sweep.stability_tol);
  return rep;
}

// ---------------------------------------------------------------- lemma3

/// How |Phi~(z, xi)|^r enters the lemma3 integrands.
enum class Lemma3Reading {
  NegativeExponent,  // |Phi~|^{-r}: the kernel-of-type reading
  PositivePower,     // |Phi~|^{+r}: the literal reading
};

inline const char* to_string(Lemma3Reading r) {
  return r == Lemma3Reading::NegativeExponent ? "negative_exponent" : "positive_power";
}

struct Lemma3Params {
  double p = 0.5;
  double s = 0.0;
  double kernel_type = std::numeric_limits<double>::quiet_NaN();  // t of the kernel; NaN = s
  Lemma3Reading reading = Lemma3Reading::NegativeExponent;

  double kernel_t() const { return std::isnan(kernel_type) ? s : kernel_type; }
  double t() const { return p * (s + 2.0) - 2.0; }          // p (s + n + 1) - (n + 1), n = 1
  double r_exponent() const { return 2.0 + kernel_t(); }    // n + 1 + t_kernel
};

/// mean over |xi| = R of |f(xi)|^pf |1 - z conj(xi)|^{sign * e}, z on the positive axis.
inline double lemma3_circle_mean(const SampledFunction& f, double z, double R, double pf, double e,
                                 const CircleMeanOptions& opt) {
  if (f.radial_modulus) return std::pow(f.radial_modulus(R), pf) * modulus_power_circle_mean(z * R, e);
  return circle_average(
      [&](Complex xi) { return abs_pow(f(xi), pf) * std::pow(std::abs(1.0 - z * std::conj(xi)), e); }, R, opt);
}

/// (LHS, RHS) of lemma3 at the probe z in (0, 1), weights d(xi) = 1 - |xi|, dv = dA / pi.
inline std::pair<double, double> lemma3_sides(const SampledFunction& f, const Lemma3Params& prm, double z,
                                              const SpaceOptions& opt = {}) {
  const double sign = prm.reading == Lemma3Reading::NegativeExponent ? -1.0 : 1.0;
  const double r = prm.r_exponent();
  const double t = prm.t();
  // int_D h dv = 2 int_0^1 R mean(R) dR = int_0^1 2 (1-S) S mean(1-S) dS / S
  const double lhs_integral = radial_integral(
      [&](double S) {
        return 2.0 * (1.0 - S) * std::pow(S, prm.s + 1.0) *
               lemma3_circle_mean(f, z, 1.0 - S, 1.0, sign * r, opt.circle);
      },
      1.0, opt.radial);
  const double rhs = radial_integral(
      [&](double S) {
        return 2.0 * (1.0 - S) * std::pow(S, t + 1.0) *
               lemma3_circle_mean(f, z, 1.0 - S, prm.p, sign * r * prm.p, opt.circle);
      },
      1.0, opt.radial);
  return {std::pow(lhs_integral, prm.p), rhs};
}

/// max_f LHS/RHS at each probe distance; tail_slope and the variation are
/// taken over the final decade of the probe approach.
inline BoundednessReport verify_lemma3(const Lemma3Params& prm, const std::vector<SampledFunction>& family,
                                       const SweepSpec& sweep) {
  require(prm.p > 0.0 && prm.p < 1.0, ErrorCode::InvalidHypothesis, "lemma3 needs 0 < p < 1");
  require(prm.s > -1.0, ErrorCode::InvalidHypothesis, "lemma3 needs s > -1");
  require(prm.t() > -1.0, ErrorCode::InvalidHypothesis, "lemma3 needs t = p(s+2) - 2 > -1");
  require(prm.kernel_t() > -1.0, ErrorCode::InvalidHypothesis, "kernel type must exceed -1");
  require(!family.empty(), ErrorCode::InvalidArgument, "lemma3 needs a nonempty family");
  sweep.validate();
  const auto& ds = sweep.distances;
  const std::size_t n = family.size() * ds.size();
  auto sides = [&](const SpaceOptions& o) {
    return parallel_map<std::pair<double, double>>(
        n, [&](std::size_t i) { return lemma3_sides(family[i / ds.size()], prm, 1.0 - ds[i % ds.size()], o); },
        sweep.exec);
  };
  auto to_ratios = [](const std::vector<std::pair<double, double>>& v) {
    std::vector<double> out;
    for (const auto& [l, r] : v) out.push_back(l / r);
    return out;
  };
  const auto base = sides(sweep.space);
  const auto values = to_ratios(base);
  const double stability = relative_change(values, to_ratios(sides(refined(sweep.space))));

  BoundednessReport rep;
  rep.experiment = "lemma3";
  rep.config = {{"p", prm.p},
                {"s", prm.s},
                {"t", prm.t()},
                {"kernel_type", prm.kernel_t()},
                {"reading", to_string(prm.reading)},
                {"family_size", family.size()},
                {"sweep", detail::sweep_json(sweep)}};
  for (std::size_t i = 0; i < n; ++i)
    rep.samples.push_back({{{"member", static_cast<double>(i / ds.size())},
                            {"probe_distance", ds[i % ds.size()]},
                            {"lhs", base[i].first},
                            {"rhs", base[i].second}},
                           values[i],
                           family[i / ds.size()].description});
  std::vector<TrendPoint> trend;
  for (std::size_t b = 0; b < ds.size(); ++b) {
    double m = 0.0;
    for (std::size_t a = 0; a < family.size(); ++a) m = std::max(m, values[a * ds.size() + b]);
    trend.push_back({ds[b], m});
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& tp : trend)
    if (tp.distance <= 10.0 * ds.back() * (1.0 + 1e-12)) {
      lo = std::min(lo, tp.value);
      hi = std::max(hi, tp.value);
    }
  rep.max_ratio = max_finite(rep.samples);
  rep.tail_slope = fit_envelope_slope(trend);
  rep.grid_stability = stability;
  rep.metrics = {{"raw_slope", fit_tail_slope(trend)}, {"final_decade_variation", hi / lo - 1.0}};
  rep.verdict = decide_verdict(rep.tail_slope, stability, sweep.slope_tol, sweep.stability_tol);
  return rep;
}

}  // namespace bergman
