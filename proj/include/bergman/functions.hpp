#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bergman/core.hpp"

namespace bergman {

enum class Analyticity { Holomorphic, Measurable };

inline const char* to_string(Analyticity a) {
  return a == Analyticity::Holomorphic ? "holomorphic" : "measurable";
}

/// Taylor coefficients c_k of a holomorphic function on the disk.
///
/// Polynomials keep every coefficient. Other series are materialised up to the
/// index where |c_k| stops mattering on the closed unit circle; they must be
/// unimodal in k after the peak (true for (1 - a z)^{-m} and its multiplier
/// images), which is what `terms_for` relies on.
struct TaylorSeries {
  std::vector<Complex> coeffs;
  bool polynomial = true;

  static constexpr double kTailTol = 1e-16;

  /// Number of terms needed for |z| <= radius.
  std::size_t terms_for(double radius) const {
    if (polynomial) return coeffs.size();
    double peak = 0.0;
    double last = std::numeric_limits<double>::infinity();
    double power = 1.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const double t = std::abs(coeffs[k]) * power;
      peak = std::max(peak, t);
      if (k > 0 && t < kTailTol * peak && t <= last) return k;
      last = t;
      power *= radius;
    }
    return coeffs.size();
  }

  Complex evaluate(Complex z) const {
    const std::size_t n = terms_for(std::abs(z));
    Complex acc{};
    for (std::size_t k = n; k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
  }
};

/// A function on the open unit disk with provenance.
struct SampledFunction {
  std::function<Complex(Complex)> eval;
  Analyticity tag = Analyticity::Holomorphic;
  std::string description;
  std::shared_ptr<const TaylorSeries> series;      // present for holomorphic families
  std::function<double(double)> radial_modulus;    // |f(z)| as a function of |z|, when rotation invariant
  std::function<double(double, double)> circle_mean;  // exact (radius, p) -> mean of |f|^p on |z| = radius
  double boundary_distance = std::numeric_limits<double>::quiet_NaN();  // family parameter

  Complex operator()(Complex z) const { return eval(z); }
};

inline SampledFunction from_series(TaylorSeries s, std::string description) {
  auto ptr = std::make_shared<const TaylorSeries>(std::move(s));
  SampledFunction f;
  f.eval = [ptr](Complex z) { return ptr->evaluate(z); };
  f.tag = Analyticity::Holomorphic;
  f.description = std::move(description);
  f.series = ptr;
  return f;
}

inline SampledFunction scale(const SampledFunction& f, Complex c) {
  SampledFunction g = f;
  g.eval = [inner = f.eval, c](Complex z) { return c * inner(z); };
  if (f.series) {
    TaylorSeries s = *f.series;
    for (auto& v : s.coeffs) v *= c;
    g.series = std::make_shared<const TaylorSeries>(std::move(s));
  }
  if (f.radial_modulus)
    g.radial_modulus = [inner = f.radial_modulus, m = std::abs(c)](double r) { return m * inner(r); };
  if (f.circle_mean)
    g.circle_mean = [inner = f.circle_mean, m = std::abs(c)](double r, double p) { return std::pow(m, p) * inner(r, p); };
  g.description = f.description + " * (" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")";
  return g;
}

inline SampledFunction add(const SampledFunction& f, const SampledFunction& g) {
  SampledFunction h;
  h.eval = [a = f.eval, b = g.eval](Complex z) { return a(z) + b(z); };
  h.tag = (f.tag == Analyticity::Holomorphic && g.tag == Analyticity::Holomorphic)
              ? Analyticity::Holomorphic
              : Analyticity::Measurable;
  h.description = "(" + f.description + ") + (" + g.description + ")";
  if (f.series && g.series && f.series->polynomial && g.series->polynomial) {
    TaylorSeries s;
    s.coeffs.assign(std::max(f.series->coeffs.size(), g.series->coeffs.size()), Complex{});
    for (std::size_t k = 0; k < f.series->coeffs.size(); ++k) s.coeffs[k] += f.series->coeffs[k];
    for (std::size_t k = 0; k < g.series->coeffs.size(); ++k) s.coeffs[k] += g.series->coeffs[k];
    h.series = std::make_shared<const TaylorSeries>(std::move(s));
  }
  return h;
}

/// Wirtinger derivatives d/dz and d/dzbar by 4th-order central differences.
/// For holomorphic input the truncation errors of the x and y stencils cancel
/// in d/dzbar, leaving only roundoff of order eps |f| / h.
struct Wirtinger {
  Complex dz;
  Complex dzbar;
};

inline Wirtinger wirtinger(const std::function<Complex(Complex)>& f, Complex z, double h = 1e-3) {
  auto d = [&](Complex dir) {
    return (f(z - 2.0 * h * dir) - 8.0 * f(z - h * dir) + 8.0 * f(z + h * dir) - f(z + 2.0 * h * dir)) /
           (12.0 * h);
  };
  const Complex fx = d({1.0, 0.0});
  const Complex fy = d({0.0, 1.0});
  return {0.5 * (fx - Complex(0.0, 1.0) * fy), 0.5 * (fx + Complex(0.0, 1.0) * fy)};
}

/// max |d f / d zbar| / max(1, |f|) over `count` seeded points with |z| <= radius.
inline double holomorphy_residual(const std::function<Complex(Complex)>& f, std::uint64_t seed = 11,
                                  std::size_t count = 10, double radius = 0.9) {
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const Complex z = std::polar(radius * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
    const double scale = std::max(1.0, std::abs(f(z)));
    worst = std::max(worst, std::abs(wirtinger(f, z).dzbar) / scale);
  }
  return worst;
}

inline constexpr double kHolomorphyTol = 1e-6;

inline bool passes_holomorphy_check(const SampledFunction& f) {
  return holomorphy_residual(f.eval) < kHolomorphyTol;
}

/// g(z1) * h(z2) scaled by `weight`.
struct TensorTerm {
  SampledFunction first;
  SampledFunction second;
  Complex weight{1.0, 0.0};
};

/// A function on the bidisk. When `terms` is non-empty the function equals the
/// finite sum of its tensor terms and the evaluator is derived from them.
struct BivariateFunction {
  std::function<Complex(Complex, Complex)> eval;
  Analyticity tag = Analyticity::Measurable;
  std::string description;
  std::vector<TensorTerm> terms;
  double boundary_distance = std::numeric_limits<double>::quiet_NaN();

  Complex operator()(Complex z1, Complex z2) const { return eval(z1, z2); }

  static BivariateFunction tensor(std::vector<TensorTerm> terms, std::string description) {
    BivariateFunction f;
    f.terms = std::move(terms);
    f.description = std::move(description);
    bool holo = true;
    for (const auto& t : f.terms)
      holo = holo && t.first.tag == Analyticity::Holomorphic && t.second.tag == Analyticity::Holomorphic;
    f.tag = holo ? Analyticity::Holomorphic : Analyticity::Measurable;
    f.eval = [terms = f.terms](Complex z1, Complex z2) {
      Complex acc{};
      for (const auto& t : terms) acc += t.weight * t.first(z1) * t.second(z2);
      return acc;
    };
    return f;
  }
};

}  // namespace bergman
