#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/core.hpp"
#include "bergman/functions.hpp"
#include "bergman/kernels.hpp"

namespace bergman {

/// Recipe for a non-analytic member conj(z)^j z^k * bump(z).
struct NonAnalyticRecipe {
  enum class Bump { Gaussian, Extremal };
  int conj_power = 1;
  int power = 0;
  Bump bump = Bump::Gaussian;
  // Extremal bump (1 - a^2)^s / (1 - a z)^m.
  double a = 0.0;
  double s = 0.0;
  double m = 0.0;
};

struct FamilySpec {
  enum class Kind { Monomials, Extremal, RandomPoly, NonAnalytic };
  Kind kind = Kind::Monomials;
  int max_k = 0;
  double s = 0.0;
  double m = 0.0;
  std::vector<double> radii;
  int degree = 0;
  int count = 0;
  std::uint64_t seed = 0;
  std::vector<NonAnalyticRecipe> recipes;

  static FamilySpec monomials(int max_k) {
    FamilySpec f;
    f.kind = Kind::Monomials;
    f.max_k = max_k;
    return f;
  }
  static FamilySpec extremal(double s, double m, std::vector<double> radii) {
    FamilySpec f;
    f.kind = Kind::Extremal;
    f.s = s;
    f.m = m;
    f.radii = std::move(radii);
    return f;
  }
  static FamilySpec random_poly(int degree, int count, std::uint64_t seed) {
    FamilySpec f;
    f.kind = Kind::RandomPoly;
    f.degree = degree;
    f.count = count;
    f.seed = seed;
    return f;
  }
  static FamilySpec non_analytic(std::vector<NonAnalyticRecipe> recipes) {
    FamilySpec f;
    f.kind = Kind::NonAnalytic;
    f.recipes = std::move(recipes);
    return f;
  }
};

inline SampledFunction monomial(int k) {
  require(k >= 0, ErrorCode::RangeViolation, "monomial degree must be non-negative");
  TaylorSeries s;
  s.coeffs.assign(static_cast<std::size_t>(k) + 1, Complex{});
  s.coeffs.back() = 1.0;
  auto f = from_series(std::move(s), "z^" + std::to_string(k));
  f.eval = [k](Complex z) { return ipow(z, k); };
  f.radial_modulus = [k](double r) { return std::pow(r, k); };
  f.boundary_distance = 1.0 / (k + 1.0);
  return f;
}

inline SampledFunction polynomial(std::vector<Complex> coeffs, std::string description) {
  TaylorSeries s;
  s.coeffs = std::move(coeffs);
  return from_series(std::move(s), std::move(description));
}

/// f_a(z) = (1 - a^2)^s / (1 - a z)^m for real a in [0, 1).
inline SampledFunction extremal(double a, double s, double m) {
  require(a >= 0.0 && a < 1.0, ErrorCode::RangeViolation, "extremal radius must lie in [0, 1)");
  require(m > 0.0, ErrorCode::RangeViolation, "extremal exponent m must be positive");
  const double scale = std::pow(1.0 - a * a, s);
  TaylorSeries series;
  series.polynomial = false;
  // c_{k+1} = c_k a (m + k) / (k + 1); stop once past the peak and negligible.
  double c = scale;
  double peak = 0.0;
  double last = std::numeric_limits<double>::infinity();
  constexpr std::size_t kMaxTerms = std::size_t{1} << 24;
  for (std::size_t k = 0; k < kMaxTerms; ++k) {
    series.coeffs.emplace_back(c, 0.0);
    peak = std::max(peak, c);
    if (k > 0 && c < TaylorSeries::kTailTol * peak && c <= last) break;
    last = c;
    c *= a * (m + static_cast<double>(k)) / (static_cast<double>(k) + 1.0);
    if (a == 0.0) break;
  }
  std::ostringstream desc;
  desc.precision(17);
  desc << "extremal(a=" << a << ",s=" << s << ",m=" << m << ")";
  auto f = from_series(std::move(series), desc.str());
  f.eval = [a, scale, m](Complex z) { return scale * inverse_power(1.0 - a * z, m); };
  // |f|^p = |f^{p/2}|^2 and f^{p/2} has coefficients scale^{p/2} (mp/2)_k / k! a^k,
  // so the circle mean is scale^p 2F1(mp/2, mp/2; 1; (a R)^2) by Parseval.
  f.circle_mean = [a, scale, m](double radius, double p) {
    return std::pow(scale, p) * modulus_power_circle_mean(a * radius, -m * p);
  };
  f.boundary_distance = 1.0 - a;
  return f;
}

inline SampledFunction non_analytic(const NonAnalyticRecipe& r) {
  require(r.conj_power >= 0 && r.power >= 0, ErrorCode::RangeViolation, "recipe powers must be non-negative");
  SampledFunction f;
  f.tag = Analyticity::Measurable;
  std::ostringstream desc;
  desc.precision(17);
  desc << "conj(z)^" << r.conj_power << " z^" << r.power;
  if (r.bump == NonAnalyticRecipe::Bump::Gaussian) {
    desc << " exp(-|z|^2)";
    f.eval = [r](Complex z) { return ipow(std::conj(z), r.conj_power) * ipow(z, r.power) * std::exp(-std::norm(z)); };
    f.radial_modulus = [r](double x) { return std::pow(x, r.conj_power + r.power) * std::exp(-x * x); };
  } else {
    require(r.a >= 0.0 && r.a < 1.0, ErrorCode::RangeViolation, "extremal bump radius must lie in [0, 1)");
    desc << " extremal(a=" << r.a << ",s=" << r.s << ",m=" << r.m << ")";
    const double scale = std::pow(1.0 - r.a * r.a, r.s);
    f.eval = [r, scale](Complex z) {
      return ipow(std::conj(z), r.conj_power) * ipow(z, r.power) * scale * inverse_power(1.0 - r.a * z, r.m);
    };
    f.circle_mean = [r, scale](double radius, double p) {
      return std::pow(radius, (r.conj_power + r.power) * p) * std::pow(scale, p) *
             modulus_power_circle_mean(r.a * radius, -r.m * p);
    };
    f.boundary_distance = 1.0 - r.a;
  }
  f.description = desc.str();
  return f;
}

/// Deterministic family generation; a pure function of the FamilySpec.
inline std::vector<SampledFunction> generate(const FamilySpec& spec) {
  std::vector<SampledFunction> out;
  switch (spec.kind) {
    case FamilySpec::Kind::Monomials:
      require(spec.max_k >= 0 && spec.max_k <= 64, ErrorCode::RangeViolation, "max_k must lie in [0, 64]");
      for (int k = 0; k <= spec.max_k; ++k) out.push_back(monomial(k));
      break;
    case FamilySpec::Kind::Extremal:
      require(!spec.radii.empty(), ErrorCode::RangeViolation, "extremal family needs radii");
      for (double a : spec.radii) out.push_back(extremal(a, spec.s, spec.m));
      break;
    case FamilySpec::Kind::RandomPoly: {
      require(spec.degree >= 0 && spec.degree <= 32, ErrorCode::RangeViolation, "degree must lie in [0, 32]");
      require(spec.count >= 1, ErrorCode::RangeViolation, "count must be positive");
      SplitMix64 rng(spec.seed);
      for (int i = 0; i < spec.count; ++i) {
        std::vector<Complex> c(static_cast<std::size_t>(spec.degree) + 1);
        for (auto& v : c) {
          const double re = rng.uniform();
          const double im = rng.uniform();
          v = {re, im};
        }
        out.push_back(polynomial(std::move(c), "random_poly(deg=" + std::to_string(spec.degree) +
                                                   ",seed=" + std::to_string(spec.seed) +
                                                   ",index=" + std::to_string(i) + ")"));
      }
      break;
    }
    case FamilySpec::Kind::NonAnalytic:
      require(!spec.recipes.empty(), ErrorCode::RangeViolation, "non-analytic family needs recipes");
      for (const auto& r : spec.recipes) out.push_back(non_analytic(r));
      break;
  }
  return out;
}

}  // namespace bergman
