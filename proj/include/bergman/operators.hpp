#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <variant>

#include "bergman/core.hpp"
#include "bergman/fft.hpp"
#include "bergman/functions.hpp"
#include "bergman/kernels.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

struct GridSize {
  std::size_t n_radial = 256;
  std::size_t n_angular = 512;
};

/// Weighted projection on the disk,
///   (T f)(w) = int K_{alpha+2}(w, z) f(z) W_alpha(|z|) dA(z),
///   K_{alpha+2}(w, z) = (alpha+1)/pi (1 - w conj(z))^{-(alpha+2)},
/// with W_alpha = (1-|z|^2)^alpha (classical, reproducing) or (1-|z|)^alpha
/// (literal). The kernel is holomorphic in the output variable w.
class DiskProjection {
 public:
  DiskProjection(double alpha, WeightVariant variant = WeightVariant::OneMinusModSq, GridSize size = {})
      : alpha_(alpha), variant_(variant), kernel_(alpha, 1, Normalization::ClassicalNormalized, variant),
        grid_(disk_grid(size.n_radial, size.n_angular, alpha, variant)) {}

  double alpha() const { return alpha_; }
  double alpha0() const { return alpha_ + 2.0; }  // alpha + n + 1 with n = 1
  WeightVariant variant() const { return variant_; }
  const QuadGrid& grid() const { return grid_; }

  /// Quadrature evaluation at one output point.
  Complex apply(const SampledFunction& f, Complex w) const {
    require(std::abs(w) < 1.0, ErrorCode::InvalidArgument, "output point must lie in the open disk");
    return grid_.integrate([&](Complex z) { return kernel_type_t(w, z, kernel_) * f(z); });
  }

  /// Evaluation at many points, sampling f on the grid once.
  std::vector<Complex> apply_many(const SampledFunction& f, std::span<const Complex> ws) const {
    std::vector<Complex> fv(grid_.nodes.size());
    for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = grid_.weights[i] * f(grid_.nodes[i]);
    std::vector<Complex> out;
    out.reserve(ws.size());
    std::vector<Complex> terms(fv.size());
    for (Complex w : ws) {
      require(std::abs(w) < 1.0, ErrorCode::InvalidArgument, "output point must lie in the open disk");
      for (std::size_t i = 0; i < fv.size(); ++i) terms[i] = kernel_type_t(w, grid_.nodes[i], kernel_) * fv[i];
      out.push_back(pairwise_sum(terms));
    }
    return out;
  }

  /// T z^k = lambda_k z^k for every radial weight. lambda_k = 2 (alpha+1)
  /// binom(k+alpha+1, k) int_0^1 r^{2k+1} W(r) dr, in closed form:
  /// identically 1 for the classical weight.
  double multiplier(std::size_t k) const {
    const double kk = static_cast<double>(k);
    const double log_binom = std::lgamma(kk + alpha_ + 2.0) - std::lgamma(kk + 1.0) - std::lgamma(alpha_ + 2.0);
    double log_moment;
    if (variant_ == WeightVariant::OneMinusModSq) {
      // int r^{2k+1} (1-r^2)^a dr = B(k+1, a+1) / 2
      log_moment = std::lgamma(kk + 1.0) + std::lgamma(alpha_ + 1.0) - std::lgamma(kk + alpha_ + 2.0) - std::log(2.0);
    } else {
      // int r^{2k+1} (1-r)^a dr = B(2k+2, a+1)
      log_moment = std::lgamma(2.0 * kk + 2.0) + std::lgamma(alpha_ + 1.0) - std::lgamma(2.0 * kk + alpha_ + 3.0);
    }
    return 2.0 * (alpha_ + 1.0) * std::exp(log_binom + log_moment);
  }

  /// Image of a function carrying Taylor coefficients: coefficientwise multiplier.
  SampledFunction image_of_series(const SampledFunction& f) const {
    require(static_cast<bool>(f.series), ErrorCode::InvalidArgument, "input has no Taylor series");
    TaylorSeries s = *f.series;
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) s.coeffs[k] *= multiplier(k);
    auto out = from_series(std::move(s), "T[" + f.description + "]");
    out.boundary_distance = f.boundary_distance;
    return out;
  }

  /// Image of an arbitrary integrable function by the grid quadrature, grouped
  /// by angular mode: an FFT on every ring gives int f(r e^{it}) e^{-ikt} dt,
  /// and the kernel expansion sum_k binom(k+alpha+1, k) (w conj z)^k turns
  /// these into Taylor coefficients of T f (modes k < n_angular / 2).
  SampledFunction image_by_modes(const SampledFunction& f) const {
    const std::size_t nr = grid_.n_radial, na = grid_.n_angular, kmax = na / 2;
    std::vector<Complex> coeffs(kmax, Complex{});
    std::vector<Complex> ring(na);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < na; ++j) ring[j] = f(grid_.nodes[i * na + j]);
      const auto modes = analyze(ring);
      double power = 1.0;
      for (std::size_t k = 0; k < kmax; ++k) {
        coeffs[k] += grid_.radial_weights[i] * power * modes[k];
        power *= grid_.radii[i];
      }
    }
    for (std::size_t k = 0; k < kmax; ++k) {
      const double kk = static_cast<double>(k);
      const double binom = std::exp(std::lgamma(kk + alpha_ + 2.0) - std::lgamma(kk + 1.0) - std::lgamma(alpha_ + 2.0));
      coeffs[k] *= 2.0 * (alpha_ + 1.0) * binom;
    }
    TaylorSeries s;
    s.coeffs = std::move(coeffs);
    auto out = from_series(std::move(s), "T[" + f.description + "]");
    out.boundary_distance = f.boundary_distance;
    return out;
  }

  /// Series route when available, modal quadrature otherwise.
  SampledFunction image(const SampledFunction& f) const {
    return f.series ? image_of_series(f) : image_by_modes(f);
  }

 private:
  double alpha_;
  WeightVariant variant_;
  KernelSpec kernel_;
  QuadGrid grid_;
};

struct TAlphaSpec {
  double alpha = 0.0;
};
struct VBetaSpec {
  std::array<double, 2> beta{0.0, 0.0};
};

/// Operator kind plus kernel weight variant and grid resolution.
struct OperatorSpec {
  std::variant<TAlphaSpec, VBetaSpec> kind = TAlphaSpec{};
  WeightVariant variant = WeightVariant::OneMinusModSq;
  GridSize grid{};

  void validate() const {
    if (const auto* t = std::get_if<TAlphaSpec>(&kind)) {
      require(t->alpha > -1.0, ErrorCode::BadWeight, "alpha must exceed -1");
    } else {
      const auto& v = std::get<VBetaSpec>(kind);
      require(v.beta[0] > -1.0 && v.beta[1] > -1.0, ErrorCode::BadWeight, "beta must exceed -1");
    }
  }
};

inline Complex apply_T_alpha(const SampledFunction& f, Complex w, const OperatorSpec& spec) {
  spec.validate();
  const auto& t = std::get<TAlphaSpec>(spec.kind);
  return DiskProjection(t.alpha, spec.variant, spec.grid).apply(f, w);
}

/// Product projection on the bidisk: one DiskProjection per coordinate.
class BidiskProjection {
 public:
  BidiskProjection(std::array<double, 2> beta, WeightVariant variant = WeightVariant::OneMinusModSq,
                   GridSize size = {64, 128})
      : first_(beta[0], variant, size), second_(beta[1], variant, size) {}

  const DiskProjection& first() const { return first_; }
  const DiskProjection& second() const { return second_; }

  /// Iterated quadrature; tensor inputs factor into two one-variable projections.
  Complex apply(const BivariateFunction& f, Complex w1, Complex w2) const {
    require(std::abs(w1) < 1.0 && std::abs(w2) < 1.0, ErrorCode::InvalidArgument,
            "output point must lie in the open bidisk");
    if (!f.terms.empty()) {
      Complex acc{};
      for (const auto& t : f.terms) acc += t.weight * first_.apply(t.first, w1) * second_.apply(t.second, w2);
      return acc;
    }
    const auto& g1 = first_.grid();
    const auto& g2 = second_.grid();
    const KernelSpec k1(first_.alpha()), k2(second_.alpha());
    std::vector<Complex> a(g1.nodes.size()), b(g2.nodes.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = g1.weights[i] * kernel_type_t(w1, g1.nodes[i], k1);
    for (std::size_t j = 0; j < b.size(); ++j) b[j] = g2.weights[j] * kernel_type_t(w2, g2.nodes[j], k2);
    std::vector<Complex> outer(b.size()), inner(a.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
      for (std::size_t i = 0; i < a.size(); ++i) inner[i] = a[i] * f(g1.nodes[i], g2.nodes[j]);
      outer[j] = b[j] * pairwise_sum(inner);
    }
    return pairwise_sum(outer);
  }

  /// Image of a finite tensor sum as a tensor sum of one-variable images.
  BivariateFunction image(const BivariateFunction& f) const {
    require(!f.terms.empty(), ErrorCode::InvalidArgument, "bidisk image needs a tensor-term input");
    std::vector<TensorTerm> terms;
    for (const auto& t : f.terms) terms.push_back({first_.image(t.first), second_.image(t.second), t.weight});
    auto out = BivariateFunction::tensor(std::move(terms), "V[" + f.description + "]");
    out.boundary_distance = f.boundary_distance;
    return out;
  }

 private:
  DiskProjection first_;
  DiskProjection second_;
};

inline Complex apply_V_beta(const BivariateFunction& f, std::array<Complex, 2> w, const OperatorSpec& spec) {
  spec.validate();
  const auto& v = std::get<VBetaSpec>(spec.kind);
  return BidiskProjection(v.beta, spec.variant, spec.grid).apply(f, w[0], w[1]);
}

/// 50 deterministic interior probes on a golden-angle spiral, |z| <= 0.9.
inline std::vector<Complex> interior_probes(std::size_t count = 50, double max_radius = 0.9) {
  std::vector<Complex> out;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double radius = max_radius * std::sqrt((static_cast<double>(i) + 0.5) / static_cast<double>(count));
    out.push_back(std::polar(radius, golden * static_cast<double>(i)));
  }
  return out;
}

/// max over the probes of |f(z) - int f(xi) K_{t+2}(z, xi) (1-|xi|^2)^t dA(xi)|
/// with the classical normalised kernel, on `grid` (which must carry the
/// classical weight with exponent t).
inline double reproducing_residual(const SampledFunction& f, double t, const QuadGrid& grid) {
  require(t > 0.0, ErrorCode::InvalidArgument, "reproducing check needs t > 0");
  require(grid.kind == GridKind::DiskTensor && grid.variant == WeightVariant::OneMinusModSq &&
              grid.weight_exponent == t,
          ErrorCode::InvalidArgument, "grid must carry the classical weight (1-|z|^2)^t");
  const KernelSpec kernel(t);
  std::vector<Complex> fv(grid.nodes.size());
  for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = grid.weights[i] * f(grid.nodes[i]);
  std::vector<Complex> terms(fv.size());
  double worst = 0.0;
  for (Complex z : interior_probes()) {
    for (std::size_t i = 0; i < fv.size(); ++i) terms[i] = kernel_type_t(z, grid.nodes[i], kernel) * fv[i];
    worst = std::max(worst, std::abs(f(z) - pairwise_sum(terms)));
  }
  return worst;
}

inline double reproducing_residual(const SampledFunction& f, double t, GridSize size = {}) {
  return reproducing_residual(f, t, disk_grid(size.n_radial, size.n_angular, t, WeightVariant::OneMinusModSq));
}

}  // namespace bergman
