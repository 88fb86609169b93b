#pragma once

#include <array>
#include <cmath>

#include "bergman/core.hpp"
#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

enum class Normalization { None, ClassicalNormalized };

/// A kernel of type t in complex dimension n: |K| <= C1 |Phi|^{-(n+1+t)}.
/// The model kernel on the disk is c_norm / (1 - z conj(xi))^{t+2}.
class KernelSpec {
 public:
  KernelSpec(double t, int n = 1, Normalization norm = Normalization::ClassicalNormalized,
             WeightVariant variant = WeightVariant::OneMinusModSq)
      : n_(n), t_(t), norm_(norm), variant_(variant) {
    require(t > -1.0, ErrorCode::InvalidArgument, "kernel type must exceed -1");
    require(n >= 1, ErrorCode::InvalidArgument, "dimension must be positive");
  }

  int n() const { return n_; }
  double t() const { return t_; }
  double t_tilde() const { return t_ + n_ + 1; }
  Normalization normalization() const { return norm_; }
  WeightVariant weight_variant() const { return variant_; }

  /// (t+1)/pi under the classical normalisation, 1 otherwise. Also the
  /// constant C1 of the type-t bound for the model kernel.
  double c_norm() const { return norm_ == Normalization::ClassicalNormalized ? (t_ + 1.0) / kPi : 1.0; }

 private:
  int n_;
  double t_;
  Normalization norm_;
  WeightVariant variant_;
};

/// Henkin-Ramirez function of the disk: 1 - z conj(xi).
inline Complex henkin_ramirez(Complex z, Complex xi) { return 1.0 - z * std::conj(xi); }

/// Componentwise Henkin-Ramirez factors on the disk or bidisk.
inline std::vector<Complex> henkin_ramirez(const DomainModel& domain, std::span<const Complex> z,
                                           std::span<const Complex> xi) {
  require(domain.kind() != DomainKind::UnitBall, ErrorCode::UnsupportedDomain,
          "Henkin-Ramirez model only available on the disk and bidisk");
  require(z.size() == xi.size() && static_cast<int>(z.size()) == domain.dimension(),
          ErrorCode::InvalidArgument, "point dimension mismatch");
  std::vector<Complex> out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = henkin_ramirez(z[j], xi[j]);
  return out;
}

/// w^{-e} for complex w off the negative real axis; integer e uses repeated multiplication.
inline Complex inverse_power(Complex w, double e) {
  const double rounded = std::round(e);
  if (rounded == e && std::abs(e) <= 64.0) {
    const int k = static_cast<int>(rounded);
    Complex acc{1.0, 0.0}, base = w;
    for (int m = std::abs(k); m > 0; m >>= 1) {
      if (m & 1) acc *= base;
      base *= base;
    }
    return k >= 0 ? 1.0 / acc : acc;
  }
  return std::exp(-e * std::log(w));
}

/// Mean of |1 - rho e^{i theta}|^e over the circle, 0 <= rho < 1, any real e.
/// With lambda = -e/2, (1 - w)^{-lambda} has coefficients (lambda)_k / k!, so by
/// Parseval the mean is 2F1(lambda, lambda; 1; rho^2).
inline double modulus_power_circle_mean(double rho, double e) {
  require(rho >= 0.0 && rho < 1.0, ErrorCode::InvalidArgument, "rho must lie in [0, 1)");
  const double lambda = -0.5 * e;
  const double x = rho * rho;
  double b2 = 1.0, sum = 1.0;
  for (std::size_t k = 0; k < (std::size_t{1} << 28); ++k) {
    const double ratio = (lambda + static_cast<double>(k)) / (static_cast<double>(k) + 1.0);
    b2 *= ratio * ratio * x;
    sum += b2;
    if (b2 <= 1e-17 * sum && ratio * ratio * x < 1.0) break;
  }
  return sum;
}

/// K_{t~}(z, xi) = c_norm / (1 - z conj(xi))^{t+2}; holomorphic in z.
/// The transposed kernel K~(z, xi) = K(xi, z) is obtained by swapping arguments.
inline Complex kernel_type_t(Complex z, Complex xi, const KernelSpec& spec) {
  require(spec.n() == 1, ErrorCode::UnsupportedDomain, "model kernel is defined for the disk");
  return spec.c_norm() * inverse_power(henkin_ramirez(z, xi), spec.t() + 2.0);
}

/// One factor D_a(xi, z) = (a+1)/pi (1-|xi|)^a / (1 - conj(xi) z)^{a+2}; the
/// weight factor uses 1-|xi|^2 under the classical variant.
inline Complex kernel_factor_D(Complex xi, Complex z, double alpha, WeightVariant variant) {
  require(alpha > -1.0, ErrorCode::BadWeight, "alpha must exceed -1");
  return (alpha + 1.0) / kPi * boundary_weight(std::abs(xi), alpha, variant) *
         inverse_power(1.0 - std::conj(xi) * z, alpha + 2.0);
}

/// Product kernel D_a(z, xi) = D_{a1}(xi1, z1) * D_{a2}(xi2, z2).
inline Complex product_kernel_D(std::array<Complex, 2> z, std::array<Complex, 2> xi,
                                std::array<double, 2> alpha,
                                WeightVariant variant = WeightVariant::OneMinusMod) {
  return kernel_factor_D(xi[0], z[0], alpha[0], variant) * kernel_factor_D(xi[1], z[1], alpha[1], variant);
}

}  // namespace bergman
