#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bergman/core.hpp"

namespace bergman {

using Point = std::vector<Complex>;

enum class DomainKind { UnitDisk, UnitBall, Bidisk };

/// A model domain with the inside-positive defining function rho
/// (rho > 0 inside, rho = 0 on the boundary) and level cutoff r0.
///
/// Level sets D_r = {rho > r}; for the disk this is the disk of radius 1 - r.
class DomainModel {
 public:
  static DomainModel unit_disk(double r0 = 0.5) { return DomainModel(DomainKind::UnitDisk, 1, r0); }
  static DomainModel unit_ball(int n, double r0 = 0.5) {
    require(n >= 2, ErrorCode::InvalidArgument, "unit ball needs n >= 2");
    return DomainModel(DomainKind::UnitBall, n, r0);
  }
  static DomainModel bidisk(double r0 = 0.5) { return DomainModel(DomainKind::Bidisk, 2, r0); }

  DomainKind kind() const { return kind_; }
  int dimension() const { return n_; }
  double r0() const { return r0_; }

  /// rho(z): 1 - |z| on disk and ball, min over factors on the bidisk.
  double rho(std::span<const Complex> z) const {
    require(static_cast<int>(z.size()) == n_, ErrorCode::InvalidArgument, "point dimension mismatch");
    switch (kind_) {
      case DomainKind::UnitDisk: return 1.0 - std::abs(z[0]);
      case DomainKind::UnitBall: {
        double s = 0.0;
        for (const auto& c : z) s += std::norm(c);
        return 1.0 - std::sqrt(s);
      }
      case DomainKind::Bidisk: return std::min(1.0 - std::abs(z[0]), 1.0 - std::abs(z[1]));
    }
    return 0.0;
  }

 private:
  DomainModel(DomainKind kind, int n, double r0) : kind_(kind), n_(n), r0_(r0) {
    require(r0 > 0.0 && r0 < 1.0, ErrorCode::InvalidArgument, "r0 must lie in (0, 1)");
  }
  DomainKind kind_;
  int n_;
  double r0_;
};

inline double eval_rho(const DomainModel& domain, std::span<const Complex> z) { return domain.rho(z); }
inline double eval_rho(const DomainModel& domain, Complex z) { return domain.rho(std::span<const Complex>(&z, 1)); }

/// A real C^2 function on C^n, positive inside its domain.
struct DefiningFunction {
  int dimension = 1;
  std::string name;
  std::function<double(std::span<const Complex>)> rho;

  DefiningFunction scaled(double c) const {
    auto inner = rho;
    return {dimension, name + "*" + std::to_string(c),
            [inner, c](std::span<const Complex> z) { return c * inner(z); }};
  }
};

namespace defining {

inline double norm_sq(std::span<const Complex> z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

inline DefiningFunction disk() {
  return {1, "disk", [](std::span<const Complex> z) { return 1.0 - std::norm(z[0]); }};
}

/// 1 - |z|^2 in C^n.
inline DefiningFunction ball(int n) {
  return {n, "ball", [](std::span<const Complex> z) { return 1.0 - norm_sq(z); }};
}

/// Spherical shell {inner < |z|^2 < 1}: (1 - |z|^2)(|z|^2 - inner).
inline DefiningFunction shell(int n, double inner = 0.5) {
  return {n, "shell", [inner](std::span<const Complex> z) {
            const double s = norm_sq(z);
            return (1.0 - s) * (s - inner);
          }};
}

/// Ellipsoid 1 - sum |z_j|^2 / a_j^2.
inline DefiningFunction ellipsoid(std::vector<double> axes) {
  const int n = static_cast<int>(axes.size());
  for (double a : axes) require(a > 0.0, ErrorCode::InvalidArgument, "ellipsoid axes must be positive");
  return {n, "ellipsoid", [axes = std::move(axes)](std::span<const Complex> z) {
            double s = 0.0;
            for (std::size_t j = 0; j < axes.size(); ++j) s += std::norm(z[j]) / (axes[j] * axes[j]);
            return 1.0 - s;
          }};
}

}  // namespace defining

struct LeviOptions {
  double h = 1e-5;
  double tol_boundary = 1e-10;
  double tol_grad = 1e-8;
  double tol_psd = 1e-6;
};

struct LeviReport {
  Point point;
  std::vector<Complex> gradient;           // d rho / d z_j
  std::vector<std::vector<Complex>> tangent_basis;
  std::vector<double> levi_eigenvalues;    // ascending, Levi form of -rho on the tangent space
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  bool pseudoconvex = true;

  double max_tangency_residual() const {
    double worst = 0.0;
    for (const auto& w : tangent_basis) {
      Complex acc{};
      for (std::size_t j = 0; j < w.size(); ++j) acc += gradient[j] * w[j];
      worst = std::max(worst, std::abs(acc));
    }
    return worst;
  }
};

namespace detail {

// Real coordinates: x_{2j} = Re z_j, x_{2j+1} = Im z_j.
inline double eval_real(const DefiningFunction& f, std::span<const Complex> base, int i, double di,
                        int j, double dj) {
  Point z(base.begin(), base.end());
  auto bump = [&z](int idx, double d) {
    if (d == 0.0) return;
    auto& c = z[static_cast<std::size_t>(idx / 2)];
    c = (idx % 2 == 0) ? Complex(c.real() + d, c.imag()) : Complex(c.real(), c.imag() + d);
  };
  bump(i, di);
  bump(j, dj);
  return f.rho(z);
}

constexpr int kStencilOffsets[4] = {-2, -1, 1, 2};
constexpr double kStencilFirst[4] = {1.0, -8.0, 8.0, -1.0};  // over 12h

inline double first_partial(const DefiningFunction& f, std::span<const Complex> p, int i, double h) {
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) acc += kStencilFirst[a] * eval_real(f, p, i, kStencilOffsets[a] * h, 0, 0.0);
  return acc / (12.0 * h);
}

inline double second_partial(const DefiningFunction& f, std::span<const Complex> p, int i, int j, double h) {
  if (i == j) {
    const double c[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
    double acc = 0.0;
    for (int a = -2; a <= 2; ++a) acc += c[a + 2] * eval_real(f, p, i, a * h, 0, 0.0);
    return acc / (12.0 * h * h);
  }
  double acc = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      acc += kStencilFirst[a] * kStencilFirst[b] *
             eval_real(f, p, i, kStencilOffsets[a] * h, j, kStencilOffsets[b] * h);
  return acc / (144.0 * h * h);
}

}  // namespace detail

/// Numerical Levi-form check at a boundary point p.
///
/// Wirtinger derivatives are assembled from 4th-order central differences in
/// the real coordinates. The complex Hessian of -rho is restricted to an
/// orthonormal basis of {w : sum_j d rho/d z_j (p) w_j = 0}; p is a
/// pseudoconvex point iff its smallest eigenvalue is >= -tol_psd.
inline LeviReport levi_check(const DefiningFunction& f, std::span<const Complex> p,
                             const LeviOptions& opt = {}) {
  const int n = f.dimension;
  require(static_cast<int>(p.size()) == n, ErrorCode::InvalidArgument, "point dimension mismatch");
  require(std::abs(f.rho(p)) < opt.tol_boundary, ErrorCode::NotOnBoundary,
          "|rho(p)| = " + std::to_string(std::abs(f.rho(p))));

  LeviReport report;
  report.point.assign(p.begin(), p.end());
  report.gradient.resize(static_cast<std::size_t>(n));
  double grad_norm_sq = 0.0;
  for (int j = 0; j < n; ++j) {
    const double dx = detail::first_partial(f, p, 2 * j, opt.h);
    const double dy = detail::first_partial(f, p, 2 * j + 1, opt.h);
    report.gradient[static_cast<std::size_t>(j)] = 0.5 * Complex(dx, -dy);
    grad_norm_sq += dx * dx + dy * dy;
  }
  require(std::sqrt(grad_norm_sq) >= opt.tol_grad, ErrorCode::GradientVanishes,
          "gradient vanishes at p");

  if (n == 1) return report;  // trivial complex tangent space

  // L_ij = d^2(-rho) / dz_i dzbar_j
  //      = -(1/4) [(r_xixj + r_yiyj) + i (r_xiyj - r_yixj)].
  Eigen::MatrixXcd levi(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double xx = detail::second_partial(f, p, 2 * i, 2 * j, opt.h);
      const double yy = detail::second_partial(f, p, 2 * i + 1, 2 * j + 1, opt.h);
      const double xy = detail::second_partial(f, p, 2 * i, 2 * j + 1, opt.h);
      const double yx = detail::second_partial(f, p, 2 * i + 1, 2 * j, opt.h);
      levi(i, j) = -0.25 * Complex(xx + yy, xy - yx);
    }
  }
  levi = 0.5 * (levi + levi.adjoint()).eval();

  // Tangent vectors are Hermitian-orthogonal to conj(gradient).
  Eigen::VectorXcd normal(n);
  for (int j = 0; j < n; ++j) normal(j) = std::conj(report.gradient[static_cast<std::size_t>(j)]);
  normal.normalize();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(normal);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd basis = q.rightCols(n - 1);

  for (int k = 0; k < n - 1; ++k) {
    std::vector<Complex> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = basis(j, k);
    report.tangent_basis.push_back(std::move(w));
  }

  // Hermitian form on coordinates c with w = B c:  H = B^T L conj(B).
  const Eigen::MatrixXcd restricted = basis.transpose() * levi * basis.conjugate();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (restricted + restricted.adjoint()));
  for (int k = 0; k < n - 1; ++k) report.levi_eigenvalues.push_back(eig.eigenvalues()(k));
  report.min_eigenvalue = report.levi_eigenvalues.front();
  report.pseudoconvex = report.min_eigenvalue >= -opt.tol_psd;
  return report;
}

/// Seeded quasi-uniform boundary points.
inline std::vector<Point> sample_boundary(const DomainModel& domain, std::size_t count, std::uint64_t seed) {
  require(count >= 1, ErrorCode::InvalidCount, "sample count must be positive");
  SplitMix64 rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  const int n = domain.dimension();
  for (std::size_t i = 0; i < count; ++i) {
    switch (domain.kind()) {
      case DomainKind::UnitDisk: {
        out.push_back({std::polar(1.0, 2.0 * kPi * rng.uniform())});
        break;
      }
      case DomainKind::UnitBall: {
        Point z(static_cast<std::size_t>(n));
        double s = 0.0;
        do {
          s = 0.0;
          for (auto& c : z) {
            c = {rng.normal(), rng.normal()};
            s += std::norm(c);
          }
        } while (s < 1e-12);
        const double inv = 1.0 / std::sqrt(s);
        for (auto& c : z) c *= inv;
        out.push_back(std::move(z));
        break;
      }
      case DomainKind::Bidisk: {
        // One coordinate on the circle, the other uniform in the closed disk.
        const bool first = rng.uniform() < 0.5;
        const Complex on = std::polar(1.0, 2.0 * kPi * rng.uniform());
        const Complex in = std::polar(std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
        out.push_back(first ? Point{on, in} : Point{in, on});
        break;
      }
    }
  }
  return out;
}

}  // namespace bergman
