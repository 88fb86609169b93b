#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bergman/core.hpp"

namespace bergman {

/// Nodes and weights of a one-dimensional rule.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Monic three-term recurrence for Jacobi polynomials on [-1, 1] with weight
// (1-x)^a (1+x)^b:  p_{k+1} = (x - diag[k]) p_k - offdiag2[k] p_{k-1}.
struct JacobiRecurrence {
  std::vector<double> diag;      // a_k, k = 0..n-1
  std::vector<double> offdiag2;  // b_k, k = 1..n-1 (index 0 unused)
  double mass;                   // integral of the weight
};

inline JacobiRecurrence jacobi_recurrence(std::size_t n, double a, double b) {
  JacobiRecurrence r;
  r.diag.resize(n);
  r.offdiag2.assign(n, 0.0);
  const double ab = a + b;
  r.mass = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(ab + 2.0));
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    if (k == 0) {
      r.diag[k] = (b - a) / (ab + 2.0);
    } else {
      const double s = 2.0 * kk + ab;
      r.diag[k] = (b * b - a * a) / (s * (s + 2.0));
    }
    if (k >= 1) {
      if (k == 1) {
        r.offdiag2[k] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
      } else {
        const double s = 2.0 * kk + ab;
        r.offdiag2[k] =
            4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
      }
    }
  }
  return r;
}

}  // namespace detail

/// Gauss-Jacobi rule for  int_{-1}^{1} f(x) (1-x)^a (1+x)^b dx,  a, b > -1.
///
/// Nodes come from the Golub-Welsch eigenproblem; weights from the
/// Christoffel function 1 / sum_k phat_k(x_i)^2 evaluated with the orthonormal
/// recurrence, which keeps the tiny endpoint weights relatively accurate.
inline Rule1D gauss_jacobi(std::size_t n, double a, double b) {
  require(n >= 1, ErrorCode::InvalidCount, "Gauss-Jacobi needs at least one node");
  require(a > -1.0 && b > -1.0, ErrorCode::BadWeight, "Jacobi exponents must exceed -1");
  const auto rec = detail::jacobi_recurrence(n, a, b);

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (std::size_t k = 0; k < n; ++k) diag(k) = rec.diag[k];
  for (std::size_t k = 1; k < n; ++k) sub(k - 1) = std::sqrt(rec.offdiag2[k]);

  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = rec.diag[0];
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    for (std::size_t i = 0; i < n; ++i) rule.nodes[i] = solver.eigenvalues()(i);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double x = rule.nodes[i];
    double prev = 0.0;
    double cur = 1.0 / std::sqrt(rec.mass);
    double sum = cur * cur;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double beta_k = k == 0 ? 0.0 : std::sqrt(rec.offdiag2[k]);
      const double next = ((x - rec.diag[k]) * cur - beta_k * prev) / std::sqrt(rec.offdiag2[k + 1]);
      prev = cur;
      cur = next;
      sum += cur * cur;
    }
    rule.weights[i] = 1.0 / sum;
  }
  return rule;
}

/// Gauss-Jacobi rule on [0, 1] for weight (1-s)^a s^b.
inline Rule1D gauss_jacobi_unit(std::size_t n, double a, double b) {
  Rule1D rule = gauss_jacobi(n, a, b);
  const double scale = std::pow(2.0, -(a + b + 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (rule.nodes[i] + 1.0);
    rule.weights[i] *= scale;
  }
  return rule;
}

inline Rule1D gauss_legendre_unit(std::size_t n) { return gauss_jacobi_unit(n, 0.0, 0.0); }

}  // namespace bergman
