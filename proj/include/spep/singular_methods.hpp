// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "spep/common.hpp"
#include "spep/linalg.hpp"
#include "spep/matrix_polynomial.hpp"
#include "spep/pep_solver.hpp"
#include "spep/random.hpp"

namespace spep {

enum class Method { perturbation, projection, augmentation };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::perturbation: return "perturbation";
    case Method::projection: return "projection";
    case Method::augmentation: return "augmentation";
  }
  return "?";
}

struct SolverConfig {
  // Perturbation size. True and random eigenvalues are independent of tau,
  // so the choice is purely numerical: the filter-vector noise scales like
  // eps ||P|| / tau, and 1e-1 keeps clustered ill-conditioned eigenvalues
  // clear of the delta filter where 1e-2 leaves no margin.
  double tau = 1e-1;
  std::optional<double> delta_filter;       // filter threshold; default depends on the method
  int rank_samples = 3;                     // sample points for the normal rank
  double rank_tol = 0.0;                    // 0 = automatic SVD tolerance
  std::uint64_t master_seed = 1;
};

/// Filter threshold delta: 1e-10 for the perturbation method, 1e-12 for
/// projection and augmentation, unless overridden.
inline double filter_delta(const SolverConfig& cfg, Method m) {
  if (cfg.delta_filter) return *cfg.delta_filter;
  return m == Method::perturbation ? 1e-10 : 1e-12;
}

/// The random data defining one regularizing transform. Only the fields of
/// the active kind are populated.
struct TransformBundle {
  Method kind = Method::perturbation;
  int k = 0;       // nullity n - nrank
  double tau = 0;  // perturbation only

  // perturbation + augmentation: orthonormal n x k factors
  Matrix U, V;
  // perturbation: coefficients of Q(lambda); augmentation: Q1, Q2
  std::vector<Matrix> q_coeffs, q1_coeffs, q2_coeffs;
  // projection: W (m x r), Z (n x r) and their orthonormal complements
  Matrix W, W_perp, Z, Z_perp;
};

/// One computed eigenvalue of the transformed problem with its filter
/// quantities alpha, beta, condition quantity gamma, and the threshold the
/// filter used (lambda-dependent for projection).
struct CandidateEigenvalue {
  ProjectiveEigenvalue lambda;
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double threshold = 0.0;
  Vector right_x, left_y;
  bool passed_filter = false;
};

/// Normal rank: max of numerical_rank(P(zeta_j)) over rank_samples random
/// points on the unit circle. The automatic tolerance scales with the
/// Horner evaluation magnitude sum_i ||A_i||, not with sigma_max alone:
/// evaluation rounding lives at that scale and would otherwise inflate the
/// rank of exactly rank-deficient polynomials.
inline Index normal_rank(const MatrixPolynomial& p, const SolverConfig& cfg, RngStream& rng) {
  double tol = cfg.rank_tol;
  if (tol <= 0.0)
    tol = 8.0 * static_cast<double>(std::max(p.rows(), p.cols())) * kEps *
          p.coefficient_norm_scale(1.0);
  Index r = 0;
  for (int s = 0; s < std::max(1, cfg.rank_samples); ++s)
    r = std::max(r, numerical_rank(p.evaluate(rng.unit_circle()), tol));
  return r;
}

inline TransformBundle make_perturbation_bundle(const MatrixPolynomial& p, int k,
                                                const SolverConfig& cfg, RngStream& rng) {
  TransformBundle b;
  b.kind = Method::perturbation;
  b.k = k;
  b.tau = cfg.tau;
  b.U = random_orthonormal(p.rows(), k, rng);
  b.V = random_orthonormal(p.cols(), k, rng);
  for (int i = 0; i <= p.degree(); ++i) b.q_coeffs.push_back(rng.gaussian_matrix(k, k));
  return b;
}

/// P + tau U Q(lambda) V*.
inline MatrixPolynomial apply_perturbation(const MatrixPolynomial& p, const TransformBundle& b) {
  std::vector<Matrix> coeffs;
  coeffs.reserve(p.degree() + 1);
  for (int i = 0; i <= p.degree(); ++i)
    coeffs.push_back(p.coeff(i) + b.tau * b.U * b.q_coeffs[i] * b.V.adjoint());
  return MatrixPolynomial(std::move(coeffs));
}

inline TransformBundle make_projection_bundle(Index m, Index n, Index r, RngStream& rng) {
  TransformBundle b;
  b.kind = Method::projection;
  b.k = static_cast<int>(n - r);
  Matrix wh = random_unitary(m, rng);
  Matrix zh = random_unitary(n, rng);
  b.W = wh.leftCols(r);
  b.W_perp = wh.rightCols(m - r);
  b.Z = zh.leftCols(r);
  b.Z_perp = zh.rightCols(n - r);
  return b;
}

/// W* P(lambda) Z, the r x r projected polynomial.
inline MatrixPolynomial apply_projection(const MatrixPolynomial& p, const TransformBundle& b) {
  return transformed(b.W.adjoint(), p, b.Z);
}

inline TransformBundle make_augmentation_bundle(const MatrixPolynomial& p, int k,
                                                const SolverConfig& cfg, RngStream& rng) {
  TransformBundle b;
  b.kind = Method::augmentation;
  b.k = k;
  b.U = random_orthonormal(p.rows(), k, rng);
  b.V = random_orthonormal(p.cols(), k, rng);
  // Gaussian border blocks scaled to P's coefficient norms. The scalar
  // factor moves no eigenvalue of Q1, Q2 but keeps the augmented matrix
  // from being graded, which the eigenvector accuracy depends on.
  double scale = 0.0;
  for (int i = 0; i <= p.degree(); ++i) scale = std::max(scale, p.coeff(i).norm());
  if (scale <= 0.0) scale = 1.0;
  for (int i = 0; i <= p.degree(); ++i) {
    b.q1_coeffs.push_back(scale * rng.gaussian_matrix(k, k));
    b.q2_coeffs.push_back(scale * rng.gaussian_matrix(k, k));
  }
  return b;
}

/// Block polynomial [[P, U Q1], [Q2 V*, 0]] of size (n+k) x (n+k).
inline MatrixPolynomial apply_augmentation(const MatrixPolynomial& p, const TransformBundle& b) {
  const Index n = p.rows();
  const int k = b.k;
  std::vector<Matrix> coeffs;
  coeffs.reserve(p.degree() + 1);
  for (int i = 0; i <= p.degree(); ++i) {
    Matrix c = Matrix::Zero(n + k, n + k);
    c.topLeftCorner(n, n) = p.coeff(i);
    c.topRightCorner(n, k) = b.U * b.q1_coeffs[i];
    c.bottomLeftCorner(k, n) = b.q2_coeffs[i] * b.V.adjoint();
    coeffs.push_back(std::move(c));
  }
  return MatrixPolynomial(std::move(coeffs));
}

namespace detail {

inline double row_norm(const Eigen::RowVectorXcd& v) { return v.norm(); }

}  // namespace detail

/// Solve the transformed regular problem and attach the filter quantities
/// of the bundle's method to every eigentriplet.
inline std::vector<CandidateEigenvalue> run_with_bundle(const MatrixPolynomial& p,
                                                        const TransformBundle& bundle,
                                                        const SolverConfig& cfg) {
  const double delta = filter_delta(cfg, bundle.kind);
  MatrixPolynomial transformed_poly = [&] {
    switch (bundle.kind) {
      case Method::perturbation: return apply_perturbation(p, bundle);
      case Method::projection: return apply_projection(p, bundle);
      case Method::augmentation: return apply_augmentation(p, bundle);
    }
    throw Error("unknown method");
  }();

  std::vector<EigenTriplet> triplets = solve_regular(transformed_poly);
  std::vector<CandidateEigenvalue> out;
  out.reserve(triplets.size());

  const MatrixPolynomial rev = p.reversal();
  const Index n = p.rows();

  for (auto& t : triplets) {
    CandidateEigenvalue c;
    c.lambda = t.lambda;
    c.threshold = delta;
    switch (bundle.kind) {
      case Method::perturbation: {
        c.alpha = (bundle.V.adjoint() * t.right_x).norm();
        c.beta = (bundle.U.adjoint() * t.left_y).norm();
        c.gamma = gamma(transformed_poly, t);
        break;
      }
      case Method::projection: {
        // The projection filters sandwich the original P between the factors;
        // at an infinite eigenvalue the reversal at 0 takes over, with the
        // threshold scale ||A_d||.
        if (t.lambda.is_infinite()) {
          Matrix value = rev.evaluate(Complex(0.0, 0.0));
          c.alpha = (bundle.W_perp.adjoint() * value * bundle.Z * t.right_x).norm();
          c.beta = (t.left_y.adjoint() * bundle.W.adjoint() * value * bundle.Z_perp).norm();
          c.gamma = 0.0;
          c.threshold = delta * rev.coefficient_norm_scale(0.0);
        } else {
          Complex lam = t.lambda.value();
          Matrix value = p.evaluate(lam);
          c.alpha = (bundle.W_perp.adjoint() * value * bundle.Z * t.right_x).norm();
          c.beta = (t.left_y.adjoint() * bundle.W.adjoint() * value * bundle.Z_perp).norm();
          Vector dx = p.derivative_evaluate(lam) * (bundle.Z * t.right_x);
          Complex num = (bundle.W * t.left_y).dot(dx);
          double g = std::abs(num) * eigenvalue_weight(std::abs(lam), p.degree());
          c.gamma = std::isfinite(g) ? g : 0.0;
          c.threshold = delta * p.coefficient_norm_scale(std::abs(lam));
        }
        break;
      }
      case Method::augmentation: {
        c.alpha = t.right_x.tail(bundle.k).norm();
        c.beta = t.left_y.tail(bundle.k).norm();
        if (t.lambda.is_infinite()) {
          c.gamma = 0.0;
        } else {
          Complex lam = t.lambda.value();
          Vector dx = p.derivative_evaluate(lam) * t.right_x.head(n);
          Complex num = t.left_y.head(n).dot(dx);
          double g = std::abs(num) * eigenvalue_weight(std::abs(lam), p.degree());
          c.gamma = std::isfinite(g) ? g : 0.0;
        }
        break;
      }
    }
    c.right_x = std::move(t.right_x);
    c.left_y = std::move(t.left_y);
    c.passed_filter = std::max(c.alpha, c.beta) < c.threshold;
    out.push_back(std::move(c));
  }
  return out;
}

/// One full run of the selected method: estimate the normal rank (unless k
/// is overridden), build the transform, solve, and attach filters.
/// Rectangular input is squared up with zero rows/columns for perturbation
/// and augmentation; projection projects an m x n problem straight to
/// nrank x nrank.
inline std::vector<CandidateEigenvalue> run_method(const MatrixPolynomial& p, Method method,
                                                   const SolverConfig& cfg, RngStream& rng,
                                                   std::optional<int> k_override = {}) {
  const Index m = p.rows();
  const Index n = p.cols();

  if (method == Method::projection) {
    Index r = k_override ? (std::max(m, n) - *k_override)
                         : normal_rank(p, cfg, rng);
    if (r < 1) throw Error("projection: empty result (nullity >= dimension)");
    if (r > std::min(m, n)) throw InvalidInputError("projection: rank override exceeds dimensions");
    TransformBundle bundle = make_projection_bundle(m, n, r, rng);
    return run_with_bundle(p, bundle, cfg);
  }

  const Index nn = std::max(m, n);
  const MatrixPolynomial sq = (m == n) ? p : pad_to(p, nn, nn);
  Index r = k_override ? (nn - *k_override) : normal_rank(sq, cfg, rng);
  int k = static_cast<int>(nn - r);
  if (k < 0) throw InvalidInputError("run_method: rank override exceeds dimension");

  if (k == 0) {
    // Already regular: solve directly; every eigenvalue passes the filter.
    std::vector<EigenTriplet> triplets = solve_regular(sq);
    std::vector<CandidateEigenvalue> out;
    out.reserve(triplets.size());
    const double delta = filter_delta(cfg, method);
    for (auto& t : triplets) {
      CandidateEigenvalue c;
      c.lambda = t.lambda;
      c.gamma = gamma(sq, t);
      c.threshold = delta;
      c.right_x = std::move(t.right_x);
      c.left_y = std::move(t.left_y);
      c.passed_filter = true;
      out.push_back(std::move(c));
    }
    return out;
  }

  TransformBundle bundle = (method == Method::perturbation)
                               ? make_perturbation_bundle(sq, k, cfg, rng)
                               : make_augmentation_bundle(sq, k, cfg, rng);
  return run_with_bundle(sq, bundle, cfg);
}

}  // namespace spep
