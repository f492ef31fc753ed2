// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "spep/common.hpp"
#include "spep/linalg.hpp"
#include "spep/matrix_polynomial.hpp"
#include "spep/projective.hpp"
#include "spep/qz.hpp"

namespace spep {

/// One eigenvalue of a regular matrix polynomial with unit-norm right and
/// left eigenvectors.
struct EigenTriplet {
  ProjectiveEigenvalue lambda;
  Vector right_x;
  Vector left_y;
};

/// First companion form of a square degree-d polynomial: the dn x dn pencil
/// A + lambda B with B = diag(A_d, I, ..., I), first block row of A
/// [A_{d-1} ... A_1 A_0] and -I on the block subdiagonal. A strong
/// linearization: finite and infinite eigenvalues (with multiplicity) match
/// those of P.
inline std::pair<Matrix, Matrix> companion_linearize(const MatrixPolynomial& p) {
  const int d = p.degree();
  const Index n = p.rows();
  if (p.cols() != n) throw InvalidInputError("companion_linearize: polynomial must be square");
  if (d < 1) throw InvalidInputError("companion_linearize: degree must be at least 1");
  const Index nd = n * d;
  Matrix a = Matrix::Zero(nd, nd);
  Matrix b = Matrix::Zero(nd, nd);
  b.topLeftCorner(n, n) = p.coeff(d);
  for (int i = 1; i < d; ++i) b.block(i * n, i * n, n, n) = Matrix::Identity(n, n);
  for (int i = 0; i < d; ++i) a.block(0, i * n, n, n) = p.coeff(d - 1 - i);
  for (int i = 1; i < d; ++i) a.block(i * n, (i - 1) * n, n, n) = -Matrix::Identity(n, n);
  return {std::move(a), std::move(b)};
}

/// Eigenvalues of a regular square polynomial with eigenvectors recovered
/// from the SVD nullspace of P evaluated at each eigenvalue (reversal at 0
/// for infinite ones). Returns dn triplets; empty for degree 0.
inline std::vector<EigenTriplet> solve_regular(const MatrixPolynomial& p) {
  std::vector<EigenTriplet> out;
  if (p.degree() == 0) return out;
  auto [a, b] = companion_linearize(p);
  std::vector<ProjectiveEigenvalue> lams = pencil_eigen(a, b);
  out.reserve(lams.size());
  const MatrixPolynomial rev = p.reversal();
  for (const auto& lam : lams) {
    Matrix value = lam.is_infinite() ? rev.evaluate(Complex(0.0, 0.0)) : p.evaluate(lam.value());
    auto sv = smallest_singular_vectors(value);
    out.push_back({lam, std::move(sv.right), std::move(sv.left)});
  }
  return out;
}

/// (1 + |lambda|^2 + ... + |lambda|^{2d})^{-1/2}, 0 on overflow.
inline double eigenvalue_weight(double abs_lambda, int degree) {
  double t2 = abs_lambda * abs_lambda;
  double s = 1.0;
  for (int i = 0; i < degree; ++i) s = s * t2 + 1.0;
  if (!std::isfinite(s)) return 0.0;
  return 1.0 / std::sqrt(s);
}

/// Reciprocal weak condition number gamma = |y* P'(lambda) x| *
/// (1 + |lambda|^2 + ... + |lambda|^{2d})^{-1/2}; 0 for infinite lambda.
inline double gamma(const MatrixPolynomial& p, const EigenTriplet& t) {
  if (t.lambda.is_infinite()) return 0.0;
  Complex lam = t.lambda.value();
  Vector px = p.derivative_evaluate(lam) * t.right_x;
  Complex num = t.left_y.dot(px);  // y* P'(lambda) x
  double g = std::abs(num) * eigenvalue_weight(std::abs(lam), p.degree());
  return std::isfinite(g) ? g : 0.0;
}

}  // namespace spep
