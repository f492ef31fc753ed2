// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spep/common.hpp"
#include "spep/matrix_polynomial.hpp"

namespace spep {

namespace detail {

/// Parlett-Reinsch style balancing by powers of two; companion matrices
/// of badly scaled polynomials need this before the eigensolver.
inline void balance_matrix(Matrix& m) {
  const Index n = m.rows();
  const double gamma = 0.9;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Index i = 0; i < n; ++i) {
      double row_norm = m.row(i).cwiseAbs().sum();
      double col_norm = m.col(i).cwiseAbs().sum();
      if (row_norm == 0.0 || col_norm == 0.0) continue;
      int exponent = 0;
      std::frexp(row_norm / col_norm, &exponent);
      exponent /= 2;
      if (exponent != 0) {
        double scaled_col = std::ldexp(col_norm, exponent);
        double scaled_row = std::ldexp(row_norm, -exponent);
        if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
          changed = true;
          m.row(i) *= std::ldexp(1.0, -exponent);
          m.col(i) *= std::ldexp(1.0, exponent);
        }
      }
    }
  }
}

inline int effective_degree(const std::vector<Complex>& coeffs, double rel_tol = 1e-12) {
  double big = 0.0;
  for (const auto& c : coeffs) big = std::max(big, std::abs(c));
  if (big == 0.0) return -1;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    if (std::abs(coeffs[i]) > rel_tol * big) return i;
  return -1;
}

}  // namespace detail

/// Horner evaluation of a scalar polynomial (coefficients low to high).
inline Complex poly_eval(const std::vector<Complex>& coeffs, Complex x) {
  Complex r(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
  return r;
}

inline std::vector<Complex> poly_derivative(const std::vector<Complex>& coeffs) {
  std::vector<Complex> d;
  for (size_t i = 1; i < coeffs.size(); ++i) d.push_back(static_cast<double>(i) * coeffs[i]);
  if (d.empty()) d.push_back(Complex(0.0, 0.0));
  return d;
}

/// Roots of a scalar polynomial via the balanced companion matrix. Trailing
/// coefficients within 1e-12 of the largest are treated as zero.
inline std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
  int deg = detail::effective_degree(coeffs);
  if (deg <= 0) return {};
  Matrix comp = Matrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / coeffs[deg];
  detail::balance_matrix(comp);
  Eigen::ComplexEigenSolver<Matrix> es(comp, /*computeEigenvectors=*/false);
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  return roots;
}

/// Coefficients of det G(lambda), computed from values at D+1 Chebyshev
/// points (D = k * deg G, an upper bound on the determinant degree) and a
/// Vandermonde solve. Trailing coefficients below 1e-12 of the largest are
/// trimmed.
inline std::vector<Complex> poly_det(const MatrixPolynomial& g) {
  const Index k = g.rows();
  if (g.cols() != k || k < 1) throw InvalidInputError("poly_det: square polynomial required");
  const int bound = static_cast<int>(k) * g.degree();
  const int m = bound + 1;
  Eigen::VectorXcd values(m);
  RealVector nodes(m);
  for (int t = 0; t < m; ++t) {
    nodes(t) = std::cos(std::numbers::pi * (2.0 * t + 1.0) / (2.0 * m));
    values(t) = g.evaluate(Complex(nodes(t), 0.0)).determinant();
  }
  Matrix vander(m, m);
  for (int t = 0; t < m; ++t) {
    double pw = 1.0;
    for (int p = 0; p < m; ++p) {
      vander(t, p) = pw;
      pw *= nodes(t);
    }
  }
  Eigen::VectorXcd sol = vander.colPivHouseholderQr().solve(values);
  std::vector<Complex> coeffs(sol.data(), sol.data() + m);
  int deg = detail::effective_degree(coeffs);
  coeffs.resize(static_cast<size_t>(std::max(deg, 0)) + 1);
  return coeffs;
}

/// Minimal polynomial basis candidate: k vector polynomials (n x 1 each)
/// with their degrees. The Forney conditions are checked separately.
struct MinimalBasis {
  std::vector<MatrixPolynomial> columns;
  std::vector<int> minimal_indices;

  int total_degree() const {
    int m = 0;
    for (int d : minimal_indices) m += d;
    return m;
  }
};

inline MinimalBasis make_minimal_basis(std::vector<MatrixPolynomial> columns) {
  MinimalBasis b;
  for (const auto& c : columns) {
    if (c.cols() != 1) throw InvalidInputError("minimal basis columns must be n x 1");
    int deg = 0;
    for (int i = c.degree(); i >= 0; --i)
      if (c.coeff(i).norm() > 0.0) {
        deg = i;
        break;
      }
    b.minimal_indices.push_back(deg);
  }
  b.columns = std::move(columns);
  return b;
}

/// Forney-style plausibility: the high-order coefficient matrix has full
/// column rank, and the evaluated basis has full column rank at a random
/// probe point.
inline bool check_minimal_basis(const MinimalBasis& basis, double tol = 1e-10) {
  if (basis.columns.empty()) return false;
  const Index n = basis.columns.front().rows();
  const Index k = static_cast<Index>(basis.columns.size());
  Matrix high(n, k), probe(n, k);
  const Complex zeta(0.7548776662466927, 0.6558457436);  // fixed generic probe
  for (Index j = 0; j < k; ++j) {
    const auto& col = basis.columns[j];
    high.col(j) = col.coeff(basis.minimal_indices[j]).col(0);
    probe.col(j) = col.evaluate(zeta).col(0);
  }
  Eigen::JacobiSVD<Matrix> svd_high(high), svd_probe(probe);
  double h_ok = svd_high.singularValues()(k - 1);
  double p_ok = svd_probe.singularValues()(k - 1);
  return h_ok > tol * svd_high.singularValues()(0) && p_ok > tol * svd_probe.singularValues()(0);
}

struct ProjectedRoots {
  std::vector<Complex> roots;
  std::vector<Complex> det_coeffs;
  bool degenerate = false;  // det degree fell short of M (non-generic V)
};

/// Roots of det(V* S_R(lambda)) for an n x k projector V. A generic V
/// gives exactly M = sum of minimal indices simple roots.
inline ProjectedRoots projected_basis_roots(const MinimalBasis& basis, const Matrix& v) {
  const Index k = static_cast<Index>(basis.columns.size());
  if (v.cols() != k || v.rows() != basis.columns.front().rows())
    throw InvalidInputError("projected_basis_roots: V must be n x k");
  int max_deg = 0;
  for (int d : basis.minimal_indices) max_deg = std::max(max_deg, d);
  std::vector<Matrix> coeffs(max_deg + 1, Matrix::Zero(k, k));
  for (Index j = 0; j < k; ++j) {
    const auto& col = basis.columns[j];
    for (int i = 0; i <= std::min(col.degree(), max_deg); ++i)
      coeffs[i].col(j) = v.adjoint() * col.coeff(i).col(0);
  }
  ProjectedRoots out;
  out.det_coeffs = poly_det(MatrixPolynomial(std::move(coeffs)));
  int deg = detail::effective_degree(out.det_coeffs);
  out.degenerate = deg < basis.total_degree();
  out.roots = poly_roots(out.det_coeffs);
  return out;
}

/// True when all roots are pairwise separated and the derivative is
/// well away from zero at each of them.
inline bool simplicity_check(const std::vector<Complex>& roots, const std::vector<Complex>& poly,
                             double tol = 1e-7) {
  double scale = 1.0;
  for (const auto& r : roots) scale = std::max(scale, 1.0 + std::abs(r));
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= tol * scale) return false;
  double pnorm = 0.0;
  for (const auto& c : poly) pnorm += std::norm(c);
  pnorm = std::sqrt(pnorm);
  std::vector<Complex> dp = poly_derivative(poly);
  for (const auto& r : roots)
    if (std::abs(poly_eval(dp, r)) <= tol * pnorm) return false;
  return true;
}

}  // namespace spep
