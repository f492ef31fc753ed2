// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <tuple>

#include "spep/common.hpp"

namespace spep {

/// Largest singular value.
inline double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

/// Count of singular values strictly above the tolerance. tol = 0 selects
/// the default max(m,n) * eps * sigma_max.
inline Index numerical_rank(const Matrix& a, double tol = 0.0) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  double effective = tol;
  if (effective <= 0.0)
    effective = static_cast<double>(std::max(a.rows(), a.cols())) * kEps * sv(0);
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > effective) ++r;
  return r;
}

struct SmallestSingularTriplet {
  Vector right;   // x, unit norm
  Vector left;    // y, unit norm
  double sigma;   // smallest singular value
};

/// Right/left singular vectors of the smallest singular value; these act as
/// right/left eigenvectors when sigma is (near) zero.
///
/// The matrix is first de-graded by two-sided diagonal powers of two.
/// Evaluated matrix polynomials with badly scaled coefficients carry
/// entry-proportional rounding, and the null direction of the balanced
/// matrix is accurate at that entrywise level rather than relative to the
/// global norm.
inline SmallestSingularTriplet smallest_singular_vectors(const Matrix& a) {
  const Index m = a.rows();
  const Index n = a.cols();
  Matrix s = a;
  RealVector dl = RealVector::Ones(m), dr = RealVector::Ones(n);
  for (int sweep = 0; sweep < 4; ++sweep) {
    bool changed = false;
    for (Index i = 0; i < m; ++i) {
      double r = s.row(i).norm();
      if (r <= 0.0 || !std::isfinite(r)) continue;
      int e = 0;
      std::frexp(r, &e);
      if (e != 0) {
        double f = std::ldexp(1.0, -e);
        s.row(i) *= f;
        dl(i) *= f;
        if (e < -1 || e > 1) changed = true;
      }
    }
    for (Index j = 0; j < n; ++j) {
      double r = s.col(j).norm();
      if (r <= 0.0 || !std::isfinite(r)) continue;
      int e = 0;
      std::frexp(r, &e);
      if (e != 0) {
        double f = std::ldexp(1.0, -e);
        s.col(j) *= f;
        dr(j) *= f;
        if (e < -1 || e > 1) changed = true;
      }
    }
    if (!changed) break;
  }
  Eigen::JacobiSVD<Matrix> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Index last = std::min(m, n) - 1;
  // null(A) = Dr null(Dl A Dr); left null transforms with Dl.
  Vector x = dr.asDiagonal() * svd.matrixV().col(last);
  Vector y = dl.asDiagonal() * svd.matrixU().col(last);
  x /= x.norm();
  y /= y.norm();
  double sigma = (a * x).norm();
  return {std::move(x), std::move(y), sigma};
}

}  // namespace spep
