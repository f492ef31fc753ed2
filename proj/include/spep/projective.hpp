// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "spep/common.hpp"

namespace spep {

/// Eigenvalue in homogeneous coordinates: lambda = alpha / beta, with
/// beta ~ 0 encoding the infinite eigenvalue. (alpha, beta) != (0, 0).
struct ProjectiveEigenvalue {
  Complex alpha{0.0, 0.0};
  Complex beta{1.0, 0.0};

  static ProjectiveEigenvalue finite(Complex lambda) { return {lambda, Complex(1.0, 0.0)}; }
  static ProjectiveEigenvalue infinite() { return {Complex(1.0, 0.0), Complex(0.0, 0.0)}; }

  /// Exactly-infinite test: |beta| <= eps (|alpha| + |beta|).
  bool is_infinite() const {
    return std::abs(beta) <= kEps * (std::abs(alpha) + std::abs(beta));
  }

  /// Finite value alpha / beta. Only meaningful when !is_infinite().
  Complex value() const { return alpha / beta; }
};

/// Chordal (Riemann-sphere) distance between homogeneous pairs:
/// |a1 b2 - a2 b1| / (sqrt(|a1|^2+|b1|^2) sqrt(|a2|^2+|b2|^2)).
inline double chordal_distance(const ProjectiveEigenvalue& x, const ProjectiveEigenvalue& y) {
  double nx = std::hypot(std::abs(x.alpha), std::abs(x.beta));
  double ny = std::hypot(std::abs(y.alpha), std::abs(y.beta));
  if (nx == 0.0 || ny == 0.0) return 1.0;
  return std::abs(x.alpha * y.beta - y.alpha * x.beta) / (nx * ny);
}

inline double chordal_distance(Complex x, Complex y) {
  return chordal_distance(ProjectiveEigenvalue::finite(x), ProjectiveEigenvalue::finite(y));
}

}  // namespace spep
