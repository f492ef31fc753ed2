// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "spep/common.hpp"

namespace spep {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic random stream. Gaussian variates use an explicit
/// Box-Muller transform instead of std::normal_distribution, whose output
/// is implementation-defined; identical seeds give identical streams on
/// every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  /// Independent stream for one trial of a benchmark campaign. The mixing
  /// is order-free: deriving (seed, i) never depends on other indices.
  static RngStream derive(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = detail::splitmix64(master_seed) ^
                      detail::splitmix64(index * 0x9E3779B97F4A7C15ull + 0x1F123BB5ull);
    return RngStream(detail::splitmix64(s));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  Complex complex_gaussian() { return {gaussian(), gaussian()}; }

  Matrix gaussian_matrix(Index rows, Index cols) {
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) g(i, j) = complex_gaussian();
    return g;
  }

  RealMatrix uniform_matrix(Index rows, Index cols) {
    RealMatrix g(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) g(i, j) = uniform();
    return g;
  }

  /// Random point on the complex unit circle.
  Complex unit_circle() {
    double a = 2.0 * std::numbers::pi * uniform();
    return {std::cos(a), std::sin(a)};
  }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

/// Haar-distributed unitary n x n matrix: QR of a complex Gaussian matrix
/// with the diagonal of R rotated to positive real phase.
inline Matrix random_unitary(Index n, RngStream& rng) {
  Matrix g = rng.gaussian_matrix(n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  for (Index j = 0; j < n; ++j) {
    Complex r = qr.matrixQR()(j, j);
    double a = std::abs(r);
    q.col(j) *= (a > 0.0) ? r / a : Complex(1.0, 0.0);
  }
  return q;
}

/// Random n x k matrix with orthonormal columns (thin QR of a Gaussian).
inline Matrix random_orthonormal(Index n, Index k, RngStream& rng) {
  Matrix g = rng.gaussian_matrix(n, k);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  for (Index j = 0; j < k; ++j) {
    Complex r = qr.matrixQR()(j, j);
    double a = std::abs(r);
    q.col(j) *= (a > 0.0) ? r / a : Complex(1.0, 0.0);
  }
  return q;
}

/// Real orthogonal matrix from orthonormalizing a uniform(0,1) matrix;
/// mirrors MATLAB's orth(rand(n)).
inline RealMatrix random_orth_uniform(Index n, RngStream& rng) {
  RealMatrix g = rng.uniform_matrix(n, n);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
  for (Index j = 0; j < n; ++j)
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace spep
