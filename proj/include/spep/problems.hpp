// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spep/common.hpp"
#include "spep/linalg.hpp"
#include "spep/matrix_polynomial.hpp"
#include "spep/qz.hpp"
#include "spep/random.hpp"

namespace spep {

template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& x, const Eigen::MatrixBase<DerivedB>& y) {
  Matrix k(x.rows() * y.rows(), x.cols() * y.cols());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < x.cols(); ++j)
      k.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = Complex(x(i, j)) * y.template cast<Complex>();
  return k;
}

/// QEP of a bivariate system {p(lambda^2, mu) = 0, q(lambda, mu) = 0} given
/// determinantal representations p = det(A1 + lambda^2 B1 + mu C1),
/// q = det(A2 + lambda B2 + mu C2): coefficients
/// (A1 x C2 - C1 x A2), -(C1 x B2), (B1 x C2). Typically singular.
inline MatrixPolynomial bivariate_qep(const RealMatrix& a1, const RealMatrix& b1,
                                      const RealMatrix& c1, const RealMatrix& a2,
                                      const RealMatrix& b2, const RealMatrix& c2) {
  std::vector<Matrix> coeffs(3);
  coeffs[0] = kron(a1, c2) - kron(c1, a2);
  coeffs[1] = -kron(c1, b2);
  coeffs[2] = kron(b1, c2);
  return MatrixPolynomial(std::move(coeffs));
}

/// The 2n x 2n doubled matrices of the ZGV eigenvalue-plus-derivative
/// system and the Kronecker QEP Gamma_j = L_j x Mt - M x Lt_j. The QEP is
/// in lambda = i kappa; its normal rank is generically 2n^2 - n.
inline MatrixPolynomial zgv_qep(const RealMatrix& l0, const RealMatrix& l1, const RealMatrix& l2,
                                const RealMatrix& m) {
  const Index n = l0.rows();
  RealMatrix lt2 = RealMatrix::Zero(2 * n, 2 * n), lt1 = RealMatrix::Zero(2 * n, 2 * n),
             lt0 = RealMatrix::Zero(2 * n, 2 * n), mt = RealMatrix::Zero(2 * n, 2 * n);
  lt2.topLeftCorner(n, n) = l2;
  lt2.bottomRightCorner(n, n) = l2;
  lt1.topLeftCorner(n, n) = l1;
  lt1.bottomRightCorner(n, n) = l1;
  lt1.bottomLeftCorner(n, n) = 2.0 * l2;
  lt0.topLeftCorner(n, n) = l0;
  lt0.bottomRightCorner(n, n) = l0;
  lt0.bottomLeftCorner(n, n) = l1;
  mt.topLeftCorner(n, n) = m;
  mt.bottomRightCorner(n, n) = m;
  std::vector<Matrix> coeffs(3);
  coeffs[0] = kron(l0, mt) - kron(m, lt0);
  coeffs[1] = kron(l1, mt) - kron(m, lt1);
  coeffs[2] = kron(l2, mt) - kron(m, lt2);
  return MatrixPolynomial(std::move(coeffs));
}

struct ZgvFrequency {
  double omega;
  double zgv_residual;  // |u* (2 i kappa L2 + L1) u|
};

/// Real frequencies omega at wavenumber kappa from the pencil in omega^2,
/// with the zero-group-velocity residual of each mode.
inline std::vector<ZgvFrequency> zgv_frequencies(const RealMatrix& l0, const RealMatrix& l1,
                                                 const RealMatrix& l2, const RealMatrix& m,
                                                 double kappa) {
  const Index n = l0.rows();
  Matrix mc = m.cast<Complex>();
  if (numerical_rank(mc) < n) throw Error("zgv_frequencies: mass matrix is numerically singular");
  const Complex ik(0.0, kappa);
  Matrix ag = ik * ik * l2.cast<Complex>() + ik * l1.cast<Complex>() + l0.cast<Complex>();
  std::vector<ZgvFrequency> out;
  Matrix deriv = 2.0 * ik * l2.cast<Complex>() + l1.cast<Complex>();
  for (const auto& ev : pencil_eigen(ag, mc)) {
    if (ev.is_infinite()) continue;
    Complex w2 = ev.value();
    if (std::abs(w2.imag()) > 1e-8 * (1.0 + std::abs(w2.real()))) continue;
    if (w2.real() < -1e-10) continue;
    double omega = std::sqrt(std::max(0.0, w2.real()));
    Vector u = smallest_singular_vectors(ag + w2 * mc).right;
    double residual = std::abs(Complex(u.dot(deriv * u)));
    out.push_back({omega, residual});
  }
  return out;
}

/// Minimal bordered determinantal representation of a bivariate polynomial
/// of total degree d <= 3: matrices (A, B, C) of size 2d-1 with
/// det(A + x B + y C) = -p(x, y). coeffs[{i, j}] is the coefficient of
/// x^i y^j.
inline std::tuple<RealMatrix, RealMatrix, RealMatrix> bivariate_detrep(
    const std::map<std::pair<int, int>, double>& coeffs, int d) {
  if (d < 1 || d > 3) throw InvalidInputError("bivariate_detrep supports total degree 1..3");
  const Index size = 2 * d - 1;
  RealMatrix a = RealMatrix::Zero(size, size), b = RealMatrix::Zero(size, size),
             c = RealMatrix::Zero(size, size);
  auto cf = [&](int i, int j) {
    auto it = coeffs.find({i, j});
    return it == coeffs.end() ? 0.0 : it->second;
  };
  a(0, 0) = -cf(0, 0);
  b(0, 0) = -cf(1, 0);
  c(0, 0) = -cf(0, 1);
  for (int k = 1; k <= d - 1; ++k) {
    b(0, k) = cf(k + 1, 0);       // x-chain border: c_{k+1,0} x^{k+1}
    c(0, k) = cf(k, 1);           // and c_{k,1} x^k y
    c(0, d - 1 + k) = cf(0, k + 1);               // y-chain border: c_{0,k+1} y^{k+1}
    if (k >= 2) b(0, d - 1 + k) = cf(1, k);       // and c_{1,k} x y^k
  }
  if (d >= 2) {
    b(1, 0) = 1.0;  // x-chain input
    c(d, 0) = 1.0;  // y-chain input
  }
  for (Index i = 1; i < size; ++i) a(i, i) = 1.0;
  for (Index i = 1; i + 1 <= d - 1; ++i) b(i + 1, i) = -1.0;
  for (Index i = d; i + 1 <= 2 * d - 2; ++i) c(i + 1, i) = -1.0;
  return {a, b, c};
}

/// Random bivariate system of total degree d (p in lambda^2 and mu, q in
/// lambda and mu) through the bordered representations; used for the
/// empirically observed nrank = d(3d-2) of the resulting QEP.
inline MatrixPolynomial random_bivariate_qep(int d, RngStream& rng) {
  std::map<std::pair<int, int>, double> cp, cq;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      cp[{i, j}] = rng.gaussian();
      cq[{i, j}] = rng.gaussian();
    }
  auto [a1, b1, c1] = bivariate_detrep(cp, d);
  auto [a2, b2, c2] = bivariate_detrep(cq, d);
  return bivariate_qep(a1, b1, c1, a2, b2, c2);
}

/// Ground-truth record for a fixture: the expected finite eigenvalues (with
/// multiplicity), the infinite count when known, and the normal rank.
struct GroundTruth {
  std::vector<Complex> finite_eigenvalues;
  std::optional<int> n_infinite;
  int nrank = 0;
  std::string notes;
};

struct Fixture {
  MatrixPolynomial poly;
  GroundTruth truth;
};

using ParamMap = std::map<std::string, double>;

/// Matrices of the worked ZGV example: L0 symmetric, L1 skew-symmetric,
/// L2 and M symmetric positive definite.
inline std::tuple<RealMatrix, RealMatrix, RealMatrix, RealMatrix> zgv_example_matrices() {
  RealMatrix l2(2, 2), l1(2, 2), l0(2, 2), m(2, 2);
  l2 << 1, 1, 1, 2;
  l1 << 0, 3, -3, 0;
  l0 << -2, 1, 1, -2;
  m << 3, 1, 1, 4;
  return {l0, l1, l2, m};
}

/// Determinantal-representation inputs of the worked bivariate example.
inline std::tuple<RealMatrix, RealMatrix, RealMatrix, RealMatrix, RealMatrix, RealMatrix>
bivariate_example_matrices() {
  RealMatrix a1(3, 3), b1(3, 3), c1(3, 3), a2(3, 3), b2(3, 3), c2(3, 3);
  a1 << 0, 2, 1, 3, 1, 0, 1, 0, 0;
  b1 << 0, 4, 0, 5, 0, -1, 0, 0, 0;
  c1 << 0, 0, 0, 6, 0, 0, 0, -1, 0;
  a2 << 0, 5, 1, 4, 6, 0, 1, 0, 0;
  b2 << 0, 3, 0, 2, 0, -1, 0, 0, 0;
  c2 << 0, 0, 0, 1, 0, 0, 0, -1, 0;
  return {a1, b1, c1, a2, b2, c2};
}

namespace detail {

// 9x9 quadratic of the worked bivariate example, hardcoded coefficient by
// coefficient. Entry (2,4) carries 4 lambda^2, consistent with the
// determinantal representations and the published solution set.
inline MatrixPolynomial bivariate_example_poly() {
  Matrix a0 = Matrix::Zero(9, 9), a1 = Matrix::Zero(9, 9), a2 = Matrix::Zero(9, 9);
  a0(1, 3) = 2;  a0(1, 6) = 1;
  a0(2, 4) = -2; a0(2, 7) = -1;
  a0(3, 1) = -30; a0(3, 2) = -6;
  a0(4, 0) = -21; a0(4, 1) = -36; a0(4, 3) = 1;
  a0(5, 0) = -6;  a0(5, 1) = -3;  a0(5, 4) = -1;
  a0(6, 4) = 5;   a0(6, 5) = 1;
  a0(7, 0) = 1;   a0(7, 3) = 4;   a0(7, 4) = 6;
  a0(8, 1) = -1;  a0(8, 3) = 1;
  a1(3, 1) = -18;
  a1(4, 0) = -12; a1(4, 2) = 6;
  a1(6, 4) = 3;
  a1(7, 3) = 2;   a1(7, 5) = -1;
  a2(1, 3) = 4;
  a2(2, 4) = -4;
  a2(4, 0) = 5;   a2(4, 6) = -1;
  a2(5, 1) = -5;  a2(5, 7) = 1;
  return MatrixPolynomial({a0, a1, a2});
}

// Refined roots of the bivariate system (Newton on {p, q} with exact
// partials, residuals <= 1e-13); they round to the published six decimals.
inline std::vector<Complex> bivariate_example_roots() {
  return {
      {-0.658066941780076, 0.750640560046445},  {-0.658066941780076, -0.750640560046445},
      {-1.332647834110810, 0.355433573869781},  {-1.332647834110810, -0.355433573869781},
      {0.475211415377766, 1.902116467950794},   {0.475211415377766, -1.902116467950794},
      {2.765503360513121, 0.580943837619807},   {2.765503360513121, -0.580943837619807}};
}

// Shared scaffold of the singular QEP family: tridiagonal-like K, C, M with
// t active rows, sandwiched between random orthogonal factors per trial.
struct KsgMatrices {
  RealMatrix k, c, m;
};

inline KsgMatrices ksg_inner(Index n, const std::vector<double>& lam) {
  KsgMatrices w{RealMatrix::Zero(n, n), RealMatrix::Zero(n, n), RealMatrix::Zero(n, n)};
  for (size_t j = 0; j < lam.size(); ++j) {
    Index i = static_cast<Index>(j);
    w.m(i, i + 1) = 1.0;
    w.c(i, i) = 1.0;
    w.c(i, i + 1) = -lam[j];
    w.k(i, i) = -lam[j];
  }
  return w;
}

inline MatrixPolynomial ksg_sandwich(const RealMatrix& c0, const RealMatrix& c1,
                                     const RealMatrix& c2, RngStream& rng) {
  const Index n = c0.rows();
  RealMatrix w = random_orth_uniform(n, rng);
  RealMatrix z = random_orth_uniform(n, rng);
  std::vector<Matrix> coeffs(3);
  coeffs[0] = (z.transpose() * c0 * w).cast<Complex>();
  coeffs[1] = (z.transpose() * c1 * w).cast<Complex>();
  coeffs[2] = (z.transpose() * c2 * w).cast<Complex>();
  return MatrixPolynomial(std::move(coeffs));
}

inline MatrixPolynomial kk_poly() {
  auto z = [] { return Matrix::Zero(3, 3); };
  Matrix a0 = z(), a1 = z(), a2 = z(), a3 = z(), a4 = z(), a5 = z();
  a0 << 1, -1, 0, -1, 1, 0, -1, 1, 0;
  a1 << 4, -3, -1, -2, 1, 1, -2, 1, 1;
  a2 << 5, -4, -2, 2, -1, 0, 1, 0, 0;
  a3 << 2, -3, -1, 5, -3, -2, 2, -1, -1;
  a4 << 0, -1, 0, 2, -3, -1, 0, -1, 0;
  a5 << 0, 0, 0, 0, -1, 0, 0, 0, 0;
  return MatrixPolynomial({a0, a1, a2, a3, a4, a5});
}

inline MatrixPolynomial zh_poly() {
  std::vector<Matrix> a(9, Matrix::Zero(3, 3));
  a[0](1, 1) = -1; a[0](2, 2) = 1;
  a[1](0, 1) = 1;  a[1](1, 0) = -1;
  a[2](0, 0) = 1;
  a[3](1, 2) = -1; a[3](2, 1) = 1;
  a[4](0, 2) = 1;  a[4](2, 0) = 1;
  a[6](1, 1) = -1;
  a[7](0, 1) = 1;  a[7](1, 0) = -1;
  a[8](0, 0) = 1;
  return MatrixPolynomial(std::move(a));
}

inline double param_or(const ParamMap& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace detail

inline std::vector<std::string> fixture_names() {
  return {"bivariate-ex", "zgv-ex", "ksg-1", "ksg-2", "ksg-3", "ksg-4", "ksg-5", "kk", "zh"};
}

/// Construct a named fixture. The ksg fixtures draw fresh random orthogonal
/// factors from the stream on every call; ksg-4 and ksg-5 take the scaling
/// parameter "a".
inline Fixture fixture(const std::string& name, const ParamMap& params, RngStream& rng) {
  if (name == "bivariate-ex") {
    GroundTruth truth{detail::bivariate_example_roots(), 8, 8,
                      "bivariate polynomial system QEP, Kronecker eliminant"};
    return {detail::bivariate_example_poly(), truth};
  }
  if (name == "zgv-ex") {
    auto [l0, l1, l2, m] = zgv_example_matrices();
    GroundTruth truth{{Complex(0, 0), Complex(0, 0), Complex(0, 1.016018), Complex(0, -1.016018),
                       Complex(-4.004034, 0), Complex(4.004034, 0)},
                      2,
                      6,
                      "zero-group-velocity QEP of the worked 2x2 waveguide example"};
    return {zgv_qep(l0, l1, l2, m), truth};
  }
  if (name == "ksg-1") {
    std::vector<double> lam;
    for (int j = 1; j <= 5; ++j) lam.push_back(1.0 + 1e-5 * j);
    auto w = detail::ksg_inner(8, lam);
    GroundTruth truth{{}, std::nullopt, 5, "five clustered eigenvalues near 1"};
    for (double l : lam) truth.finite_eigenvalues.push_back(Complex(l, 0.0));
    return {detail::ksg_sandwich(w.k, w.c, w.m, rng), truth};
  }
  if (name == "ksg-2") {
    std::vector<double> lam{0.0};
    for (int j = 2; j <= 8; ++j) lam.push_back(1.0 / j);
    auto w = detail::ksg_inner(11, lam);
    GroundTruth truth{{}, std::nullopt, 8, "eigenvalues 0 and 1/j"};
    for (double l : lam) truth.finite_eigenvalues.push_back(Complex(l, 0.0));
    return {detail::ksg_sandwich(w.k, w.c, w.m, rng), truth};
  }
  if (name == "ksg-3" || name == "ksg-4") {
    std::vector<double> lam{0.0};
    for (int j = 2; j <= 8; ++j) lam.push_back(1.0 / j);
    auto w = detail::ksg_inner(11, lam);
    RealMatrix k = w.m, c = w.c, m = w.k;  // reversal of ksg-2
    if (name == "ksg-4") {
      double a = detail::param_or(params, "a", 2.0);
      RealVector dv(11);
      dv << 1, a * a, a, 1, a * a * a, 1, std::pow(a, 4), std::pow(a, 5), std::pow(a, 6), 1, 1;
      RealMatrix d = dv.asDiagonal();
      k = d * k * d;
      c = d * c * d;
      m = d * m * d;
    }
    GroundTruth truth{{}, std::nullopt, 8, "eigenvalues j+1"};
    for (int j = 1; j <= 7; ++j) truth.finite_eigenvalues.push_back(Complex(j + 1.0, 0.0));
    return {detail::ksg_sandwich(k, c, m, rng), truth};
  }
  if (name == "ksg-5") {
    double a = detail::param_or(params, "a", 1.0);
    RealMatrix k = RealMatrix::Zero(8, 8), c = RealMatrix::Zero(8, 8), m = RealMatrix::Zero(8, 8);
    for (Index j = 0; j < 5; ++j) {
      m(j, j + 1) = 1.0;
      c(j, j) = 1.0;
      c(j, j + 1) = -1.0;
      k(j, j) = -1.0;
    }
    m(0, 2) = 1.0;
    m(1, 3) = 1.0;
    RealVector dv(8);
    dv << 1, std::pow(a, 3), std::pow(a, 6), a * a, std::pow(a, 5), a, std::pow(a, 4),
        std::pow(a, 7);
    RealMatrix d = dv.asDiagonal();
    RealMatrix dinv = dv.cwiseInverse().asDiagonal();
    k = dinv * k * d;
    c = dinv * c * d;
    m = dinv * m * d;
    GroundTruth truth{{Complex(1, 0), Complex(1, 0), Complex(1, 0), Complex(1, 0)},
                      std::nullopt,
                      5,
                      "quadruple eigenvalue 1 of geometric multiplicity 3"};
    return {detail::ksg_sandwich(k, c, m, rng), truth};
  }
  if (name == "kk") {
    GroundTruth truth{{Complex(-1.0, 0.0)}, std::nullopt, 1, "degree-5 polynomial of normal rank 1"};
    return {detail::kk_poly(), truth};
  }
  if (name == "zh") {
    GroundTruth truth{{}, 14, 2, "degree 8, 14 infinite eigenvalues, no finite ones"};
    return {detail::zh_poly(), truth};
  }
  throw InvalidInputError("unknown fixture name: " + name);
}

/// Fully known Kronecker-type structure of a synthetic singular polynomial.
struct SyntheticStructure {
  std::vector<Complex> regular_eigenvalues;
  std::vector<int> right_minimal_indices;  // epsilon_i
  std::vector<int> left_minimal_indices;   // eta_i
  int k = 0;
  int M = 0;
  int N = 0;
  Index n = 0;
  int d = 0;
  int infinite_multiplicity = 0;  // (M + N)(d - 1) from embedding pencil blocks at degree d
  // Right minimal basis of the generated polynomial: the alternating-sign
  // Kronecker columns of D mapped through S^{-1} (P = T D S).
  std::vector<MatrixPolynomial> right_minimal_basis;
};

/// Strictly equivalent image P = T D(lambda) S of a block-diagonal
/// D(lambda) = diag(R, L_eps..., L_eta^T...) with a diagonal regular block
/// R carrying the prescribed eigenvalues (monic entries of exact degree d;
/// len(reg_eigs) must divide into groups of d) and Kronecker singular
/// blocks for the minimal indices. T and S are random with condition
/// clipped to at most 100.
inline std::pair<MatrixPolynomial, SyntheticStructure> synthetic_singular(
    const std::vector<Complex>& reg_eigs, int d_reg, const std::vector<int>& eps,
    const std::vector<int>& eta, RngStream& rng, std::optional<int> pad_to_degree = {}) {
  if (eps.size() != eta.size() || eps.empty())
    throw InvalidInputError("synthetic_singular: blocks cannot tile a square matrix "
                            "(need equally many right and left index blocks)");
  const int d = std::max(d_reg, 1);
  if (reg_eigs.size() % d != 0)
    throw InvalidInputError("synthetic_singular: len(reg_eigs) must be a multiple of the degree");
  const Index r0 = static_cast<Index>(reg_eigs.size()) / d;
  const int k = static_cast<int>(eps.size());
  int M = 0, N = 0;
  for (int e : eps) M += e;
  for (int e : eta) N += e;
  const Index n = r0 + M + N + k;

  std::vector<Matrix> dc(static_cast<size_t>(d) + 1, Matrix::Zero(n, n));

  // Regular diagonal block: entry j is the monic product of its batch.
  for (Index j = 0; j < r0; ++j) {
    std::vector<Complex> mono{1.0};
    for (int t = 0; t < d; ++t) {
      Complex root = reg_eigs[static_cast<size_t>(j) * d + t];
      std::vector<Complex> next(mono.size() + 1, Complex(0.0, 0.0));
      for (size_t i = 0; i < mono.size(); ++i) {
        next[i + 1] += mono[i];
        next[i] -= root * mono[i];
      }
      mono = std::move(next);
    }
    for (int i = 0; i <= d; ++i) dc[i](j, j) = mono[i];
  }

  // L_eps blocks (eps x (eps+1)): rows lambda e_i + e_{i+1}.
  Index row = r0, col = r0;
  for (int e : eps) {
    for (int i = 0; i < e; ++i) {
      dc[1](row + i, col + i) = 1.0;
      dc[0](row + i, col + i + 1) = 1.0;
    }
    row += e;
    col += e + 1;
  }
  // L_eta^T blocks ((eta+1) x eta).
  for (int e : eta) {
    for (int i = 0; i < e; ++i) {
      dc[1](row + i, col + i) = 1.0;
      dc[0](row + i + 1, col + i) = 1.0;
    }
    row += e + 1;
    col += e;
  }
  if (row != n || col != n) throw Error("synthetic_singular: internal block layout mismatch");

  auto clipped_random = [&](Index size) {
    Matrix g = rng.gaussian_matrix(size, size);
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    RealVector sv = svd.singularValues();
    double top = sv(0);
    for (Index i = 0; i < size; ++i) sv(i) = std::max(sv(i), top / 100.0);
    return Matrix(svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint());
  };
  Matrix t = clipped_random(n);
  Matrix s = clipped_random(n);
  for (auto& c : dc) c = t * c * s;

  if (pad_to_degree && *pad_to_degree > d)
    dc.resize(static_cast<size_t>(*pad_to_degree) + 1, Matrix::Zero(n, n));

  Eigen::PartialPivLU<Matrix> slu(s);
  std::vector<MatrixPolynomial> basis;
  Index coff = r0;
  for (int e : eps) {
    std::vector<Matrix> cc;
    for (int i = 0; i <= e; ++i) {
      Vector v = Vector::Zero(n);
      v(coff + i) = (i % 2 == 0) ? 1.0 : -1.0;
      cc.push_back(slu.solve(v));
    }
    basis.emplace_back(std::move(cc));
    coff += e + 1;
  }

  SyntheticStructure st;
  st.regular_eigenvalues = reg_eigs;
  st.right_minimal_indices = eps;
  st.left_minimal_indices = eta;
  st.k = k;
  st.M = M;
  st.N = N;
  st.n = n;
  st.d = d;
  st.infinite_multiplicity = (M + N) * (d - 1);
  st.right_minimal_basis = std::move(basis);
  return {MatrixPolynomial(std::move(dc)), st};
}

}  // namespace spep
