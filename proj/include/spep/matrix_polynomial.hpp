// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "spep/common.hpp"
#include "spep/linalg.hpp"

namespace spep {

/// Dense complex matrix polynomial P(lambda) = A_0 + lambda A_1 + ... +
/// lambda^d A_d. Coefficients are immutable after construction; trailing
/// zero coefficients are allowed, so `degree()` is the structural degree of
/// the stored sequence, not necessarily the effective one.
class MatrixPolynomial {
 public:
  explicit MatrixPolynomial(std::vector<Matrix> coefficients)
      : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw InvalidInputError("matrix polynomial needs at least one coefficient");
    rows_ = coeffs_.front().rows();
    cols_ = coeffs_.front().cols();
    for (const auto& c : coeffs_)
      if (c.rows() != rows_ || c.cols() != cols_)
        throw InvalidInputError("matrix polynomial coefficients differ in shape");
  }

  static MatrixPolynomial zero(Index rows, Index cols, int degree) {
    return MatrixPolynomial(std::vector<Matrix>(degree + 1, Matrix::Zero(rows, cols)));
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Matrix& coeff(int i) const { return coeffs_.at(i); }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }

  /// Horner evaluation of P(lambda).
  Matrix evaluate(Complex lambda) const {
    Matrix r = coeffs_.back();
    for (int i = degree() - 1; i >= 0; --i) r = (lambda * r + coeffs_[i]).eval();
    return r;
  }

  /// Horner evaluation of P'(lambda); the zero matrix for degree 0.
  Matrix derivative_evaluate(Complex lambda) const {
    const int d = degree();
    if (d == 0) return Matrix::Zero(rows_, cols_);
    Matrix r = static_cast<double>(d) * coeffs_[d];
    for (int i = d - 1; i >= 1; --i) r = (lambda * r + static_cast<double>(i) * coeffs_[i]).eval();
    return r;
  }

  /// rev P(lambda) = lambda^d P(1/lambda): the coefficient sequence reversed.
  MatrixPolynomial reversal() const {
    std::vector<Matrix> rev(coeffs_.rbegin(), coeffs_.rend());
    return MatrixPolynomial(std::move(rev));
  }

  /// ||A_0|| + |lambda| ||A_1|| + ... + |lambda|^d ||A_d|| in spectral norms.
  /// For an infinite eigenvalue, callers pass the reversal with 0 instead.
  double coefficient_norm_scale(double abs_lambda) const {
    double s = spectral_norm(coeffs_.back());
    for (int i = degree() - 1; i >= 0; --i) s = abs_lambda * s + spectral_norm(coeffs_[i]);
    return s;
  }

  MatrixPolynomial operator+(const MatrixPolynomial& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_ || coeffs_.size() != other.coeffs_.size())
      throw InvalidInputError("matrix polynomial sum needs matching shapes");
    std::vector<Matrix> sum(coeffs_);
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += other.coeffs_[i];
    return MatrixPolynomial(std::move(sum));
  }

  MatrixPolynomial scaled(Complex factor) const {
    std::vector<Matrix> s(coeffs_);
    for (auto& c : s) c *= factor;
    return MatrixPolynomial(std::move(s));
  }

 private:
  std::vector<Matrix> coeffs_;
  Index rows_ = 0;
  Index cols_ = 0;
};

/// L * P(lambda) * R coefficient-wise, for constant L and R.
inline MatrixPolynomial transformed(const Matrix& left, const MatrixPolynomial& p,
                                    const Matrix& right) {
  std::vector<Matrix> coeffs;
  coeffs.reserve(p.degree() + 1);
  for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(left * p.coeff(i) * right);
  return MatrixPolynomial(std::move(coeffs));
}

/// Embed P into the top-left corner of a rows x cols zero polynomial
/// (used to square up rectangular problems by adding zero rows/columns).
inline MatrixPolynomial pad_to(const MatrixPolynomial& p, Index rows, Index cols) {
  if (rows < p.rows() || cols < p.cols()) throw InvalidInputError("pad_to cannot shrink");
  std::vector<Matrix> coeffs;
  coeffs.reserve(p.degree() + 1);
  for (int i = 0; i <= p.degree(); ++i) {
    Matrix c = Matrix::Zero(rows, cols);
    c.topLeftCorner(p.rows(), p.cols()) = p.coeff(i);
    coeffs.push_back(std::move(c));
  }
  return MatrixPolynomial(std::move(coeffs));
}

}  // namespace spep
