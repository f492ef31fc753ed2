// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <vector>

#include "spep/common.hpp"
#include "spep/projective.hpp"

namespace spep {
namespace detail {

// Plane rotation [c s; -conj(s) c] with c real >= 0 mapping (f, g) to (r, 0).
struct PlaneRotation {
  double c;
  Complex s;
  Complex r;
};

inline PlaneRotation make_rotation(Complex f, Complex g) {
  if (g == Complex(0.0, 0.0)) return {1.0, Complex(0.0, 0.0), f};
  if (f == Complex(0.0, 0.0)) {
    double ag = std::abs(g);
    return {0.0, std::conj(g) / ag, Complex(ag, 0.0)};
  }
  double af = std::abs(f);
  double ag = std::abs(g);
  double d = std::hypot(af, ag);
  Complex fs = f / af;
  return {af / d, fs * std::conj(g) / d, fs * d};
}

// (row_p, row_q) <- (c row_p + s row_q, -conj(s) row_p + c row_q) on columns [c0, c1].
inline void rot_rows(Matrix& m, Index p, Index q, double c, Complex s, Index c0, Index c1) {
  Complex sc = std::conj(s);
  for (Index j = c0; j <= c1; ++j) {
    Complex t = c * m(p, j) + s * m(q, j);
    m(q, j) = -sc * m(p, j) + c * m(q, j);
    m(p, j) = t;
  }
}

// (col_p, col_q) <- (c col_p + s col_q, -conj(s) col_p + c col_q) on rows [r0, r1].
inline void rot_cols(Matrix& m, Index p, Index q, double c, Complex s, Index r0, Index r1) {
  Complex sc = std::conj(s);
  for (Index i = r0; i <= r1; ++i) {
    Complex t = c * m(i, p) + s * m(i, q);
    m(i, q) = -sc * m(i, p) + c * m(i, q);
    m(i, p) = t;
  }
}

// Unitary reduction of (H, T) to Hessenberg / upper-triangular form.
inline void hessenberg_triangular(Matrix& h, Matrix& t) {
  const Index n = h.rows();
  Eigen::HouseholderQR<Matrix> qr(t);
  h = (qr.householderQ().adjoint() * h).eval();
  t = Matrix(qr.matrixQR().triangularView<Eigen::Upper>());
  for (Index j = 0; j + 2 < n; ++j) {
    for (Index i = n - 1; i >= j + 2; --i) {
      // zero h(i, j) from the left, then restore t's triangularity from the right
      auto g = make_rotation(h(i - 1, j), h(i, j));
      h(i - 1, j) = g.r;
      h(i, j) = Complex(0.0, 0.0);
      rot_rows(h, i - 1, i, g.c, g.s, j + 1, n - 1);
      rot_rows(t, i - 1, i, g.c, g.s, i - 1, n - 1);
      auto g2 = make_rotation(t(i, i), t(i, i - 1));
      t(i, i) = g2.r;
      t(i, i - 1) = Complex(0.0, 0.0);
      rot_cols(t, i, i - 1, g2.c, g2.s, 0, i - 1);
      rot_cols(h, i, i - 1, g2.c, g2.s, 0, n - 1);
    }
  }
}

inline ProjectiveEigenvalue normalized_pair(Complex alpha, Complex beta) {
  double m = std::max(std::abs(alpha), std::abs(beta));
  if (m > 0.0 && std::isfinite(m)) {
    alpha /= m;
    beta /= m;
  }
  return {alpha, beta};
}

// Diagonal equivalence Dl (A + lambda B) Dr with powers of two, driving all
// combined row and column norms towards unity. Eigenvalues are exactly
// preserved; badly scaled pencils (coefficient norms spanning many orders)
// lose most of their spread, which the QZ accuracy depends on.
inline void balance_pencil(Matrix& a, Matrix& b, int max_sweeps = 6) {
  const Index n = a.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      double r = std::hypot(a.row(i).norm(), b.row(i).norm());
      if (r <= 0.0 || !std::isfinite(r)) continue;
      int e = 0;
      std::frexp(r, &e);
      if (e != 0) {
        double f = std::ldexp(1.0, -e);
        a.row(i) *= f;
        b.row(i) *= f;
        if (e < -1 || e > 1) changed = true;
      }
    }
    for (Index j = 0; j < n; ++j) {
      double r = std::hypot(a.col(j).norm(), b.col(j).norm());
      if (r <= 0.0 || !std::isfinite(r)) continue;
      int e = 0;
      std::frexp(r, &e);
      if (e != 0) {
        double f = std::ldexp(1.0, -e);
        a.col(j) *= f;
        b.col(j) *= f;
        if (e < -1 || e > 1) changed = true;
      }
    }
    if (!changed) break;
  }
}

}  // namespace detail

/// All N eigenvalues of the regular pencil L(lambda) = A + lambda B in
/// homogeneous (alpha, beta) form, beta = 0 encoding infinite eigenvalues.
///
/// Single-shift implicit QZ on the Hessenberg-triangular form, following the
/// classical Moler-Stewart scheme with Ward's chasing of zero diagonal
/// entries of T (infinite-eigenvalue deflation). Eigenvalues only; the
/// transforms are not accumulated.
///
/// Throws SingularPencilError when a deflated pair has alpha and beta both
/// negligible (common null structure: the pencil was not regular), and
/// Error on non-convergence or non-finite input.
inline std::vector<ProjectiveEigenvalue> pencil_eigen(const Matrix& a, const Matrix& b) {
  const Index n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n)
    throw InvalidInputError("pencil_eigen: matrices must be square and of equal size");
  if (!a.allFinite() || !b.allFinite())
    throw Error("pencil_eigen: pencil contains non-finite entries");

  std::vector<ProjectiveEigenvalue> eigs;
  eigs.reserve(n);
  if (n == 0) return eigs;

  Matrix h = a;
  Matrix t = b;
  detail::balance_pencil(h, t);

  const double anorm = std::max(h.norm(), kSafMin);
  const double bnorm = std::max(t.norm(), kSafMin);
  const double atol = std::max(kSafMin, kEps * anorm);
  const double btol = std::max(kSafMin, kEps * bnorm);
  const double sing_a = 4.0 * atol;
  const double sing_b = 4.0 * btol;

  detail::hessenberg_triangular(h, t);

  int n_degenerate = 0;
  auto record = [&](Index i) {
    Complex alpha = -h(i, i);
    Complex beta = t(i, i);
    if (std::abs(alpha) <= sing_a && std::abs(beta) <= sing_b) ++n_degenerate;
    eigs.push_back(detail::normalized_pair(alpha, beta));
  };

  Index ilast = n - 1;
  int iiter = 0;
  long total = 0;
  const long maxit = 60 * static_cast<long>(n) + 120;
  Complex eshift(0.0, 0.0);

  // Stagnation monitor: clustered eigenvalues can pin the bottom
  // subdiagonal well above atol while the diagonal ratios are already as
  // converged as the cluster permits. When the subdiagonal stops
  // contracting, the deflation threshold for it is progressively relaxed;
  // the committed backward error stays bounded by relax * atol.
  Index stall_ilast = -1;
  double stall_sub = 0.0;
  int stall = 0;

  while (ilast >= 0) {
    if (ilast == 0) {
      record(0);
      break;
    }

    double sub = std::abs(h(ilast, ilast - 1));
    if (ilast == stall_ilast)
      stall = (sub > 0.5 * stall_sub) ? stall + 1 : 0;
    else
      stall = 0;
    stall_ilast = ilast;
    stall_sub = sub;
    const double relax = (stall >= 4) ? std::ldexp(1.0, std::min(stall - 3, 32)) : 1.0;

    // Deflate a 1x1 block at the bottom.
    if (std::abs(h(ilast, ilast - 1)) <= relax * atol) {
      h(ilast, ilast - 1) = Complex(0.0, 0.0);
      record(ilast);
      --ilast;
      iiter = 0;
      continue;
    }

    // T(ilast, ilast) negligible: rotate H's last subdiagonal away and
    // deflate an infinite eigenvalue.
    if (std::abs(t(ilast, ilast)) <= btol) {
      t(ilast, ilast) = Complex(0.0, 0.0);
      auto g = detail::make_rotation(h(ilast, ilast), h(ilast, ilast - 1));
      h(ilast, ilast) = g.r;
      h(ilast, ilast - 1) = Complex(0.0, 0.0);
      detail::rot_cols(h, ilast, ilast - 1, g.c, g.s, 0, ilast - 1);
      detail::rot_cols(t, ilast, ilast - 1, g.c, g.s, 0, ilast - 1);
      record(ilast);
      --ilast;
      iiter = 0;
      continue;
    }

    // Scan upwards for a split point or an interior zero on T's diagonal.
    Index ifirst = 0;
    bool sweep = false;
    bool deflated = false;
    for (Index j = ilast - 1; j >= 0; --j) {
      bool ilazro = false;
      if (j == 0) {
        ilazro = true;
      } else if (std::abs(h(j, j - 1)) <= atol) {
        h(j, j - 1) = Complex(0.0, 0.0);
        ilazro = true;
      }

      if (std::abs(t(j, j)) <= btol) {
        t(j, j) = Complex(0.0, 0.0);
        bool ilazr2 = false;
        if (!ilazro &&
            std::abs(h(j, j - 1)) * std::abs(h(j + 1, j)) <= std::abs(h(j, j)) * atol)
          ilazr2 = true;

        if (ilazro || ilazr2) {
          // Split 1x1 blocks off at the top of the active block; the zero
          // on T's diagonal may repeat, so keep going until it clears.
          bool settled = false;
          for (Index jch = j; jch < ilast; ++jch) {
            auto g = detail::make_rotation(h(jch, jch), h(jch + 1, jch));
            h(jch, jch) = g.r;
            h(jch + 1, jch) = Complex(0.0, 0.0);
            detail::rot_rows(h, jch, jch + 1, g.c, g.s, jch + 1, ilast);
            detail::rot_rows(t, jch, jch + 1, g.c, g.s, jch + 1, ilast);
            if (ilazr2) {
              h(jch, jch - 1) *= g.c;
              ilazr2 = false;
            }
            if (std::abs(t(jch + 1, jch + 1)) >= btol) {
              if (jch + 1 >= ilast) {
                record(ilast);
                --ilast;
                iiter = 0;
                deflated = true;
              } else {
                ifirst = jch + 1;
                sweep = true;
              }
              settled = true;
              break;
            }
            t(jch + 1, jch + 1) = Complex(0.0, 0.0);
          }
          if (!settled) {
            // Chase exhausted: H(ilast, ilast-1) = 0 and T(ilast, ilast) = 0.
            record(ilast);
            --ilast;
            iiter = 0;
            deflated = true;
          }
        } else {
          // Ward chase: push the zero on T's diagonal down to ilast, where
          // the next outer pass deflates an infinite eigenvalue.
          for (Index jch = j; jch < ilast; ++jch) {
            auto g = detail::make_rotation(t(jch, jch + 1), t(jch + 1, jch + 1));
            t(jch, jch + 1) = g.r;
            t(jch + 1, jch + 1) = Complex(0.0, 0.0);
            if (jch + 2 <= ilast) detail::rot_rows(t, jch, jch + 1, g.c, g.s, jch + 2, ilast);
            detail::rot_rows(h, jch, jch + 1, g.c, g.s, jch - 1, ilast);
            auto g2 = detail::make_rotation(h(jch + 1, jch), h(jch + 1, jch - 1));
            h(jch + 1, jch) = g2.r;
            h(jch + 1, jch - 1) = Complex(0.0, 0.0);
            detail::rot_cols(h, jch, jch - 1, g2.c, g2.s, 0, jch);
            detail::rot_cols(t, jch, jch - 1, g2.c, g2.s, 0, jch - 1);
          }
          deflated = true;  // no deflation yet, but the outer loop must re-test
        }
        break;
      } else if (ilazro) {
        ifirst = j;
        sweep = true;
        break;
      }
    }

    if (deflated && !sweep) continue;
    if (!sweep) continue;  // unreachable; the scan always settles

    // One implicit-shift QZ sweep on rows/columns [ifirst, ilast].
    ++total;
    ++iiter;
    if (total > maxit) throw Error("pencil_eigen: QZ iteration failed to converge");

    Complex shift;
    if (iiter % 10 != 0) {
      // Wilkinson shift: root of the trailing 2x2 pencil block closer to
      // the bottom diagonal ratio.
      Complex h11 = h(ilast - 1, ilast - 1), h12 = h(ilast - 1, ilast);
      Complex h21 = h(ilast, ilast - 1), h22 = h(ilast, ilast);
      Complex t11 = t(ilast - 1, ilast - 1), t12 = t(ilast - 1, ilast);
      Complex t22 = t(ilast, ilast);
      Complex qa = t11 * t22;
      Complex qb = -(h11 * t22 + t11 * h22 - h21 * t12);
      Complex qc = h11 * h22 - h12 * h21;
      Complex target = h22 / t22;
      Complex disc = std::sqrt(qb * qb - 4.0 * qa * qc);
      if (std::real(std::conj(qb) * disc) < 0.0) disc = -disc;
      Complex big = -0.5 * (qb + disc);
      Complex r1 = (std::abs(qa) > 0.0) ? big / qa : Complex(0.0, 0.0);
      Complex r2 = (std::abs(big) > 0.0) ? qc / big : Complex(0.0, 0.0);
      bool have1 = std::abs(qa) > 0.0 && std::isfinite(std::abs(r1));
      bool have2 = std::abs(big) > 0.0 && std::isfinite(std::abs(r2));
      if (have1 && have2)
        shift = (std::abs(r1 - target) < std::abs(r2 - target)) ? r1 : r2;
      else if (have2)
        shift = r2;
      else if (have1)
        shift = r1;
      else
        shift = target;
      if (!std::isfinite(std::abs(shift))) shift = Complex(0.0, 0.0);
    } else {
      Complex denom = t(ilast - 1, ilast - 1);
      if (std::abs(denom) > kSafMin)
        eshift += h(ilast, ilast - 1) / denom;
      else
        eshift += Complex(1.0, 0.5) * (std::abs(h(ilast, ilast - 1)) / btol);
      shift = eshift;
      if (!std::isfinite(std::abs(shift))) {
        eshift = Complex(0.0, 0.0);
        shift = eshift;
      }
    }

    double c;
    Complex s;
    {
      auto g = detail::make_rotation(h(ifirst, ifirst) - shift * t(ifirst, ifirst),
                                     h(ifirst + 1, ifirst));
      c = g.c;
      s = g.s;
    }
    for (Index j = ifirst; j <= ilast - 1; ++j) {
      if (j > ifirst) {
        auto g = detail::make_rotation(h(j, j - 1), h(j + 1, j - 1));
        h(j, j - 1) = g.r;
        h(j + 1, j - 1) = Complex(0.0, 0.0);
        c = g.c;
        s = g.s;
      }
      detail::rot_rows(h, j, j + 1, c, s, j, ilast);
      detail::rot_rows(t, j, j + 1, c, s, j, ilast);
      auto g2 = detail::make_rotation(t(j + 1, j + 1), t(j + 1, j));
      t(j + 1, j + 1) = g2.r;
      t(j + 1, j) = Complex(0.0, 0.0);
      detail::rot_cols(t, j + 1, j, g2.c, g2.s, ifirst, j);
      detail::rot_cols(h, j + 1, j, g2.c, g2.s, ifirst, std::min(j + 2, ilast));
    }
  }

  if (n_degenerate > 0)
    throw SingularPencilError("pencil_eigen: " + std::to_string(n_degenerate) +
                              " eigenvalue pair(s) with negligible alpha and beta; "
                              "the pencil appears singular (check the normal rank)");
  return eigs;
}

}  // namespace spep
