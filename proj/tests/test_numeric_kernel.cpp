// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "spep/linalg.hpp"
#include "spep/projective.hpp"
#include "spep/qz.hpp"
#include "spep/random.hpp"

using namespace spep;

TEST_CASE("numerical_rank basic cases") {
  CHECK(numerical_rank(Matrix::Zero(3, 3)) == 0);
  CHECK(numerical_rank(Matrix::Identity(4, 4)) == 4);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-20;
  CHECK(numerical_rank(d, 1e-12) == 1);
}

TEST_CASE("numerical_rank is invariant under unitary factors") {
  RngStream rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Index n = 3 + static_cast<Index>(rng.uniform() * 4);
    Index r = 1 + static_cast<Index>(rng.uniform() * (n - 1));
    Matrix a = rng.gaussian_matrix(n, r) * rng.gaussian_matrix(r, n);
    Matrix q1 = random_unitary(n, rng), q2 = random_unitary(n, rng);
    CHECK(numerical_rank(a) == r);
    CHECK(numerical_rank(q1 * a) == r);
    CHECK(numerical_rank(a * q2) == r);
    CHECK(numerical_rank(q1 * a * q2) == r);
  }
}

TEST_CASE("random_unitary: unitarity, determinism, scalars") {
  RngStream rng(3);
  Matrix q = random_unitary(7, rng);
  CHECK((q.adjoint() * q - Matrix::Identity(7, 7)).norm() <= 1e-13);

  RngStream r1(42), r2(42);
  Matrix a = random_unitary(5, r1), b = random_unitary(5, r2);
  CHECK((a - b).norm() == 0.0);  // bit-identical for equal seeds

  RngStream r3(9);
  Matrix s = random_unitary(1, r3);
  CHECK(std::abs(std::abs(s(0, 0)) - 1.0) <= 1e-14);
}

TEST_CASE("random_unitary: Haar first-column symmetry smoke test") {
  RngStream rng(12345);
  Vector mean = Vector::Zero(4);
  const int draws = 1000;
  for (int i = 0; i < draws; ++i) mean += random_unitary(4, rng).col(0);
  mean /= static_cast<double>(draws);
  CHECK(mean.norm() <= 0.1);
}

TEST_CASE("pencil_eigen: diagonal, infinite, companion cases") {
  Matrix a(2, 2), b(2, 2);
  a << -1, 0, 0, -2;
  b = Matrix::Identity(2, 2);
  auto e = pencil_eigen(a, b);
  std::vector<double> vals{e[0].value().real(), e[1].value().real()};
  std::sort(vals.begin(), vals.end());
  CHECK(vals[0] == doctest::Approx(1.0));
  CHECK(vals[1] == doctest::Approx(2.0));

  Matrix b2 = Matrix::Zero(2, 2);
  b2(0, 0) = 1.0;
  auto e2 = pencil_eigen(Matrix::Identity(2, 2), b2);
  int n_inf = 0;
  for (const auto& x : e2) {
    if (x.is_infinite())
      ++n_inf;
    else
      CHECK(std::abs(x.value() - Complex(-1.0, 0.0)) <= 1e-14);
  }
  CHECK(n_inf == 1);

  // companion pencil of lambda^2 - 1
  Matrix ca(2, 2), cb(2, 2);
  ca << 0, -1, -1, 0;
  cb = Matrix::Identity(2, 2);
  auto e3 = pencil_eigen(ca, cb);
  std::vector<double> roots{e3[0].value().real(), e3[1].value().real()};
  std::sort(roots.begin(), roots.end());
  CHECK(roots[0] == doctest::Approx(-1.0));
  CHECK(roots[1] == doctest::Approx(1.0));
}

TEST_CASE("pencil_eigen recovers known diagonal ratios through unitary disguise") {
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    RngStream rng(500 + trial);
    Index n = 2 + static_cast<Index>(rng.uniform() * 14);
    Vector da(n), db(n);
    for (Index i = 0; i < n; ++i) {
      da(i) = rng.complex_gaussian();
      db(i) = rng.complex_gaussian();
    }
    int n_zero = trial % 3;
    for (Index z = 0; z < n_zero && z < n; ++z) db(z) = 0.0;
    Matrix q1 = random_unitary(n, rng), q2 = random_unitary(n, rng);
    auto eigs = pencil_eigen(q1 * da.asDiagonal() * q2, q1 * db.asDiagonal() * q2);
    REQUIRE(static_cast<Index>(eigs.size()) == n);
    int got_inf = 0;
    for (const auto& x : eigs) {
      if (x.is_infinite()) {
        ++got_inf;
        continue;
      }
      double best = 1e300;
      for (Index i = 0; i < n; ++i) {
        if (std::abs(db(i)) == 0.0) continue;
        best = std::min(best, chordal_distance(x.value(), Complex(-da(i) / db(i))));
      }
      worst = std::max(worst, best);
    }
    CHECK(got_inf == std::min<Index>(n_zero, n));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("pencil_eigen rejects a singular pencil") {
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(0, 0) = 1.0;  // det(a + lambda b) = (1 + lambda) * 0, identically zero
  CHECK_THROWS_AS(pencil_eigen(a, b), SingularPencilError);
}

TEST_CASE("pencil_eigen validates input") {
  CHECK_THROWS_AS(pencil_eigen(Matrix::Zero(2, 3), Matrix::Zero(2, 3)), InvalidInputError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(pencil_eigen(bad, Matrix::Identity(2, 2)), Error);
}

TEST_CASE("smallest_singular_vectors") {
  auto id = smallest_singular_vectors(Matrix::Identity(3, 3));
  CHECK(id.sigma == doctest::Approx(1.0));
  CHECK(id.right.norm() == doctest::Approx(1.0));
  CHECK(id.left.norm() == doctest::Approx(1.0));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  auto sv = smallest_singular_vectors(d);
  CHECK(sv.sigma == doctest::Approx(0.0));
  CHECK(std::abs(sv.right(1)) == doctest::Approx(1.0));
  CHECK(std::abs(sv.left(1)) == doctest::Approx(1.0));

  RngStream rng(21);
  Vector u = rng.gaussian_matrix(4, 1);
  Vector v = rng.gaussian_matrix(4, 1);
  u /= u.norm();
  v /= v.norm();
  auto r1 = smallest_singular_vectors(u * v.adjoint());
  CHECK(r1.sigma <= 1e-14);
  CHECK(std::abs(v.dot(r1.right)) <= 1e-13);  // v* x = 0
  CHECK(std::abs(u.dot(r1.left)) <= 1e-13);   // u* y = 0
}

TEST_CASE("projective eigenvalue representation") {
  ProjectiveEigenvalue fin = ProjectiveEigenvalue::finite(Complex(2.0, 1.0));
  CHECK(!fin.is_infinite());
  CHECK(fin.value() == Complex(2.0, 1.0));
  CHECK(ProjectiveEigenvalue::infinite().is_infinite());
  ProjectiveEigenvalue near{Complex(1.0, 0.0), Complex(1e-20, 0.0)};
  CHECK(near.is_infinite());
  CHECK(chordal_distance(fin, fin) == doctest::Approx(0.0));
  CHECK(chordal_distance(ProjectiveEigenvalue::infinite(),
                         ProjectiveEigenvalue::finite(Complex(0, 0))) == doctest::Approx(1.0));
}
