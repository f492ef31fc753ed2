// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include "spep/bench.hpp"
#include "spep/json_io.hpp"

using namespace spep;

TEST_CASE("greedy_match_error pairs nearest values") {
  std::vector<Complex> got{Complex(1.0 + 1e-12, 0), Complex(2.0, 1e-13)};
  std::vector<Complex> want{Complex(2, 0), Complex(1, 0)};
  CHECK(greedy_match_error(got, want) <= 1e-11);
  CHECK(greedy_match_error({}, {}) == 0.0);
}

TEST_CASE("run_trials is bit-reproducible and thread-count independent") {
  SolverConfig cfg;
  ClassificationThresholds th;
  auto a = run_trials("ksg-2", {}, Method::projection, cfg, th, 24, 7, 1);
  auto b = run_trials("ksg-2", {}, Method::projection, cfg, th, 24, 7, 1);
  auto c = run_trials("ksg-2", {}, Method::projection, cfg, th, 24, 7, 3);
  CHECK(a.failures == b.failures);
  CHECK(a.max_error == b.max_error);
  CHECK(a.errors == b.errors);
  CHECK(a.failures == c.failures);
  CHECK(a.max_error == c.max_error);
  CHECK(a.errors == c.errors);
  CHECK(a.trials == 24);
  CHECK(a.empirical_p == doctest::Approx(1.0 - double(a.failures) / 24));
}

TEST_CASE("run_trials counts zero-finite fixtures correctly") {
  SolverConfig cfg;
  ClassificationThresholds th;
  auto rep = run_trials("zh", {}, Method::projection, cfg, th, 10, 5, 1);
  CHECK(rep.failures == 0);
  CHECK(rep.max_error == 0.0);
}

TEST_CASE("matrix polynomial JSON round trip") {
  RngStream rng(71);
  std::vector<Matrix> coeffs;
  for (int i = 0; i < 3; ++i) coeffs.push_back(rng.gaussian_matrix(2, 4));
  MatrixPolynomial p(std::move(coeffs));
  json j = matpoly_to_json(p);
  CHECK(j["m"] == 2);
  CHECK(j["n"] == 4);
  CHECK(j["degree"] == 2);
  MatrixPolynomial q = matpoly_from_json(j);
  REQUIRE(q.degree() == p.degree());
  for (int i = 0; i <= 2; ++i) CHECK((q.coeff(i) - p.coeff(i)).norm() == 0.0);

  json bad = j;
  bad["degree"] = 5;
  CHECK_THROWS_AS(matpoly_from_json(bad), InvalidInputError);
}

TEST_CASE("classified results serialize to the documented schema") {
  CandidateEigenvalue c;
  c.lambda = ProjectiveEigenvalue::finite(Complex(1.5, -0.25));
  c.gamma = 0.5;
  c.alpha = 1e-15;
  c.beta = 2e-15;
  c.threshold = 1e-10;
  c.passed_filter = true;
  ClassifiedEigenvalue row{c, 0.33, EigenLabel::finite_true};
  json j = classified_to_json({row});
  REQUIRE(j.size() == 1);
  CHECK(j[0]["lambda"]["re"] == 1.5);
  CHECK(j[0]["lambda"]["im"] == -0.25);
  CHECK(j[0]["lambda"]["infinite"] == false);
  CHECK(j[0]["label"] == "finite-true");

  std::ostringstream os;
  write_classified_csv(os, {row});
  CHECK(os.str().find("index,re,im,gamma,alpha,beta,gap,label") == 0);
  CHECK(os.str().find("finite-true") != std::string::npos);
}

TEST_CASE("report JSON carries the failure taxonomy") {
  TrialReport r;
  r.trials = 10;
  r.failures = 2;
  r.wrong_count = 1;
  r.solver_error = 1;
  r.empirical_p = 0.8;
  json j = report_to_json(r);
  CHECK(j["breakdown"]["wrong_count"] == 1);
  CHECK(j["breakdown"]["solver_error"] == 1);
  CHECK(j["trials"] == 10);
}
