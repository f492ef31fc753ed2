// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: solve singular polynomial eigenvalue problems,
// run benchmark campaigns over the built-in fixtures, emit fixtures as
// problem files, run the nullspace lab, and compute ZGV frequencies.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spep/spep.hpp"

namespace {

using namespace spep;

Method parse_method(const std::string& s) {
  if (s == "perturb" || s == "perturbation") return Method::perturbation;
  if (s == "project" || s == "projection") return Method::projection;
  if (s == "augment" || s == "augmentation") return Method::augmentation;
  throw InvalidInputError("unknown method: " + s + " (use perturb|project|augment)");
}

ParamMap parse_params(const std::vector<std::string>& kvs) {
  ParamMap out;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw InvalidInputError("parameter must look like key=value: " + kv);
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

std::optional<int> parse_k(const std::string& s) {
  if (s.empty() || s == "auto") return std::nullopt;
  return std::stoi(s);
}

void print_table(const std::vector<ClassifiedEigenvalue>& rows) {
  std::printf("%-4s %-24s %-10s %-10s %-10s %-9s %s\n", "j", "lambda", "gamma", "alpha", "beta",
              "gap", "type");
  int j = 1;
  for (const auto& r : rows) {
    char lam[64];
    if (r.candidate.lambda.is_infinite()) {
      std::snprintf(lam, sizeof lam, "inf");
    } else {
      Complex v = r.candidate.lambda.value();
      if (std::abs(v) >= 1e6)
        std::snprintf(lam, sizeof lam, "%.5e%+.5ei", v.real(), v.imag());
      else
        std::snprintf(lam, sizeof lam, "%.6f%+.6fi", v.real(), v.imag());
    }
    std::printf("%-4d %-24s %-10.2e %-10.2e %-10.2e %-9.2f %s\n", j++, lam, r.candidate.gamma,
                r.candidate.alpha, r.candidate.beta, std::isfinite(r.gap) ? r.gap : 1.0,
                label_name(r.label));
  }
}

int cmd_solve(const std::string& input, const std::string& method_str, const std::string& k_str,
              double tau, double delta, const ClassificationThresholds& th, std::uint64_t seed,
              const std::string& output, const std::string& csv) {
  MatrixPolynomial p = matpoly_from_json(load_json_file(input));
  Method method = parse_method(method_str);
  SolverConfig cfg;
  cfg.tau = tau;
  if (delta > 0) cfg.delta_filter = delta;
  cfg.master_seed = seed;
  RngStream rng(seed);
  auto cands = run_method(p, method, cfg, rng, parse_k(k_str));
  auto labeled = label_candidates(cands, th);
  print_table(labeled);

  std::vector<CandidateEigenvalue> regular;
  for (const auto& c : cands)
    if (c.passed_filter) regular.push_back(c);
  auto finite = extract_finite(regular, th);
  std::printf("# %zu regular eigenvalue(s), %zu finite\n", regular.size(), finite.size());

  if (!output.empty()) {
    std::ofstream os(output);
    if (!os) throw InvalidInputError("cannot write " + output);
    os << classified_to_json(labeled).dump(2) << '\n';
  }
  if (!csv.empty()) {
    std::ofstream os(csv);
    if (!os) throw InvalidInputError("cannot write " + csv);
    write_classified_csv(os, labeled);
  }
  return 0;
}

int cmd_bench(const std::string& fixture_name, const std::vector<std::string>& params,
              const std::string& method_str, int trials, std::uint64_t seed,
              const std::string& output) {
  Method method = parse_method(method_str);
  SolverConfig cfg;
  ClassificationThresholds th;
  TrialReport rep = run_trials(fixture_name, parse_params(params), method, cfg, th, trials, seed);
  std::printf("fixture=%s method=%s trials=%d failures=%d p=%.6f maxerr=%.3e\n",
              fixture_name.c_str(), method_name(method), rep.trials, rep.failures, rep.empirical_p,
              rep.max_error);
  if (!output.empty()) {
    json j = report_to_json(rep);
    j["fixture"] = fixture_name;
    j["method"] = method_name(method);
    j["seed"] = seed;
    std::ofstream os(output);
    if (!os) throw InvalidInputError("cannot write " + output);
    os << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_fixture(const std::string& name, const std::vector<std::string>& params,
                std::uint64_t seed, const std::string& emit) {
  RngStream rng(seed);
  Fixture fx = fixture(name, parse_params(params), rng);
  std::printf("fixture %s: %tdx%td, degree %d, nrank %d, %zu known finite eigenvalue(s)\n",
              name.c_str(), fx.poly.rows(), fx.poly.cols(), fx.poly.degree(), fx.truth.nrank,
              fx.truth.finite_eigenvalues.size());
  if (!emit.empty()) {
    std::ofstream os(emit);
    if (!os) throw InvalidInputError("cannot write " + emit);
    os << matpoly_to_json(fx.poly).dump(2) << '\n';
  }
  return 0;
}

int cmd_lab(const std::string& basis_file, int trials, std::uint64_t seed) {
  MatrixPolynomial basis_poly = matpoly_from_json(load_json_file(basis_file));
  std::vector<MatrixPolynomial> columns;
  for (Index j = 0; j < basis_poly.cols(); ++j) {
    std::vector<Matrix> coeffs;
    for (int i = 0; i <= basis_poly.degree(); ++i) coeffs.push_back(basis_poly.coeff(i).col(j));
    columns.emplace_back(std::move(coeffs));
  }
  MinimalBasis basis = make_minimal_basis(std::move(columns));
  if (!check_minimal_basis(basis))
    std::fprintf(stderr, "warning: basis fails the minimality invariants\n");
  std::printf("trial,root,re,im,det_degree,simple,degenerate\n");
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::derive(seed, static_cast<std::uint64_t>(t));
    Matrix v = rng.gaussian_matrix(basis_poly.rows(), basis_poly.cols());
    ProjectedRoots pr = projected_basis_roots(basis, v);
    bool simple = simplicity_check(pr.roots, pr.det_coeffs);
    int deg = static_cast<int>(pr.det_coeffs.size()) - 1;
    int r = 0;
    for (const auto& root : pr.roots)
      std::printf("%d,%d,%.12g,%.12g,%d,%d,%d\n", t, r++, root.real(), root.imag(), deg,
                  int(simple), int(pr.degenerate));
    if (pr.roots.empty())
      std::printf("%d,-1,nan,nan,%d,%d,%d\n", t, deg, int(simple), int(pr.degenerate));
  }
  return 0;
}

int cmd_zgv(const std::string& matrices_file, double kappa) {
  json j = load_json_file(matrices_file);
  RealMatrix l0 = real_matrix_from_json(j.at("L0"));
  RealMatrix l1 = real_matrix_from_json(j.at("L1"));
  RealMatrix l2 = real_matrix_from_json(j.at("L2"));
  RealMatrix m = real_matrix_from_json(j.at("M"));
  std::printf("omega,zgv_residual\n");
  for (const auto& f : zgv_frequencies(l0, l1, l2, m, kappa))
    std::printf("%.12g,%.6e\n", f.omega, f.zgv_residual);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spep: eigenvalues of singular polynomial eigenvalue problems"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "solve one problem from a JSON file");
  std::string in_file, method_str = "project", k_str = "auto", out_file, csv_file;
  double tau = 1e-1, delta = -1;
  ClassificationThresholds th;
  std::uint64_t seed = 1;
  solve->add_option("--input", in_file, "problem JSON file")->required();
  solve->add_option("--method", method_str, "perturb|project|augment");
  solve->add_option("--k", k_str, "nullity override, or 'auto'");
  solve->add_option("--tau", tau, "perturbation size");
  solve->add_option("--delta", delta, "filter threshold (default per method)");
  solve->add_option("--delta1", th.delta1, "hard infinite-classification threshold");
  solve->add_option("--delta2", th.delta2, "soft infinite-classification threshold");
  solve->add_option("--xi2", th.xi2, "gap threshold of the infinite classification");
  solve->add_option("--seed", seed, "random seed");
  solve->add_option("--output", out_file, "result JSON file");
  solve->add_option("--csv", csv_file, "result CSV file");

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark a fixture over many trials");
  std::string fixture_name;
  std::vector<std::string> params;
  int trials = 100;
  std::string report_file;
  bench->add_option("--fixture", fixture_name, "fixture name")->required();
  bench->add_option("--param", params, "fixture parameter key=value");
  bench->add_option("--method", method_str, "perturb|project|augment");
  bench->add_option("--trials", trials, "number of trials");
  bench->add_option("--seed", seed, "master seed");
  bench->add_option("--output", report_file, "report JSON file");

  // fixture
  auto* fix = app.add_subcommand("fixture", "emit a named fixture as a problem file");
  std::string emit_file;
  fix->add_option("--name", fixture_name, "fixture name")->required();
  fix->add_option("--param", params, "fixture parameter key=value");
  fix->add_option("--seed", seed, "random seed");
  fix->add_option("--emit", emit_file, "output problem JSON file");

  // lab
  auto* lab = app.add_subcommand("lab", "project a minimal basis against random V, CSV roots");
  std::string basis_file;
  lab->add_option("--basis", basis_file, "basis JSON file (n x k matrix polynomial)")->required();
  lab->add_option("--trials", trials, "number of random projections");
  lab->add_option("--seed", seed, "master seed");

  // zgv
  auto* zgv = app.add_subcommand("zgv", "frequencies and ZGV residuals at a wavenumber");
  std::string matrices_file;
  double kappa = 0.0;
  zgv->add_option("--matrices", matrices_file, "JSON file with L0, L1, L2, M")->required();
  zgv->add_option("--kappa", kappa, "wavenumber");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(in_file, method_str, k_str, tau, delta, th, seed, out_file, csv_file);
    if (bench->parsed()) return cmd_bench(fixture_name, params, method_str, trials, seed, report_file);
    if (fix->parsed()) return cmd_fixture(fixture_name, params, seed, emit_file);
    if (lab->parsed()) return cmd_lab(basis_file, trials, seed);
    if (zgv->parsed()) return cmd_zgv(matrices_file, kappa);
  } catch (const InvalidInputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const SingularPencilError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    std::fprintf(stderr, "hint: the transformed problem stayed singular; the normal rank may be "
                         "over-estimated (try --k)\n");
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
