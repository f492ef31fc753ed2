// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "spep/classify.hpp"
#include "spep/problems.hpp"
#include "spep/singular_methods.hpp"

namespace spep {

struct TrialReport {
  int trials = 0;
  int failures = 0;
  double empirical_p = 1.0;
  double max_error = 0.0;  // over successful trials only
  int wrong_count = 0;
  int solver_error = 0;
  int non_finite = 0;
  std::vector<double> errors;  // per successful trial, NaN for failures
};

/// Greedy nearest matching of computed against expected values; returns the
/// largest matched absolute difference. Sizes must agree.
inline double greedy_match_error(std::vector<Complex> computed, const std::vector<Complex>& expected) {
  double worst = 0.0;
  for (const Complex& e : expected) {
    size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < computed.size(); ++i) {
      double d = std::abs(computed[i] - e);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    worst = std::max(worst, bd);
    computed.erase(computed.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

inline int worker_count_from_env() {
  if (const char* env = std::getenv("SPEP_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

/// N independent runs of (fixture -> method -> finite extraction) with per-trial
/// seeds derived from (master_seed, trial index). Success means the
/// classified finite count equals the ground-truth count. Serial and
/// parallel execution produce bit-identical reports.
inline TrialReport run_trials(const std::string& fixture_name, const ParamMap& params,
                              Method method, const SolverConfig& cfg,
                              const ClassificationThresholds& th, int n_trials,
                              std::uint64_t master_seed, int threads = 0,
                              std::optional<int> k_override = {}) {
  enum class Status { ok, wrong_count, solver_error, non_finite };
  struct Outcome {
    Status status = Status::ok;
    double error = 0.0;
  };
  std::vector<Outcome> outcomes(static_cast<size_t>(n_trials));

  auto one_trial = [&](int index) {
    Outcome out;
    try {
      RngStream rng = RngStream::derive(master_seed, static_cast<std::uint64_t>(index));
      Fixture fx = fixture(fixture_name, params, rng);
      auto cands = run_method(fx.poly, method, cfg, rng, k_override);
      std::vector<CandidateEigenvalue> regular;
      for (auto& c : cands)
        if (c.passed_filter) regular.push_back(c);
      auto finite = extract_finite(regular, th);
      if (finite.size() != fx.truth.finite_eigenvalues.size()) {
        out.status = Status::wrong_count;
        return out;
      }
      std::vector<Complex> values;
      values.reserve(finite.size());
      for (const auto& c : finite) {
        Complex v = c.lambda.value();
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          out.status = Status::non_finite;
          return out;
        }
        values.push_back(v);
      }
      out.error = greedy_match_error(values, fx.truth.finite_eigenvalues);
    } catch (const Error&) {
      out.status = Status::solver_error;
    }
    return out;
  };

  int workers = threads > 0 ? threads : worker_count_from_env();
  workers = std::min(workers, std::max(1, n_trials));
  if (workers <= 1) {
    for (int i = 0; i < n_trials; ++i) outcomes[static_cast<size_t>(i)] = one_trial(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          int i = next.fetch_add(1);
          if (i >= n_trials) return;
          outcomes[static_cast<size_t>(i)] = one_trial(i);
        }
      });
    for (auto& t : pool) t.join();
  }

  TrialReport report;
  report.trials = n_trials;
  report.errors.reserve(static_cast<size_t>(n_trials));
  for (const auto& out : outcomes) {
    switch (out.status) {
      case Status::ok:
        report.max_error = std::max(report.max_error, out.error);
        report.errors.push_back(out.error);
        break;
      case Status::wrong_count:
        ++report.failures;
        ++report.wrong_count;
        report.errors.push_back(std::numeric_limits<double>::quiet_NaN());
        break;
      case Status::solver_error:
        ++report.failures;
        ++report.solver_error;
        report.errors.push_back(std::numeric_limits<double>::quiet_NaN());
        break;
      case Status::non_finite:
        ++report.failures;
        ++report.non_finite;
        report.errors.push_back(std::numeric_limits<double>::quiet_NaN());
        break;
    }
  }
  report.empirical_p = n_trials > 0 ? 1.0 - static_cast<double>(report.failures) / n_trials : 1.0;
  return report;
}

/// Trials that both succeeded and matched the truth within err_tol.
inline int successes_within(const TrialReport& report, double err_tol) {
  int n = 0;
  for (double e : report.errors)
    if (std::isfinite(e) && e <= err_tol) ++n;
  return n;
}

}  // namespace spep
