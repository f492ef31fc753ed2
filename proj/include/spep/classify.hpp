// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "spep/common.hpp"
#include "spep/projective.hpp"
#include "spep/singular_methods.hpp"

namespace spep {

struct ClassificationThresholds {
  double delta1 = 1e-16;  // gamma below this is always infinite
  double delta2 = 1e-12;  // gamma below this is infinite unless the gap is small
  double xi2 = 1e-2;      // gap threshold rescuing clustered multiple eigenvalues
};

enum class EigenLabel { finite_true, infinite_true, random_right, random_left, prescribed };

inline const char* label_name(EigenLabel l) {
  switch (l) {
    case EigenLabel::finite_true: return "finite-true";
    case EigenLabel::infinite_true: return "infinite-true";
    case EigenLabel::random_right: return "random-right";
    case EigenLabel::random_left: return "random-left";
    case EigenLabel::prescribed: return "prescribed";
  }
  return "?";
}

struct ClassifiedEigenvalue {
  CandidateEigenvalue candidate;
  double gap = 1.0;
  EigenLabel label = EigenLabel::finite_true;
};

/// Relative gaps gap_i = min_{j != i} |lambda_j - lambda_i| (1+|lambda_i|^2)^{-1/2},
/// taken over the finite entries. Infinite entries get the sentinel 1.0; a
/// finite entry with no finite partner gets +inf.
inline std::vector<double> relative_gaps(const std::vector<ProjectiveEigenvalue>& lams) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> gaps(lams.size(), inf);
  for (size_t i = 0; i < lams.size(); ++i) {
    if (lams[i].is_infinite()) {
      gaps[i] = 1.0;
      continue;
    }
    Complex li = lams[i].value();
    double best = inf;
    for (size_t j = 0; j < lams.size(); ++j) {
      if (j == i || lams[j].is_infinite()) continue;
      best = std::min(best, std::abs(lams[j].value() - li));
    }
    gaps[i] = best / std::sqrt(1.0 + std::norm(li));
  }
  return gaps;
}

namespace detail {

/// Infinite-eigenvalue flags for a set of regular (filter-passing)
/// eigenvalues: gamma < delta1, or gamma < delta2 with a large gap.
inline std::vector<bool> infinite_flags(const std::vector<CandidateEigenvalue>& cands,
                                        const ClassificationThresholds& th) {
  std::vector<ProjectiveEigenvalue> lams;
  lams.reserve(cands.size());
  for (const auto& c : cands) lams.push_back(c.lambda);
  std::vector<double> gaps = relative_gaps(lams);
  std::vector<bool> flags(cands.size(), false);
  for (size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].gamma < th.delta1) flags[i] = true;
    if (cands[i].gamma < th.delta2 && gaps[i] > th.xi2) flags[i] = true;
  }
  return flags;
}

}  // namespace detail

/// Finite eigenvalues among the regular (filter-passing) candidates.
inline std::vector<CandidateEigenvalue> extract_finite(
    const std::vector<CandidateEigenvalue>& cands, const ClassificationThresholds& th) {
  std::vector<bool> flags = detail::infinite_flags(cands, th);
  std::vector<CandidateEigenvalue> out;
  for (size_t i = 0; i < cands.size(); ++i)
    if (!flags[i]) out.push_back(cands[i]);
  return out;
}

/// Spectrum labels for every candidate: both filter quantities below the
/// run threshold make a true eigenvalue (split finite/infinite by the rules
/// above on the passing subset); one-sided smallness gives the random
/// labels; neither small is a prescribed eigenvalue of the injected Q.
inline std::vector<ClassifiedEigenvalue> label_candidates(
    const std::vector<CandidateEigenvalue>& cands, const ClassificationThresholds& th) {
  std::vector<ProjectiveEigenvalue> all;
  all.reserve(cands.size());
  for (const auto& c : cands) all.push_back(c.lambda);
  std::vector<double> gaps = relative_gaps(all);

  std::vector<CandidateEigenvalue> passing;
  std::vector<size_t> passing_index;
  for (size_t i = 0; i < cands.size(); ++i)
    if (cands[i].passed_filter) {
      passing.push_back(cands[i]);
      passing_index.push_back(i);
    }
  std::vector<bool> flags = detail::infinite_flags(passing, th);
  std::vector<bool> infinite_at(cands.size(), false);
  for (size_t p = 0; p < passing_index.size(); ++p) infinite_at[passing_index[p]] = flags[p];

  std::vector<ClassifiedEigenvalue> out;
  out.reserve(cands.size());
  for (size_t i = 0; i < cands.size(); ++i) {
    const auto& c = cands[i];
    EigenLabel label;
    bool a_small = c.alpha < c.threshold;
    bool b_small = c.beta < c.threshold;
    if (a_small && b_small)
      label = infinite_at[i] ? EigenLabel::infinite_true : EigenLabel::finite_true;
    else if (a_small)
      label = EigenLabel::random_right;
    else if (b_small)
      label = EigenLabel::random_left;
    else
      label = EigenLabel::prescribed;
    out.push_back({c, gaps[i], label});
  }
  return out;
}

/// Index sum theorem consistency: d * nrank equals the total finite
/// multiplicity plus the infinite multiplicity plus both minimal index sums.
inline bool index_sum_check(int d, int r, int n_finite, int n_infinite, int M, int N) {
  return d * r == n_finite + n_infinite + M + N;
}

}  // namespace spep
