// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spep/bench.hpp"
#include "spep/classify.hpp"
#include "spep/matrix_polynomial.hpp"

namespace spep {

using nlohmann::json;

inline json matpoly_to_json(const MatrixPolynomial& p) {
  json coeffs = json::array();
  for (int i = 0; i <= p.degree(); ++i) {
    json matrix = json::array();
    for (Index r = 0; r < p.rows(); ++r) {
      json row = json::array();
      for (Index c = 0; c < p.cols(); ++c)
        row.push_back({p.coeff(i)(r, c).real(), p.coeff(i)(r, c).imag()});
      matrix.push_back(std::move(row));
    }
    coeffs.push_back(std::move(matrix));
  }
  return {{"m", p.rows()}, {"n", p.cols()}, {"degree", p.degree()}, {"coefficients", coeffs}};
}

inline MatrixPolynomial matpoly_from_json(const json& j) {
  try {
    const Index m = j.at("m").get<Index>();
    const Index n = j.at("n").get<Index>();
    const int degree = j.at("degree").get<int>();
    const auto& coeffs = j.at("coefficients");
    if (static_cast<int>(coeffs.size()) != degree + 1)
      throw InvalidInputError("problem file: coefficient count does not match degree + 1");
    std::vector<Matrix> out;
    out.reserve(coeffs.size());
    for (const auto& cj : coeffs) {
      Matrix c(m, n);
      if (static_cast<Index>(cj.size()) != m)
        throw InvalidInputError("problem file: row count mismatch");
      for (Index r = 0; r < m; ++r) {
        const auto& row = cj.at(r);
        if (static_cast<Index>(row.size()) != n)
          throw InvalidInputError("problem file: column count mismatch");
        for (Index c2 = 0; c2 < n; ++c2) {
          const auto& e = row.at(c2);
          c(r, c2) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
      }
      out.push_back(std::move(c));
    }
    return MatrixPolynomial(std::move(out));
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("problem file: ") + e.what());
  }
}

inline json classified_to_json(const std::vector<ClassifiedEigenvalue>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    bool inf = r.candidate.lambda.is_infinite();
    Complex v = inf ? Complex(0, 0) : r.candidate.lambda.value();
    out.push_back({{"lambda", {{"re", v.real()}, {"im", v.imag()}, {"infinite", inf}}},
                   {"gamma", r.candidate.gamma},
                   {"alpha", r.candidate.alpha},
                   {"beta", r.candidate.beta},
                   {"gap", std::isfinite(r.gap) ? r.gap : 1e308},
                   {"label", label_name(r.label)}});
  }
  return out;
}

inline void write_classified_csv(std::ostream& os, const std::vector<ClassifiedEigenvalue>& rows) {
  os << "index,re,im,gamma,alpha,beta,gap,label\n";
  int i = 0;
  for (const auto& r : rows) {
    bool inf = r.candidate.lambda.is_infinite();
    Complex v = inf ? Complex(0, 0) : r.candidate.lambda.value();
    os << i++ << ',';
    if (inf)
      os << "inf,inf,";
    else
      os << v.real() << ',' << v.imag() << ',';
    os << r.candidate.gamma << ',' << r.candidate.alpha << ',' << r.candidate.beta << ','
       << r.gap << ',' << label_name(r.label) << '\n';
  }
}

inline json report_to_json(const TrialReport& r) {
  return {{"trials", r.trials},
          {"failures", r.failures},
          {"empirical_p", r.empirical_p},
          {"max_error", r.max_error},
          {"breakdown",
           {{"wrong_count", r.wrong_count},
            {"solver_error", r.solver_error},
            {"non_finite", r.non_finite}}}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("cannot parse ") + path + ": " + e.what());
  }
}

inline RealMatrix real_matrix_from_json(const json& j) {
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) throw InvalidInputError("empty matrix in JSON input");
  const Index cols = static_cast<Index>(j.at(0).size());
  RealMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    if (static_cast<Index>(j.at(r).size()) != cols)
      throw InvalidInputError("ragged matrix in JSON input");
    for (Index c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

}  // namespace spep
