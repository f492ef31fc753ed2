// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kSafMin = std::numeric_limits<double>::min();

/// Base class for all spep failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The pencil handed to the eigensolver is (numerically) singular, i.e.
/// the regularizing transform did not regularize. Usually a wrong normal
/// rank upstream.
class SingularPencilError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (files, fixture names, parameter values).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace spep
