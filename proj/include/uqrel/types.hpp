// Copyright 2026 The uqrel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UQREL_TYPES_HPP_
#define UQREL_TYPES_HPP_

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace uqrel {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Numerical tolerances shared across the library. The defaults are what the
/// test suite and the CLI pin; callers may tighten or relax per call.
struct Tolerances {
  double herm = 1e-9;         ///< Hermiticity defect allowed on inputs.
  double trace = 1e-9;        ///< Trace / normalization defect allowed.
  double psd = 1e-9;          ///< Eigenvalue floor: spectrum >= -psd passes.
  double num = 1e-8;          ///< Generic identity / inequality slack.
  double gram_cutoff = 1e-10; ///< Relative spectral cutoff for Gram pseudoinverses.
  double spectral = 1e-9;     ///< Eigenvalue grouping width for projective POVMs.
};

/// An input failed a structural invariant (shape, Hermiticity,
/// normalization, positivity, stochasticity, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two objects have incompatible shapes.
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A computation left its guaranteed numerical envelope: a radicand below
/// the clamp window, a Riesz residual above its bound, an eigensolve that
/// cannot be trusted. Maps to the CLI's "numerical breakdown" exit code.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

inline void require_dim(bool cond, const std::string& msg) {
  if (!cond) throw DimensionError(msg);
}

}  // namespace detail

/// sqrt with a one-sided clamp: radicands in [-slack, 0] count as 0, anything
/// more negative is a numerical breakdown, not a value to propagate.
double sqrt_clamped(double radicand, double slack);

}  // namespace uqrel

#endif  // UQREL_TYPES_HPP_
