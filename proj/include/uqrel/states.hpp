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

#ifndef UQREL_STATES_HPP_
#define UQREL_STATES_HPP_

#include <string>

#include "uqrel/types.hpp"

namespace uqrel {

/// A bounded observable on a finite-dimensional Hilbert space.
/// Stored exactly Hermitian: the constructor checks the defect against
/// tol.herm and then symmetrizes.
class HermitianOp {
 public:
  explicit HermitianOp(CMatrix entries, const Tolerances& tol = Tolerances{});

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMatrix& matrix() const { return mat_; }

  static HermitianOp identity(int dim);

 private:
  CMatrix mat_;
};

/// A density operator: Hermitian, spectrum >= -tol.psd, unit trace within
/// tol.trace. Stored symmetrized, otherwise as given (no renormalization).
class DensityOp {
 public:
  explicit DensityOp(CMatrix entries, const Tolerances& tol = Tolerances{});

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMatrix& matrix() const { return mat_; }

  static DensityOp pure(const CVector& ket, const Tolerances& tol = Tolerances{});
  static DensityOp maximally_mixed(int dim);

 private:
  CMatrix mat_;
};

/// A probability distribution over a finite outcome set. Weights below zero
/// but above -tol.psd are clamped to 0; the total must be 1 within tol.trace.
class ProbDist {
 public:
  explicit ProbDist(RVector weights, const Tolerances& tol = Tolerances{});

  int size() const { return static_cast<int>(w_.size()); }
  const RVector& weights() const { return w_; }
  double operator[](int i) const { return w_[i]; }

  static ProbDist uniform(int n);

 private:
  RVector w_;
};

/// A real-valued function on a finite outcome set (a classical observable).
class RealFn {
 public:
  explicit RealFn(RVector values);

  int size() const { return static_cast<int>(v_.size()); }
  const RVector& values() const { return v_; }
  double operator[](int i) const { return v_[i]; }

  static RealFn constant(int n, double value);

 private:
  RVector v_;
};

/// <X>_rho for Hermitian X. Real by construction.
double expectation(const CMatrix& x, const DensityOp& rho);
double expectation(const RealFn& f, const ProbDist& p);

/// Standard deviation sqrt(<A^2> - <A>^2), radicand clamped at -tol.num.
double stddev(const HermitianOp& a, const DensityOp& rho,
              const Tolerances& tol = Tolerances{});

}  // namespace uqrel

#endif  // UQREL_STATES_HPP_
