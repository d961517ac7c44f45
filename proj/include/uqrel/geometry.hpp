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

#ifndef UQREL_GEOMETRY_HPP_
#define UQREL_GEOMETRY_HPP_

#include "uqrel/basis.hpp"
#include "uqrel/states.hpp"
#include "uqrel/types.hpp"

namespace uqrel {

/// State-dependent symmetrized inner product <A,B>_rho = <{A,B}>_rho / 2.
/// Equals Re Tr[A B rho] for Hermitian A, B.
double inner_q(const CMatrix& a, const CMatrix& b, const CMatrix& rho);
double inner_q(const HermitianOp& a, const HermitianOp& b, const DensityOp& rho);

/// Seminorm ||A||_rho = sqrt(<A,A>_rho); tiny negative radicands clamp to 0.
double seminorm_q(const CMatrix& a, const CMatrix& rho);
double seminorm_q(const HermitianOp& a, const DensityOp& rho);

/// Classical counterpart <f,g>_p = sum_i f(i) g(i) p(i) and its seminorm.
double inner_c(const RealFn& f, const RealFn& g, const ProbDist& p);
double seminorm_c(const RealFn& f, const ProbDist& p);

/// Gram matrix G_kl = <G_k, G_l>_rho of the Hermitian basis at rho.
/// Real symmetric PSD; singular exactly when rho is rank deficient.
RMatrix gram_q(const DensityOp& rho, const HermitianBasis& basis);

/// Minimum-norm solution of gram * c = rhs through a truncated
/// eigen-pseudoinverse (relative cutoff `cutoff`). The residual must come
/// out <= cutoff * (1 + ||rhs||); otherwise rhs is not in the numerical
/// range and a NumericalError is thrown.
RVector riesz_solve(const RMatrix& gram, const RVector& rhs, double cutoff);

/// Eigendecomposed Gram system at one state. Bundles the factorization so a
/// projection and several solves at the same state share it.
class StateGeometry {
 public:
  StateGeometry(const DensityOp& rho, const Tolerances& tol = Tolerances{});

  const DensityOp& state() const { return rho_; }
  const HermitianBasis& basis() const { return *basis_; }
  const RMatrix& gram() const { return gram_; }
  int rank() const { return rank_; }

  /// c^T G c, clamped at 0 from below.
  double quad(const RVector& c) const;

  /// Orthogonal projection of coefficients onto the numerical range of G
  /// (the canonical-representative projection).
  RVector project_range(const RVector& c) const;

  /// Minimum-norm solve with the residual guarantee of riesz_solve.
  RVector solve(const RVector& rhs) const;

 private:
  DensityOp rho_;
  const HermitianBasis* basis_;  // cached per dim, stable lifetime
  RMatrix gram_;
  RMatrix vecs_;
  RVector vals_;
  double rel_cutoff_;
  double abs_cutoff_;
  int rank_;
};

/// An element of the quotient space of observables modulo seminorm-null
/// directions at `base`, held by its canonical representative: coeffs are
/// orthogonal to the Gram kernel and representative = reconstruct(coeffs).
struct TangentQ {
  DensityOp base;
  RVector coeffs;
  CMatrix representative;
  double norm;
};

/// Classical counterpart; values are forced to 0 on zero-weight outcomes.
struct TangentC {
  ProbDist base;
  RealFn values;
  double norm;
};

/// Canonical representative of [A] at rho.
TangentQ canonical_rep(const HermitianOp& a, const DensityOp& rho,
                       const Tolerances& tol = Tolerances{});

TangentC make_tangent_c(const RealFn& f, const ProbDist& p);

/// Seminorm distance between two classes anchored at the same state.
double class_distance(const StateGeometry& geom, const TangentQ& x, const TangentQ& y);

}  // namespace uqrel

#endif  // UQREL_GEOMETRY_HPP_
