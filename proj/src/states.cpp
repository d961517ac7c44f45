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

#include "uqrel/states.hpp"

#include <cmath>

namespace uqrel {

namespace {

void check_finite(const CMatrix& m, const std::string& what) {
  if (!m.allFinite()) throw ValidationError(what + ": non-finite entries");
}

void check_square(const CMatrix& m, const std::string& what) {
  detail::require_dim(m.rows() == m.cols() && m.rows() > 0,
                      what + ": expected a non-empty square matrix");
}

double hermiticity_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

double sqrt_clamped(double radicand, double slack) {
  if (radicand < -slack) {
    throw NumericalError("negative radicand " + std::to_string(radicand) +
                         " below clamp window -" + std::to_string(slack));
  }
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

HermitianOp::HermitianOp(CMatrix entries, const Tolerances& tol) {
  check_square(entries, "HermitianOp");
  check_finite(entries, "HermitianOp");
  detail::require(hermiticity_defect(entries) <= tol.herm,
                  "HermitianOp: Hermiticity defect exceeds tolerance");
  mat_ = 0.5 * (entries + entries.adjoint());
}

HermitianOp HermitianOp::identity(int dim) {
  return HermitianOp(CMatrix::Identity(dim, dim));
}

DensityOp::DensityOp(CMatrix entries, const Tolerances& tol) {
  check_square(entries, "DensityOp");
  check_finite(entries, "DensityOp");
  detail::require(hermiticity_defect(entries) <= tol.herm,
                  "DensityOp: Hermiticity defect exceeds tolerance");
  mat_ = 0.5 * (entries + entries.adjoint());
  detail::require(std::abs(mat_.trace().real() - 1.0) <= tol.trace,
                  "DensityOp: trace differs from 1 beyond tolerance");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(mat_, Eigen::EigenvaluesOnly);
  detail::require(es.eigenvalues().minCoeff() >= -tol.psd,
                  "DensityOp: spectrum has an eigenvalue below -tol.psd");
}

DensityOp DensityOp::pure(const CVector& ket, const Tolerances& tol) {
  detail::require(ket.size() > 0, "DensityOp::pure: empty vector");
  double n2 = ket.squaredNorm();
  detail::require(n2 > 0.0, "DensityOp::pure: zero vector");
  CMatrix m = (ket * ket.adjoint()) / n2;
  return DensityOp(std::move(m), tol);
}

DensityOp DensityOp::maximally_mixed(int dim) {
  return DensityOp(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

ProbDist::ProbDist(RVector weights, const Tolerances& tol) {
  detail::require(weights.size() > 0, "ProbDist: empty outcome set");
  detail::require(weights.allFinite(), "ProbDist: non-finite weight");
  detail::require(weights.minCoeff() >= -tol.psd,
                  "ProbDist: weight below -tol.psd");
  detail::require(std::abs(weights.sum() - 1.0) <= tol.trace,
                  "ProbDist: total differs from 1 beyond tolerance");
  w_ = weights.cwiseMax(0.0);
}

ProbDist ProbDist::uniform(int n) {
  return ProbDist(RVector::Constant(n, 1.0 / n));
}

RealFn::RealFn(RVector values) {
  detail::require(values.size() > 0, "RealFn: empty outcome set");
  detail::require(values.allFinite(), "RealFn: non-finite value");
  v_ = std::move(values);
}

RealFn RealFn::constant(int n, double value) {
  return RealFn(RVector::Constant(n, value));
}

double expectation(const CMatrix& x, const DensityOp& rho) {
  detail::require_dim(x.rows() == rho.dim() && x.cols() == rho.dim(),
                      "expectation: operator/state dimension mismatch");
  return (x * rho.matrix()).trace().real();
}

double expectation(const RealFn& f, const ProbDist& p) {
  detail::require_dim(f.size() == p.size(),
                      "expectation: function/distribution size mismatch");
  return f.values().dot(p.weights());
}

double stddev(const HermitianOp& a, const DensityOp& rho, const Tolerances& tol) {
  double mean = expectation(a.matrix(), rho);
  double second = (a.matrix() * a.matrix() * rho.matrix()).trace().real();
  return sqrt_clamped(second - mean * mean, tol.num);
}

}  // namespace uqrel
