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

#include "uqrel/geometry.hpp"

#include <cmath>

namespace uqrel {

double inner_q(const CMatrix& a, const CMatrix& b, const CMatrix& rho) {
  return (a * b * rho).trace().real();
}

double inner_q(const HermitianOp& a, const HermitianOp& b, const DensityOp& rho) {
  detail::require_dim(a.dim() == rho.dim() && b.dim() == rho.dim(),
                      "inner_q: dimension mismatch");
  return inner_q(a.matrix(), b.matrix(), rho.matrix());
}

double seminorm_q(const CMatrix& a, const CMatrix& rho) {
  // <A,A>_rho >= 0 exactly; anything below is roundoff.
  double q = inner_q(a, a, rho);
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

double seminorm_q(const HermitianOp& a, const DensityOp& rho) {
  detail::require_dim(a.dim() == rho.dim(), "seminorm_q: dimension mismatch");
  return seminorm_q(a.matrix(), rho.matrix());
}

double inner_c(const RealFn& f, const RealFn& g, const ProbDist& p) {
  detail::require_dim(f.size() == p.size() && g.size() == p.size(),
                      "inner_c: size mismatch");
  return (f.values().array() * g.values().array() * p.weights().array()).sum();
}

double seminorm_c(const RealFn& f, const ProbDist& p) {
  double q = inner_c(f, f, p);
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

RMatrix gram_q(const DensityOp& rho, const HermitianBasis& basis) {
  detail::require_dim(rho.dim() == basis.dim(), "gram_q: dimension mismatch");
  const int n = basis.size();
  RMatrix g(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      double v = inner_q(basis.element(k), basis.element(l), rho.matrix());
      g(k, l) = v;
      g(l, k) = v;
    }
  }
  return g;
}

namespace {

struct GramEigen {
  RMatrix vecs;
  RVector vals;
  double cutoff_abs;  // eigenvalues <= cutoff_abs count as kernel
};

GramEigen decompose(const RMatrix& gram, double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(gram);
  if (es.info() != Eigen::Success) {
    throw NumericalError("Gram eigendecomposition failed to converge");
  }
  double lmax = es.eigenvalues().maxCoeff();
  double cutoff = rel_cutoff * (lmax > 0.0 ? lmax : 1.0);
  return GramEigen{es.eigenvectors(), es.eigenvalues(), cutoff};
}

RVector pinv_apply(const GramEigen& ge, const RVector& rhs) {
  RVector y = ge.vecs.transpose() * rhs;
  for (int i = 0; i < y.size(); ++i) {
    y[i] = (ge.vals[i] > ge.cutoff_abs) ? y[i] / ge.vals[i] : 0.0;
  }
  return ge.vecs * y;
}

void check_residual(const RMatrix& gram, const RVector& c, const RVector& rhs,
                    double cutoff) {
  double res = (gram * c - rhs).norm();
  double bound = cutoff * (1.0 + rhs.norm());
  if (res > bound) {
    throw NumericalError("Riesz solve residual " + std::to_string(res) +
                         " exceeds bound " + std::to_string(bound) +
                         " (right-hand side not in numerical range)");
  }
}

}  // namespace

RVector riesz_solve(const RMatrix& gram, const RVector& rhs, double cutoff) {
  detail::require_dim(gram.rows() == gram.cols() && gram.rows() == rhs.size(),
                      "riesz_solve: shape mismatch");
  GramEigen ge = decompose(gram, cutoff);
  RVector c = pinv_apply(ge, rhs);
  check_residual(gram, c, rhs, cutoff);
  return c;
}

StateGeometry::StateGeometry(const DensityOp& rho, const Tolerances& tol)
    : rho_(rho),
      basis_(&HermitianBasis::cached(rho.dim())),
      gram_(gram_q(rho, *basis_)),
      rel_cutoff_(tol.gram_cutoff) {
  GramEigen ge = decompose(gram_, rel_cutoff_);
  vecs_ = std::move(ge.vecs);
  vals_ = std::move(ge.vals);
  abs_cutoff_ = ge.cutoff_abs;
  rank_ = 0;
  for (int i = 0; i < vals_.size(); ++i) {
    if (vals_[i] > abs_cutoff_) ++rank_;
  }
}

double StateGeometry::quad(const RVector& c) const {
  double q = c.dot(gram_ * c);
  return q > 0.0 ? q : 0.0;
}

RVector StateGeometry::project_range(const RVector& c) const {
  RVector y = vecs_.transpose() * c;
  for (int i = 0; i < y.size(); ++i) {
    if (vals_[i] <= abs_cutoff_) y[i] = 0.0;
  }
  return vecs_ * y;
}

RVector StateGeometry::solve(const RVector& rhs) const {
  detail::require_dim(rhs.size() == gram_.rows(),
                      "StateGeometry::solve: shape mismatch");
  RVector y = vecs_.transpose() * rhs;
  for (int i = 0; i < y.size(); ++i) {
    y[i] = (vals_[i] > abs_cutoff_) ? y[i] / vals_[i] : 0.0;
  }
  RVector c = vecs_ * y;
  check_residual(gram_, c, rhs, rel_cutoff_);
  return c;
}

TangentQ canonical_rep(const HermitianOp& a, const DensityOp& rho,
                       const Tolerances& tol) {
  detail::require_dim(a.dim() == rho.dim(), "canonical_rep: dimension mismatch");
  StateGeometry geom(rho, tol);
  RVector c = geom.basis().coords(a.matrix());
  RVector cr = geom.project_range(c);
  double norm = std::sqrt(geom.quad(cr));
  return TangentQ{rho, cr, geom.basis().reconstruct(cr), norm};
}

TangentC make_tangent_c(const RealFn& f, const ProbDist& p) {
  detail::require_dim(f.size() == p.size(), "make_tangent_c: size mismatch");
  RVector v = f.values();
  for (int i = 0; i < v.size(); ++i) {
    if (p[i] <= 0.0) v[i] = 0.0;
  }
  RealFn vals(std::move(v));
  double norm = seminorm_c(vals, p);
  return TangentC{p, std::move(vals), norm};
}

double class_distance(const StateGeometry& geom, const TangentQ& x, const TangentQ& y) {
  detail::require_dim(x.coeffs.size() == y.coeffs.size() &&
                          x.coeffs.size() == geom.gram().rows(),
                      "class_distance: shape mismatch");
  return std::sqrt(geom.quad(x.coeffs - y.coeffs));
}

}  // namespace uqrel
