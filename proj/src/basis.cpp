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

#include "uqrel/basis.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace uqrel {

HermitianBasis::HermitianBasis(int dim) : dim_(dim) {
  detail::require(dim >= 1, "HermitianBasis: dim must be >= 1");
  const double d = static_cast<double>(dim);
  elems_.reserve(static_cast<size_t>(dim) * dim);

  elems_.push_back(CMatrix::Identity(dim, dim) / std::sqrt(d));

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      CMatrix sym = CMatrix::Zero(dim, dim);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      elems_.push_back(sym);
      CMatrix asym = CMatrix::Zero(dim, dim);
      asym(j, k) = Complex(0.0, -inv_sqrt2);
      asym(k, j) = Complex(0.0, inv_sqrt2);
      elems_.push_back(asym);
    }
  }

  for (int l = 1; l < dim; ++l) {
    CMatrix diag = CMatrix::Zero(dim, dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) diag(j, j) = scale;
    diag(l, l) = -static_cast<double>(l) * scale;
    elems_.push_back(diag);
  }
}

RVector HermitianBasis::coords(const CMatrix& a) const {
  detail::require_dim(a.rows() == dim_ && a.cols() == dim_,
                      "HermitianBasis::coords: dimension mismatch");
  RVector c(size());
  for (int k = 0; k < size(); ++k) {
    c[k] = (elems_[k] * a).trace().real();
  }
  return c;
}

CMatrix HermitianBasis::reconstruct(const RVector& coeffs) const {
  detail::require_dim(coeffs.size() == size(),
                      "HermitianBasis::reconstruct: coefficient count mismatch");
  CMatrix a = CMatrix::Zero(dim_, dim_);
  for (int k = 0; k < size(); ++k) {
    if (coeffs[k] != 0.0) a += coeffs[k] * elems_[k];
  }
  return a;
}

const HermitianBasis& HermitianBasis::cached(int dim) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<HermitianBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[dim];
  if (!slot) slot = std::make_unique<HermitianBasis>(dim);
  return *slot;
}

}  // namespace uqrel
