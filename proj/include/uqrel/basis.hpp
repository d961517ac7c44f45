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

#ifndef UQREL_BASIS_HPP_
#define UQREL_BASIS_HPP_

#include <vector>

#include "uqrel/types.hpp"

namespace uqrel {

/// Hilbert-Schmidt-orthonormal basis of the d x d Hermitian matrices,
/// Tr[G_k G_l] = delta_kl, with the normalized identity first. Element order
/// is deterministic: I/sqrt(d); for index pairs (j,k), j<k in lexicographic
/// order, the symmetric then the antisymmetric combination; then the d-1
/// diagonal (generalized) elements. For d=2 this is {I, sx, sy, sz}/sqrt(2).
class HermitianBasis {
 public:
  explicit HermitianBasis(int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const CMatrix& element(int k) const { return elems_[k]; }
  const std::vector<CMatrix>& elements() const { return elems_; }

  /// Coordinates c_k = Tr[G_k a] (real part; exact for Hermitian input).
  RVector coords(const CMatrix& a) const;

  /// Sum_k coeffs_k G_k.
  CMatrix reconstruct(const RVector& coeffs) const;

  /// Shared immutable instance per dimension.
  static const HermitianBasis& cached(int dim);

 private:
  int dim_;
  std::vector<CMatrix> elems_;
};

}  // namespace uqrel

#endif  // UQREL_BASIS_HPP_
