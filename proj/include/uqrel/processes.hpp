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

#ifndef UQREL_PROCESSES_HPP_
#define UQREL_PROCESSES_HPP_

#include <optional>
#include <vector>

#include "uqrel/geometry.hpp"
#include "uqrel/states.hpp"
#include "uqrel/types.hpp"

namespace uqrel {

/// A POVM: effects E_i >= -tol.psd, sum within tol.num of identity.
/// Optional real outcome labels (needed by moment-based error figures).
class Povm {
 public:
  Povm(std::vector<CMatrix> effects, std::optional<RVector> labels = std::nullopt,
       const Tolerances& tol = Tolerances{});

  int dim() const { return static_cast<int>(effects_[0].rows()); }
  int outcomes() const { return static_cast<int>(effects_.size()); }
  const CMatrix& effect(int i) const { return effects_[i]; }
  const std::vector<CMatrix>& effects() const { return effects_; }
  bool has_labels() const { return labels_.has_value(); }
  const RVector& labels() const;

  /// Spectral measurement of an observable: one projector per eigenvalue
  /// cluster (grouping width `grouping`), outcomes ordered by descending
  /// eigenvalue, labels = cluster means. A fully degenerate observable
  /// collapses to the trivial POVM {I}.
  static Povm projective(const HermitianOp& obs, double grouping = 1e-9);

  /// Single-effect POVM {I}: measures nothing.
  static Povm trivial(int dim);

  /// Effects q_i * I: outcome statistics carry no information about the state.
  static Povm non_informative(const ProbDist& q, int dim);

 private:
  std::vector<CMatrix> effects_;
  std::optional<RVector> labels_;
};

/// A channel in Kraus form: sum_a K_a^dag K_a = I within tol.num.
/// Completely positive and trace preserving by construction.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<CMatrix> kraus, const Tolerances& tol = Tolerances{});

  int dim_in() const { return static_cast<int>(kraus_[0].cols()); }
  int dim_out() const { return static_cast<int>(kraus_[0].rows()); }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

  static KrausChannel identity(int dim);

 private:
  std::vector<CMatrix> kraus_;
};

/// A trace-preserving linear map given by its real matrix in the Hermitian
/// coordinate bases (dim_out^2 x dim_in^2). Positivity is NOT assumed: it is
/// checked per input when the map is applied, so maps that are positive but
/// not completely positive (the transpose, say) are representable.
class TransferMap {
 public:
  TransferMap(int dim_in, int dim_out, RMatrix coeffs,
              const Tolerances& tol = Tolerances{});

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const RMatrix& coeffs() const { return coeffs_; }

  static TransferMap transpose_map(int dim);
  static TransferMap from_kraus(const KrausChannel& ch);

 private:
  int dim_in_;
  int dim_out_;
  RMatrix coeffs_;
};

/// Either form of a quantum process, with a uniform apply/adjoint surface.
class Channel {
 public:
  explicit Channel(KrausChannel ch);
  explicit Channel(TransferMap tm);

  int dim_in() const;
  int dim_out() const;
  bool is_kraus() const { return kraus_.has_value(); }
  const KrausChannel& kraus() const { return *kraus_; }
  const TransferMap& transfer() const { return *transfer_; }
  TransferMap to_transfer() const;

  /// Schroedinger action. Throws ValidationError("map not positive on this
  /// input...") when a coordinate map produces a non-PSD output.
  DensityOp apply(const DensityOp& rho, const Tolerances& tol = Tolerances{}) const;

  /// Heisenberg action on observables (the unital adjoint).
  CMatrix adjoint(const CMatrix& x) const;

  /// second after first.
  static Channel compose(const Channel& second, const Channel& first,
                         const Tolerances& tol = Tolerances{});

 private:
  std::optional<KrausChannel> kraus_;
  std::optional<TransferMap> transfer_;
};

/// A quantum instrument: outcome-indexed Kraus branches whose stacked
/// collection is trace preserving. Optional outcome labels.
class Instrument {
 public:
  Instrument(std::vector<std::vector<CMatrix>> branches,
             std::optional<RVector> labels = std::nullopt,
             const Tolerances& tol = Tolerances{});

  int dim_in() const { return static_cast<int>(branches_[0][0].cols()); }
  int dim_out() const { return static_cast<int>(branches_[0][0].rows()); }
  int outcomes() const { return static_cast<int>(branches_.size()); }
  const std::vector<std::vector<CMatrix>>& branches() const { return branches_; }
  bool has_labels() const { return labels_.has_value(); }
  const RVector& labels() const;

  /// Effects E_i = sum_a K_{i,a}^dag K_{i,a}; labels carried over.
  Povm induced_povm(const Tolerances& tol = Tolerances{}) const;

  /// The total channel: all branches pooled.
  KrausChannel induced_channel(const Tolerances& tol = Tolerances{}) const;

  /// Same branches with new outcome labels.
  Instrument with_labels(RVector labels) const;

  /// Projective instrument of an observable: branch i applies the eigenspace
  /// projector of the i-th eigenvalue cluster on both sides.
  static Instrument luders(const HermitianOp& obs, double grouping = 1e-9);

  /// One-outcome instrument wrapping a channel.
  static Instrument from_channel(const KrausChannel& ch);

 private:
  std::vector<std::vector<CMatrix>> branches_;
  std::optional<RVector> labels_;
};

/// A classical channel: column-stochastic kernel K(j|i), column i sums to 1.
class ClassicalChannel {
 public:
  explicit ClassicalChannel(RMatrix kernel, const Tolerances& tol = Tolerances{});

  int size_in() const { return static_cast<int>(k_.cols()); }
  int size_out() const { return static_cast<int>(k_.rows()); }
  const RMatrix& kernel() const { return k_; }

  static ClassicalChannel identity(int n);
  static ClassicalChannel merge_all(int n);

 private:
  RMatrix k_;
};

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

/// Outcome distribution p(i) = Tr[E_i rho].
ProbDist apply_measurement(const Povm& m, const DensityOp& rho,
                           const Tolerances& tol = Tolerances{});

/// Adjoint of a measurement on classical observables: sum_i f(i) E_i.
HermitianOp adjoint_measurement(const Povm& m, const RealFn& f,
                                const Tolerances& tol = Tolerances{});

/// (Kp)(j) = sum_i K(j|i) p(i).
ProbDist apply_classical(const ClassicalChannel& k, const ProbDist& p,
                         const Tolerances& tol = Tolerances{});

/// (K'f)(i) = sum_j K(j|i) f(j).
RealFn adjoint_classical(const ClassicalChannel& k, const RealFn& f);

/// Joint distribution of an instrument followed by a secondary POVM:
/// J(i,j) = Tr[L_j sum_a K_{i,a} rho K_{i,a}^dag], row-major over (i,j).
ProbDist joint_distribution(const Instrument& ins, const Povm& l,
                            const DensityOp& rho,
                            const Tolerances& tol = Tolerances{});

/// POVM of "apply the channel, then measure l": effects T'(L_j).
Povm compose_measurement_after_channel(const Povm& l, const Channel& t,
                                       const Tolerances& tol = Tolerances{});

/// Classical post-processing of a POVM: effects F_j = sum_i K(j|i) E_i.
Povm postprocess_measurement(const ClassicalChannel& k, const Povm& m,
                             const Tolerances& tol = Tolerances{});

/// Choi matrix (d_in * d_out square) of a channel; CP iff PSD.
CMatrix choi_matrix(const Channel& t);

}  // namespace uqrel

#endif  // UQREL_PROCESSES_HPP_
