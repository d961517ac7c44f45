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

#include "uqrel/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace uqrel {

namespace {

CMatrix symmetrize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

void check_effect(const CMatrix& e, int dim, const Tolerances& tol, int index) {
  detail::require_dim(e.rows() == dim && e.cols() == dim,
                      "Povm: effect " + std::to_string(index) + " has wrong shape");
  detail::require(e.allFinite(),
                  "Povm: effect " + std::to_string(index) + " has non-finite entries");
  detail::require((e - e.adjoint()).cwiseAbs().maxCoeff() <= tol.herm,
                  "Povm: effect " + std::to_string(index) + " is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(symmetrize(e), Eigen::EigenvaluesOnly);
  detail::require(es.eigenvalues().minCoeff() >= -tol.psd,
                  "Povm: effect " + std::to_string(index) + " is not positive");
}

struct SpectralClusters {
  std::vector<CMatrix> projectors;  // descending cluster eigenvalue
  RVector labels;                   // cluster means
};

SpectralClusters spectral_clusters(const HermitianOp& obs, double grouping) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(obs.matrix());
  if (es.info() != Eigen::Success) {
    throw NumericalError("spectral_clusters: eigendecomposition failed");
  }
  const int d = obs.dim();
  // Walk the spectrum from the top; a gap wider than `grouping` starts a
  // new cluster.
  SpectralClusters out;
  std::vector<double> means;
  CMatrix proj = CMatrix::Zero(d, d);
  double sum = 0.0;
  int count = 0;
  for (int idx = d - 1; idx >= 0; --idx) {
    double lam = es.eigenvalues()[idx];
    if (count > 0 && (sum / count - lam) > grouping) {
      out.projectors.push_back(proj);
      means.push_back(sum / count);
      proj = CMatrix::Zero(d, d);
      sum = 0.0;
      count = 0;
    }
    proj += es.eigenvectors().col(idx) * es.eigenvectors().col(idx).adjoint();
    sum += lam;
    ++count;
  }
  out.projectors.push_back(proj);
  means.push_back(sum / count);
  out.labels = Eigen::Map<RVector>(means.data(), static_cast<int>(means.size()));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Povm
// ---------------------------------------------------------------------------

Povm::Povm(std::vector<CMatrix> effects, std::optional<RVector> labels,
           const Tolerances& tol) {
  detail::require(!effects.empty(), "Povm: no effects");
  const int d = static_cast<int>(effects[0].rows());
  CMatrix total = CMatrix::Zero(d, d);
  for (size_t i = 0; i < effects.size(); ++i) {
    check_effect(effects[i], d, tol, static_cast<int>(i));
    effects[i] = symmetrize(effects[i]);
    total += effects[i];
  }
  detail::require((total - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol.num,
                  "Povm: effects do not sum to the identity");
  if (labels) {
    detail::require_dim(labels->size() == static_cast<int>(effects.size()),
                        "Povm: label count differs from effect count");
    detail::require(labels->allFinite(), "Povm: non-finite label");
  }
  effects_ = std::move(effects);
  labels_ = std::move(labels);
}

const RVector& Povm::labels() const {
  detail::require(labels_.has_value(), "Povm: outcome labels were not provided");
  return *labels_;
}

Povm Povm::projective(const HermitianOp& obs, double grouping) {
  SpectralClusters sc = spectral_clusters(obs, grouping);
  return Povm(std::move(sc.projectors), std::move(sc.labels));
}

Povm Povm::trivial(int dim) {
  return Povm({CMatrix::Identity(dim, dim)});
}

Povm Povm::non_informative(const ProbDist& q, int dim) {
  std::vector<CMatrix> effects;
  effects.reserve(q.size());
  for (int i = 0; i < q.size(); ++i) {
    effects.push_back(q[i] * CMatrix::Identity(dim, dim));
  }
  return Povm(std::move(effects));
}

// ---------------------------------------------------------------------------
// KrausChannel / TransferMap / Channel
// ---------------------------------------------------------------------------

KrausChannel::KrausChannel(std::vector<CMatrix> kraus, const Tolerances& tol) {
  detail::require(!kraus.empty(), "KrausChannel: no Kraus operators");
  const auto rows = kraus[0].rows();
  const auto cols = kraus[0].cols();
  detail::require_dim(rows > 0 && cols > 0, "KrausChannel: empty operator");
  CMatrix total = CMatrix::Zero(cols, cols);
  for (const auto& k : kraus) {
    detail::require_dim(k.rows() == rows && k.cols() == cols,
                        "KrausChannel: mixed operator shapes");
    detail::require(k.allFinite(), "KrausChannel: non-finite entries");
    total += k.adjoint() * k;
  }
  detail::require(
      (total - CMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff() <= tol.num,
      "KrausChannel: not trace preserving (sum K^dag K != I)");
  kraus_ = std::move(kraus);
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel({CMatrix::Identity(dim, dim)});
}

TransferMap::TransferMap(int dim_in, int dim_out, RMatrix coeffs,
                         const Tolerances& tol)
    : dim_in_(dim_in), dim_out_(dim_out), coeffs_(std::move(coeffs)) {
  detail::require_dim(dim_in >= 1 && dim_out >= 1, "TransferMap: bad dims");
  detail::require_dim(coeffs_.rows() == dim_out * dim_out &&
                          coeffs_.cols() == dim_in * dim_in,
                      "TransferMap: coefficient matrix has wrong shape");
  detail::require(coeffs_.allFinite(), "TransferMap: non-finite entries");
  // Trace preservation: Tr[T(X)] = sqrt(d_out) (Mc)_0 must equal
  // Tr[X] = sqrt(d_in) c_0 for every coordinate vector c.
  RVector row0 = coeffs_.row(0);
  double want = std::sqrt(static_cast<double>(dim_in) / dim_out);
  detail::require(std::abs(row0[0] - want) <= tol.num,
                  "TransferMap: not trace preserving (identity row)");
  if (row0.size() > 1) {
    detail::require(row0.tail(row0.size() - 1).cwiseAbs().maxCoeff() <= tol.num,
                    "TransferMap: not trace preserving (traceless leakage)");
  }
}

TransferMap TransferMap::transpose_map(int dim) {
  const auto& b = HermitianBasis::cached(dim);
  const int n = b.size();
  RMatrix m(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      m(k, l) = (b.element(k) * b.element(l).transpose()).trace().real();
    }
  }
  return TransferMap(dim, dim, std::move(m));
}

TransferMap TransferMap::from_kraus(const KrausChannel& ch) {
  const auto& bin = HermitianBasis::cached(ch.dim_in());
  const auto& bout = HermitianBasis::cached(ch.dim_out());
  RMatrix m(bout.size(), bin.size());
  for (int l = 0; l < bin.size(); ++l) {
    CMatrix out = CMatrix::Zero(ch.dim_out(), ch.dim_out());
    for (const auto& k : ch.kraus()) out += k * bin.element(l) * k.adjoint();
    m.col(l) = bout.coords(out);
  }
  return TransferMap(ch.dim_in(), ch.dim_out(), std::move(m));
}

Channel::Channel(KrausChannel ch) : kraus_(std::move(ch)) {}
Channel::Channel(TransferMap tm) : transfer_(std::move(tm)) {}

int Channel::dim_in() const {
  return kraus_ ? kraus_->dim_in() : transfer_->dim_in();
}

int Channel::dim_out() const {
  return kraus_ ? kraus_->dim_out() : transfer_->dim_out();
}

TransferMap Channel::to_transfer() const {
  return kraus_ ? TransferMap::from_kraus(*kraus_) : *transfer_;
}

DensityOp Channel::apply(const DensityOp& rho, const Tolerances& tol) const {
  detail::require_dim(rho.dim() == dim_in(), "Channel::apply: dimension mismatch");
  if (kraus_) {
    CMatrix out = CMatrix::Zero(dim_out(), dim_out());
    for (const auto& k : kraus_->kraus()) out += k * rho.matrix() * k.adjoint();
    return DensityOp(std::move(out), tol);
  }
  const auto& bin = HermitianBasis::cached(dim_in());
  const auto& bout = HermitianBasis::cached(dim_out());
  CMatrix out = bout.reconstruct(transfer_->coeffs() * bin.coords(rho.matrix()));
  try {
    return DensityOp(std::move(out), tol);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("TransferMap: map not positive on this input (") +
                          e.what() + ")");
  }
}

CMatrix Channel::adjoint(const CMatrix& x) const {
  detail::require_dim(x.rows() == dim_out() && x.cols() == dim_out(),
                      "Channel::adjoint: dimension mismatch");
  if (kraus_) {
    CMatrix out = CMatrix::Zero(dim_in(), dim_in());
    for (const auto& k : kraus_->kraus()) out += k.adjoint() * x * k;
    return out;
  }
  // Coordinate adjoint is the transposed coefficient matrix; extend to
  // general X by splitting into Hermitian parts.
  const auto& bin = HermitianBasis::cached(dim_in());
  const auto& bout = HermitianBasis::cached(dim_out());
  CMatrix h1 = 0.5 * (x + x.adjoint());
  CMatrix h2 = Complex(0.0, -0.5) * (x - x.adjoint());
  CMatrix a1 = bin.reconstruct(transfer_->coeffs().transpose() * bout.coords(h1));
  CMatrix a2 = bin.reconstruct(transfer_->coeffs().transpose() * bout.coords(h2));
  return a1 + Complex(0.0, 1.0) * a2;
}

Channel Channel::compose(const Channel& second, const Channel& first,
                         const Tolerances& tol) {
  detail::require_dim(second.dim_in() == first.dim_out(),
                      "Channel::compose: dimension mismatch");
  if (second.is_kraus() && first.is_kraus()) {
    std::vector<CMatrix> prod;
    prod.reserve(second.kraus().kraus().size() * first.kraus().kraus().size());
    for (const auto& k2 : second.kraus().kraus()) {
      for (const auto& k1 : first.kraus().kraus()) {
        prod.push_back(k2 * k1);
      }
    }
    return Channel(KrausChannel(std::move(prod), tol));
  }
  TransferMap t2 = second.to_transfer();
  TransferMap t1 = first.to_transfer();
  return Channel(TransferMap(t1.dim_in(), t2.dim_out(),
                             t2.coeffs() * t1.coeffs(), tol));
}

// ---------------------------------------------------------------------------
// Instrument
// ---------------------------------------------------------------------------

Instrument::Instrument(std::vector<std::vector<CMatrix>> branches,
                       std::optional<RVector> labels, const Tolerances& tol) {
  detail::require(!branches.empty(), "Instrument: no branches");
  detail::require(!branches[0].empty(), "Instrument: branch 0 is empty");
  const auto rows = branches[0][0].rows();
  const auto cols = branches[0][0].cols();
  CMatrix total = CMatrix::Zero(cols, cols);
  for (size_t i = 0; i < branches.size(); ++i) {
    detail::require(!branches[i].empty(),
                    "Instrument: branch " + std::to_string(i) + " is empty");
    for (const auto& k : branches[i]) {
      detail::require_dim(k.rows() == rows && k.cols() == cols,
                          "Instrument: mixed operator shapes");
      detail::require(k.allFinite(), "Instrument: non-finite entries");
      total += k.adjoint() * k;
    }
  }
  detail::require(
      (total - CMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff() <= tol.num,
      "Instrument: branches are not trace preserving overall");
  if (labels) {
    detail::require_dim(labels->size() == static_cast<int>(branches.size()),
                        "Instrument: label count differs from branch count");
    detail::require(labels->allFinite(), "Instrument: non-finite label");
  }
  branches_ = std::move(branches);
  labels_ = std::move(labels);
}

const RVector& Instrument::labels() const {
  detail::require(labels_.has_value(), "Instrument: outcome labels were not provided");
  return *labels_;
}

Povm Instrument::induced_povm(const Tolerances& tol) const {
  std::vector<CMatrix> effects;
  effects.reserve(branches_.size());
  for (const auto& branch : branches_) {
    CMatrix e = CMatrix::Zero(dim_in(), dim_in());
    for (const auto& k : branch) e += k.adjoint() * k;
    effects.push_back(symmetrize(e));
  }
  return Povm(std::move(effects), labels_, tol);
}

KrausChannel Instrument::induced_channel(const Tolerances& tol) const {
  std::vector<CMatrix> pooled;
  for (const auto& branch : branches_) {
    pooled.insert(pooled.end(), branch.begin(), branch.end());
  }
  return KrausChannel(std::move(pooled), tol);
}

Instrument Instrument::with_labels(RVector labels) const {
  return Instrument(branches_, std::move(labels));
}

Instrument Instrument::luders(const HermitianOp& obs, double grouping) {
  SpectralClusters sc = spectral_clusters(obs, grouping);
  std::vector<std::vector<CMatrix>> branches;
  branches.reserve(sc.projectors.size());
  for (auto& p : sc.projectors) branches.push_back({std::move(p)});
  return Instrument(std::move(branches), std::move(sc.labels));
}

Instrument Instrument::from_channel(const KrausChannel& ch) {
  return Instrument({ch.kraus()});
}

// ---------------------------------------------------------------------------
// ClassicalChannel
// ---------------------------------------------------------------------------

ClassicalChannel::ClassicalChannel(RMatrix kernel, const Tolerances& tol) {
  detail::require_dim(kernel.rows() > 0 && kernel.cols() > 0,
                      "ClassicalChannel: empty kernel");
  detail::require(kernel.allFinite(), "ClassicalChannel: non-finite entries");
  detail::require(kernel.minCoeff() >= -tol.psd,
                  "ClassicalChannel: negative kernel entry");
  for (int i = 0; i < kernel.cols(); ++i) {
    detail::require(std::abs(kernel.col(i).sum() - 1.0) <= tol.num,
                    "ClassicalChannel: column " + std::to_string(i) +
                        " does not sum to 1");
  }
  k_ = kernel.cwiseMax(0.0);
}

ClassicalChannel ClassicalChannel::identity(int n) {
  return ClassicalChannel(RMatrix::Identity(n, n));
}

ClassicalChannel ClassicalChannel::merge_all(int n) {
  return ClassicalChannel(RMatrix::Ones(1, n));
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

ProbDist apply_measurement(const Povm& m, const DensityOp& rho,
                           const Tolerances& tol) {
  detail::require_dim(m.dim() == rho.dim(),
                      "apply_measurement: dimension mismatch");
  RVector p(m.outcomes());
  for (int i = 0; i < m.outcomes(); ++i) {
    p[i] = (m.effect(i) * rho.matrix()).trace().real();
  }
  return ProbDist(std::move(p), tol);
}

HermitianOp adjoint_measurement(const Povm& m, const RealFn& f,
                                const Tolerances& tol) {
  detail::require_dim(f.size() == m.outcomes(),
                      "adjoint_measurement: outcome count mismatch");
  CMatrix x = CMatrix::Zero(m.dim(), m.dim());
  for (int i = 0; i < m.outcomes(); ++i) x += f[i] * m.effect(i);
  return HermitianOp(std::move(x), tol);
}

ProbDist apply_classical(const ClassicalChannel& k, const ProbDist& p,
                         const Tolerances& tol) {
  detail::require_dim(k.size_in() == p.size(),
                      "apply_classical: size mismatch");
  return ProbDist(k.kernel() * p.weights(), tol);
}

RealFn adjoint_classical(const ClassicalChannel& k, const RealFn& f) {
  detail::require_dim(k.size_out() == f.size(),
                      "adjoint_classical: size mismatch");
  return RealFn(k.kernel().transpose() * f.values());
}

ProbDist joint_distribution(const Instrument& ins, const Povm& l,
                            const DensityOp& rho, const Tolerances& tol) {
  detail::require_dim(ins.dim_in() == rho.dim(),
                      "joint_distribution: instrument/state mismatch");
  detail::require_dim(ins.dim_out() == l.dim(),
                      "joint_distribution: instrument/secondary mismatch");
  RVector j(ins.outcomes() * l.outcomes());
  for (int i = 0; i < ins.outcomes(); ++i) {
    CMatrix branch_state = CMatrix::Zero(ins.dim_out(), ins.dim_out());
    for (const auto& k : ins.branches()[i]) {
      branch_state += k * rho.matrix() * k.adjoint();
    }
    for (int jj = 0; jj < l.outcomes(); ++jj) {
      j[i * l.outcomes() + jj] = (l.effect(jj) * branch_state).trace().real();
    }
  }
  return ProbDist(std::move(j), tol);
}

Povm compose_measurement_after_channel(const Povm& l, const Channel& t,
                                       const Tolerances& tol) {
  detail::require_dim(l.dim() == t.dim_out(),
                      "compose_measurement_after_channel: dimension mismatch");
  std::vector<CMatrix> effects;
  effects.reserve(l.outcomes());
  for (int i = 0; i < l.outcomes(); ++i) {
    effects.push_back(t.adjoint(l.effect(i)));
  }
  std::optional<RVector> labels;
  if (l.has_labels()) labels = l.labels();
  return Povm(std::move(effects), std::move(labels), tol);
}

Povm postprocess_measurement(const ClassicalChannel& k, const Povm& m,
                             const Tolerances& tol) {
  detail::require_dim(k.size_in() == m.outcomes(),
                      "postprocess_measurement: outcome count mismatch");
  std::vector<CMatrix> effects;
  effects.reserve(k.size_out());
  for (int j = 0; j < k.size_out(); ++j) {
    CMatrix e = CMatrix::Zero(m.dim(), m.dim());
    for (int i = 0; i < m.outcomes(); ++i) e += k.kernel()(j, i) * m.effect(i);
    effects.push_back(std::move(e));
  }
  return Povm(std::move(effects), std::nullopt, tol);
}

CMatrix choi_matrix(const Channel& t) {
  const int din = t.dim_in();
  const int dout = t.dim_out();
  CMatrix choi = CMatrix::Zero(din * dout, din * dout);
  for (int i = 0; i < din; ++i) {
    for (int j = 0; j < din; ++j) {
      CMatrix unit = CMatrix::Zero(din, din);
      unit(i, j) = 1.0;
      CMatrix mapped;
      if (t.is_kraus()) {
        mapped = CMatrix::Zero(dout, dout);
        for (const auto& k : t.kraus().kraus()) mapped += k * unit * k.adjoint();
      } else {
        // Split into Hermitian parts; the coordinate map is real linear.
        const auto& bin = HermitianBasis::cached(din);
        const auto& bout = HermitianBasis::cached(dout);
        CMatrix h1 = 0.5 * (unit + unit.adjoint());
        CMatrix h2 = Complex(0.0, -0.5) * (unit - unit.adjoint());
        mapped = bout.reconstruct(t.transfer().coeffs() * bin.coords(h1)) +
                 Complex(0.0, 1.0) *
                     bout.reconstruct(t.transfer().coeffs() * bin.coords(h2));
      }
      choi.block(i * dout, j * dout, dout, dout) = mapped;
    }
  }
  return choi;
}

}  // namespace uqrel
