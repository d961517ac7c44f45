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

#include "uqrel/sampling.hpp"

#include <cmath>

namespace uqrel {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(const SeedSpec& spec) {
  std::uint64_t s = spec.master_seed;
  std::uint64_t a = splitmix64(s);
  s ^= spec.trial_index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2));
}

TrialRng::TrialRng(const SeedSpec& spec) : eng_(derive_stream_seed(spec)) {}

std::uint64_t TrialRng::next_u64() { return eng_(); }

double TrialRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int TrialRng::uniform_int(int lo, int hi) {
  detail::require(lo <= hi, "uniform_int: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi) - lo + 1;
  return lo + static_cast<int>(next_u64() % span);
}

double TrialRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller on the raw engine keeps the variate stream identical across
  // standard libraries.
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * M_PI * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

Complex TrialRng::cgaussian() {
  double re = gaussian();
  double im = gaussian();
  return Complex(re, im);
}

CMatrix ginibre(TrialRng& rng, int rows, int cols) {
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = rng.cgaussian();
  }
  return g;
}

DensityOp random_density(int dim, TrialRng& rng) {
  CMatrix g = ginibre(rng, dim, dim);
  CMatrix w = g * g.adjoint();
  return DensityOp(w / w.trace().real());
}

DensityOp random_pure(int dim, TrialRng& rng) {
  CVector ket(dim);
  for (int i = 0; i < dim; ++i) ket[i] = rng.cgaussian();
  return DensityOp::pure(ket);
}

HermitianOp random_observable(int dim, TrialRng& rng) {
  CMatrix g = ginibre(rng, dim, dim);
  return HermitianOp(0.5 * (g + g.adjoint()));
}

CMatrix haar_isometry(TrialRng& rng, int rows, int cols) {
  detail::require_dim(rows >= cols && cols >= 1,
                      "haar_isometry: need rows >= cols >= 1");
  CMatrix g = ginibre(rng, rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  for (int j = 0; j < cols; ++j) {
    Complex r = qr.matrixQR()(j, j);
    double mag = std::abs(r);
    if (mag > 0.0) q.col(j) *= r / mag;
  }
  return q;
}

Povm random_povm(int dim, int outcomes, TrialRng& rng) {
  detail::require(outcomes >= 1, "random_povm: need at least one outcome");
  // Construction tolerance tighter than validation: resample the rare
  // near-singular normalizer instead of emitting a marginal POVM.
  constexpr double kSingularGuard = 1e-10;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<CMatrix> blocks;
    blocks.reserve(outcomes);
    CMatrix total = CMatrix::Zero(dim, dim);
    for (int i = 0; i < outcomes; ++i) {
      CMatrix g = ginibre(rng, dim, dim);
      blocks.push_back(g * g.adjoint());
      total += blocks.back();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(total);
    if (es.eigenvalues().minCoeff() <=
        kSingularGuard * es.eigenvalues().maxCoeff()) {
      continue;
    }
    CMatrix inv_sqrt = es.operatorInverseSqrt();
    std::vector<CMatrix> effects;
    effects.reserve(outcomes);
    for (const auto& s : blocks) effects.push_back(inv_sqrt * s * inv_sqrt);
    return Povm(std::move(effects));
  }
  throw NumericalError("random_povm: normalizer persistently near singular");
}

KrausChannel random_channel(int dim_in, int dim_out, int kraus_count,
                            TrialRng& rng) {
  detail::require(kraus_count >= 1 && dim_out * kraus_count >= dim_in,
                  "random_channel: environment too small for an isometry");
  CMatrix v = haar_isometry(rng, dim_out * kraus_count, dim_in);
  std::vector<CMatrix> kraus;
  kraus.reserve(kraus_count);
  for (int a = 0; a < kraus_count; ++a) {
    kraus.push_back(v.block(a * dim_out, 0, dim_out, dim_in));
  }
  return KrausChannel(std::move(kraus));
}

Instrument random_instrument(int dim_in, int dim_out, int outcomes,
                             int kraus_per_outcome, TrialRng& rng) {
  detail::require(outcomes >= 1 && kraus_per_outcome >= 1,
                  "random_instrument: bad branch shape");
  KrausChannel pooled =
      random_channel(dim_in, dim_out, outcomes * kraus_per_outcome, rng);
  std::vector<std::vector<CMatrix>> branches(outcomes);
  for (int i = 0; i < outcomes; ++i) {
    for (int a = 0; a < kraus_per_outcome; ++a) {
      branches[i].push_back(pooled.kraus()[i * kraus_per_outcome + a]);
    }
  }
  return Instrument(std::move(branches));
}

ClassicalChannel random_classical(int size_in, int size_out, TrialRng& rng) {
  RMatrix k(size_out, size_in);
  for (int i = 0; i < size_in; ++i) {
    double total = 0.0;
    for (int j = 0; j < size_out; ++j) {
      k(j, i) = rng.uniform() + 1e-12;
      total += k(j, i);
    }
    k.col(i) /= total;
  }
  return ClassicalChannel(std::move(k));
}

ProbDist random_dist(int n, TrialRng& rng) {
  RVector w(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = rng.uniform() + 1e-12;
    total += w[i];
  }
  return ProbDist(w / total);
}

RealFn random_fn(int n, TrialRng& rng) {
  RVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.gaussian();
  return RealFn(std::move(v));
}

}  // namespace uqrel
