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

#ifndef UQREL_SAMPLING_HPP_
#define UQREL_SAMPLING_HPP_

#include <cstdint>
#include <random>

#include "uqrel/processes.hpp"
#include "uqrel/states.hpp"

namespace uqrel {

/// Identifies one trial's random stream: a master seed fanned out by trial
/// index. Streams for different indices are independent and order free.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

/// Counter-derived 64-bit stream seed (SplitMix64 mixing). Deterministic
/// across platforms and independent of trial execution order.
std::uint64_t derive_stream_seed(const SeedSpec& spec);

/// Per-trial random source. Gaussian variates come from an explicit
/// Box-Muller transform over the raw engine so the byte stream does not
/// depend on the standard library's distribution implementations.
class TrialRng {
 public:
  explicit TrialRng(const SeedSpec& spec);

  std::uint64_t next_u64();
  double uniform();                 ///< [0, 1)
  int uniform_int(int lo, int hi);  ///< inclusive range
  double gaussian();                ///< N(0, 1)
  Complex cgaussian();              ///< independent N(0,1) real and imaginary parts

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Matrix with iid standard complex Gaussian entries, drawn row major.
CMatrix ginibre(TrialRng& rng, int rows, int cols);

/// Full-rank-almost-surely density operator G G^dag / Tr[G G^dag].
DensityOp random_density(int dim, TrialRng& rng);

/// Rank-one density operator from a Gaussian ket.
DensityOp random_pure(int dim, TrialRng& rng);

/// GUE-type observable (G + G^dag) / 2.
HermitianOp random_observable(int dim, TrialRng& rng);

/// Haar-distributed isometry (rows >= cols) via QR with the phase fix
/// Lambda = diag(R_jj / |R_jj|).
CMatrix haar_isometry(TrialRng& rng, int rows, int cols);

/// POVM E_i = S^{-1/2} A_i A_i^dag S^{-1/2} from Ginibre blocks.
Povm random_povm(int dim, int outcomes, TrialRng& rng);

/// Channel from a Haar isometry into dim_out * kraus_count, sliced into
/// Kraus blocks.
KrausChannel random_channel(int dim_in, int dim_out, int kraus_count, TrialRng& rng);

/// Instrument whose pooled branches come from one Haar isometry; outcome i
/// gets `kraus_per_outcome` of the slices.
Instrument random_instrument(int dim_in, int dim_out, int outcomes,
                             int kraus_per_outcome, TrialRng& rng);

/// Column-stochastic kernel with iid uniform columns.
ClassicalChannel random_classical(int size_in, int size_out, TrialRng& rng);

ProbDist random_dist(int n, TrialRng& rng);
RealFn random_fn(int n, TrialRng& rng);

}  // namespace uqrel

#endif  // UQREL_SAMPLING_HPP_
