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

#ifndef UQREL_RELATIONS_HPP_
#define UQREL_RELATIONS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "uqrel/processes.hpp"
#include "uqrel/transport.hpp"

namespace uqrel {

/// Gap between what an observable sees before a measurement and what
/// survives into the outcome statistics:
/// error^2 = ||A||_rho^2 - ||pushforward A||_{M rho}^2.
double measurement_error(const HermitianOp& a, const Povm& m, const DensityOp& rho,
                         const Tolerances& tol = Tolerances{});

/// Same gap along a channel: ||B||_rho^2 - ||pushforward B||_{T rho}^2.
double process_disturbance(const HermitianOp& b, const Channel& t,
                           const DensityOp& rho,
                           const Tolerances& tol = Tolerances{});

/// Classical counterpart along a stochastic kernel.
double classical_loss(const RealFn& f, const ClassicalChannel& k, const ProbDist& p,
                      const Tolerances& tol = Tolerances{});

/// The two terms under the joint-measurement lower bound:
/// correlation = <A,B>_rho - <M_*A, M_*B>_{M rho} - <N_*A, N_*B>_{N rho}
///             + <(M_*A)(i) (N_*B)(j)>_J,
/// commutation = <[A,B]>/2i - <[pb M_*A, B]>/2i - <[A, pb N_*B]>/2i at rho,
/// with canonical-representative pullbacks. full = sqrt(corr^2 + comm^2),
/// simple = |comm|, full >= simple always.
struct BoundTerms {
  double correlation;
  double commutation;
  double full;
  double simple;
};

BoundTerms make_bound_terms(double correlation, double commutation);

/// BoundTerms for a joint scheme (M, N, J) at rho. J must have marginals
/// M rho and N rho within tol.num.
BoundTerms bound_terms_joint(const HermitianOp& a, const HermitianOp& b,
                             const Povm& m, const Povm& n, const ProbDist& joint,
                             const DensityOp& rho,
                             const Tolerances& tol = Tolerances{});

/// Commutation term for the error-disturbance form, with the channel leg
/// expressed through the pullback of the pushforward of B along T. Expects
/// (m, t) to come from one instrument.
double bound_commutation_error_disturbance(const HermitianOp& a,
                                           const HermitianOp& b, const Povm& m,
                                           const Channel& t, const DensityOp& rho,
                                           const Tolerances& tol = Tolerances{});

enum class RelationMode {
  errors_joint,
  error_disturbance,
  ozawa_chain,
  robertson,
  properties,
};

std::string to_string(RelationMode mode);
RelationMode parse_mode(const std::string& name);

/// One verified relation instance.
struct RelationReport {
  std::uint64_t seed = 0;  ///< trial index within a sweep
  int dim = 0;
  RelationMode mode = RelationMode::error_disturbance;
  double eps_a = 0.0;
  double eta_or_eps_b = 0.0;       ///< second factor: eps(B;N) or eta(B;T)
  double lhs = 0.0;                ///< product of the two factors
  BoundTerms bounds{0, 0, 0, 0};
  double slack = 0.0;              ///< lhs minus the bound this mode asserts
  bool satisfied_full = false;
  bool satisfied_simple = false;
};

/// eps(A;M) eps(B;N) >= full bound, N = "apply the instrument's channel,
/// then measure l", J = the instrument/secondary joint distribution.
RelationReport check_relation_errors(const HermitianOp& a, const HermitianOp& b,
                                     const Instrument& ins, const Povm& l,
                                     const DensityOp& rho,
                                     const Tolerances& tol = Tolerances{});

/// eps(A;M) eta(B;T) >= |commutation| for the instrument's induced pair.
RelationReport check_relation_error_disturbance(const HermitianOp& a,
                                                const HermitianOp& b,
                                                const Instrument& ins,
                                                const DensityOp& rho,
                                                const Tolerances& tol = Tolerances{});

/// The projective measurement of the pushforward representative of B along
/// t at rho: measuring it after t attains the disturbance infimum exactly.
Povm optimal_secondary(const Channel& t, const HermitianOp& b, const DensityOp& rho,
                       const Tolerances& tol = Tolerances{});

/// Two-path check of eps(A; l after t)^2 = eta(A;t)^2 + eps_{t rho}(pf A; l)^2.
struct DecompositionReport {
  double composite_error_sq;
  double disturbance_sq;
  double residual_error_sq;
  double deviation;  ///< |composite - disturbance - residual|
};

DecompositionReport decomposition_check(const HermitianOp& a, const Channel& t,
                                        const Povm& l, const DensityOp& rho,
                                        const Tolerances& tol = Tolerances{});

/// Three provably equivalent readings of "M measures A at rho without
/// error", evaluated on the squared scale and thresholded at tol.num.
/// Disagreement outside the numerical boundary layer throws NumericalError.
bool errorless_predicate(const HermitianOp& a, const Povm& m, const DensityOp& rho,
                         const Tolerances& tol = Tolerances{});

/// Same equivalence for "t does not disturb A at rho".
bool disturbanceless_predicate(const HermitianOp& a, const Channel& t,
                               const DensityOp& rho,
                               const Tolerances& tol = Tolerances{});

/// A worked instance where extracting information forces disturbance:
/// the sharp measurement of A has eps = 0, so any naive product bound of
/// Robertson shape |<[A,B]>|/2 would be violated, while the commutation
/// bound degrades gracefully and holds.
struct NoFreeMeasurement {
  RelationReport report;   ///< error-disturbance relation, satisfied
  double naive_bound;      ///< |<[A,B]>_rho| / 2, strictly positive
  double eta;              ///< disturbance of B, strictly positive
};

NoFreeMeasurement no_free_measurement_demo(int dim,
                                           const Tolerances& tol = Tolerances{});

/// Moment-based (label-weighted) error figure:
/// eps_o^2 = <M'(m^2)>_rho - <{M'(m), A}>_rho + <A^2>_rho. Requires labels.
double ozawa_error(const HermitianOp& a, const Povm& m, const DensityOp& rho,
                   const Tolerances& tol = Tolerances{});

/// Moment-based disturbance: eps_o with the channel-adjoint of B in place of
/// the labeled measurement.
double ozawa_disturbance(const HermitianOp& b, const Channel& t,
                         const DensityOp& rho,
                         const Tolerances& tol = Tolerances{});

struct ChainLink {
  std::string name;
  double lhs;
  double rhs;
  double slack;  ///< lhs - rhs
};

/// The full ordering between the moment-based figures, the seminorm figures,
/// the joint bound at the optimal secondary, and the additive lower bound.
struct OzawaChainReport {
  double eps_moment;
  double eta_moment;
  double eps;
  double eta;
  BoundTerms bounds;
  double additive_rhs;  ///< |<[A,B]>|/2 - eps_moment sigma(B) - sigma(A) eta_moment
  std::vector<ChainLink> links;
  bool all_hold(double slack_tol) const;
};

OzawaChainReport ozawa_chain_check(const HermitianOp& a, const HermitianOp& b,
                                   const Instrument& ins, const DensityOp& rho,
                                   const Tolerances& tol = Tolerances{});

/// With a non-informative measurement pair the joint bound collapses to the
/// preparation bound sqrt(Cov_sym^2 + (|<[A,B]>|/2)^2) and each error equals
/// the standard deviation.
struct PreparationReduction {
  double sigma_a;
  double sigma_b;
  double eps_a;
  double eps_b;
  BoundTerms bounds;
  double cov_sym;          ///< <A,B>_rho - <A><B>
  double comm_half;        ///< |<[A,B]>_rho| / 2
  double moment_bound;     ///< sqrt(cov_sym^2 + comm_half^2)
  double eps_dev;          ///< max |eps - sigma|
  double bound_dev;        ///< |bounds.full - moment_bound|
  RelationReport report;
};

PreparationReduction robertson_reduction(const HermitianOp& a, const HermitianOp& b,
                                         const DensityOp& rho,
                                         const Tolerances& tol = Tolerances{});

}  // namespace uqrel

#endif  // UQREL_RELATIONS_HPP_
