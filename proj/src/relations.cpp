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

#include "uqrel/relations.hpp"

#include <algorithm>
#include <cmath>

namespace uqrel {

namespace {

/// <[X,Y]>_rho / 2i = Im Tr[X Y rho] for Hermitian X, Y.
double imag_comm_half(const CMatrix& x, const CMatrix& y, const CMatrix& rho) {
  return (x * y * rho).trace().imag();
}

RelationReport fill_report(RelationMode mode, int dim, double eps_a, double second,
                           const BoundTerms& bt, double mode_bound,
                           const Tolerances& tol) {
  RelationReport r;
  r.dim = dim;
  r.mode = mode;
  r.eps_a = eps_a;
  r.eta_or_eps_b = second;
  r.lhs = eps_a * second;
  r.bounds = bt;
  r.slack = r.lhs - mode_bound;
  r.satisfied_full = r.lhs - bt.full >= -tol.num;
  r.satisfied_simple = r.lhs - bt.simple >= -tol.num;
  return r;
}

}  // namespace

double measurement_error(const HermitianOp& a, const Povm& m, const DensityOp& rho,
                         const Tolerances& tol) {
  double total = inner_q(a, a, rho);
  TangentC pf = pushforward_measurement(m, rho, a, tol);
  return sqrt_clamped(total - pf.norm * pf.norm, tol.num);
}

double process_disturbance(const HermitianOp& b, const Channel& t,
                           const DensityOp& rho, const Tolerances& tol) {
  double total = inner_q(b, b, rho);
  TangentQ pf = pushforward_channel(t, rho, b, tol);
  return sqrt_clamped(total - pf.norm * pf.norm, tol.num);
}

double classical_loss(const RealFn& f, const ClassicalChannel& k, const ProbDist& p,
                      const Tolerances& tol) {
  double total = inner_c(f, f, p);
  TangentC pf = pushforward_classical(k, p, f);
  return sqrt_clamped(total - pf.norm * pf.norm, tol.num);
}

BoundTerms make_bound_terms(double correlation, double commutation) {
  return BoundTerms{correlation, commutation, std::hypot(correlation, commutation),
                    std::abs(commutation)};
}

BoundTerms bound_terms_joint(const HermitianOp& a, const HermitianOp& b,
                             const Povm& m, const Povm& n, const ProbDist& joint,
                             const DensityOp& rho, const Tolerances& tol) {
  detail::require_dim(joint.size() == m.outcomes() * n.outcomes(),
                      "bound_terms_joint: joint distribution has wrong size");
  ProbDist pm = apply_measurement(m, rho, tol);
  ProbDist pn = apply_measurement(n, rho, tol);
  for (int i = 0; i < m.outcomes(); ++i) {
    double row = 0.0;
    for (int j = 0; j < n.outcomes(); ++j) row += joint[i * n.outcomes() + j];
    detail::require(std::abs(row - pm[i]) <= tol.num,
                    "bound_terms_joint: first marginal does not match M rho");
  }
  for (int j = 0; j < n.outcomes(); ++j) {
    double col = 0.0;
    for (int i = 0; i < m.outcomes(); ++i) col += joint[i * n.outcomes() + j];
    detail::require(std::abs(col - pn[j]) <= tol.num,
                    "bound_terms_joint: second marginal does not match N rho");
  }

  TangentC fa = pushforward_measurement(m, rho, a, tol);
  TangentC fb = pushforward_measurement(m, rho, b, tol);
  TangentC ga = pushforward_measurement(n, rho, a, tol);
  TangentC gb = pushforward_measurement(n, rho, b, tol);

  double cross = 0.0;
  for (int i = 0; i < m.outcomes(); ++i) {
    for (int j = 0; j < n.outcomes(); ++j) {
      cross += fa.values[i] * gb.values[j] * joint[i * n.outcomes() + j];
    }
  }
  double correlation = inner_q(a, b, rho) - inner_c(fa.values, fb.values, fa.base) -
                       inner_c(ga.values, gb.values, ga.base) + cross;

  TangentQ pba = pullback_measurement(m, rho, fa.values, tol);
  TangentQ pbb = pullback_measurement(n, rho, gb.values, tol);
  double commutation = imag_comm_half(a.matrix(), b.matrix(), rho.matrix()) -
                       imag_comm_half(pba.representative, b.matrix(), rho.matrix()) -
                       imag_comm_half(a.matrix(), pbb.representative, rho.matrix());

  return make_bound_terms(correlation, commutation);
}

double bound_commutation_error_disturbance(const HermitianOp& a,
                                           const HermitianOp& b, const Povm& m,
                                           const Channel& t, const DensityOp& rho,
                                           const Tolerances& tol) {
  TangentC fa = pushforward_measurement(m, rho, a, tol);
  TangentQ pba = pullback_measurement(m, rho, fa.values, tol);
  TangentQ pfb = pushforward_channel(t, rho, b, tol);
  TangentQ pbb = pullback_channel(t, rho, HermitianOp(pfb.representative, tol), tol);
  return imag_comm_half(a.matrix(), b.matrix(), rho.matrix()) -
         imag_comm_half(pba.representative, b.matrix(), rho.matrix()) -
         imag_comm_half(a.matrix(), pbb.representative, rho.matrix());
}

std::string to_string(RelationMode mode) {
  switch (mode) {
    case RelationMode::errors_joint: return "errors-joint";
    case RelationMode::error_disturbance: return "error-disturbance";
    case RelationMode::ozawa_chain: return "ozawa-chain";
    case RelationMode::robertson: return "robertson";
    case RelationMode::properties: return "properties";
  }
  throw ValidationError("to_string: unknown mode");
}

RelationMode parse_mode(const std::string& name) {
  if (name == "errors-joint") return RelationMode::errors_joint;
  if (name == "error-disturbance") return RelationMode::error_disturbance;
  if (name == "ozawa-chain") return RelationMode::ozawa_chain;
  if (name == "robertson") return RelationMode::robertson;
  if (name == "properties") return RelationMode::properties;
  throw ValidationError("unknown mode '" + name +
                        "' (expected errors-joint, error-disturbance, "
                        "ozawa-chain, robertson, or properties)");
}

RelationReport check_relation_errors(const HermitianOp& a, const HermitianOp& b,
                                     const Instrument& ins, const Povm& l,
                                     const DensityOp& rho, const Tolerances& tol) {
  Povm m = ins.induced_povm(tol);
  Channel t{ins.induced_channel(tol)};
  Povm n = compose_measurement_after_channel(l, t, tol);
  ProbDist joint = joint_distribution(ins, l, rho, tol);
  double ea = measurement_error(a, m, rho, tol);
  double eb = measurement_error(b, n, rho, tol);
  BoundTerms bt = bound_terms_joint(a, b, m, n, joint, rho, tol);
  return fill_report(RelationMode::errors_joint, rho.dim(), ea, eb, bt, bt.full, tol);
}

RelationReport check_relation_error_disturbance(const HermitianOp& a,
                                                const HermitianOp& b,
                                                const Instrument& ins,
                                                const DensityOp& rho,
                                                const Tolerances& tol) {
  Povm m = ins.induced_povm(tol);
  Channel t{ins.induced_channel(tol)};
  double ea = measurement_error(a, m, rho, tol);
  double eta = process_disturbance(b, t, rho, tol);
  double comm = bound_commutation_error_disturbance(a, b, m, t, rho, tol);
  // No joint scheme enters this form; the correlation part is not asserted.
  BoundTerms bt = make_bound_terms(0.0, comm);
  return fill_report(RelationMode::error_disturbance, rho.dim(), ea, eta, bt,
                     bt.simple, tol);
}

Povm optimal_secondary(const Channel& t, const HermitianOp& b, const DensityOp& rho,
                       const Tolerances& tol) {
  TangentQ pf = pushforward_channel(t, rho, b, tol);
  return Povm::projective(HermitianOp(pf.representative, tol), tol.spectral);
}

DecompositionReport decomposition_check(const HermitianOp& a, const Channel& t,
                                        const Povm& l, const DensityOp& rho,
                                        const Tolerances& tol) {
  Povm composite = compose_measurement_after_channel(l, t, tol);
  double e = measurement_error(a, composite, rho, tol);
  double eta = process_disturbance(a, t, rho, tol);
  TangentQ pf = pushforward_channel(t, rho, a, tol);
  double resid =
      measurement_error(HermitianOp(pf.representative, tol), l, pf.base, tol);
  DecompositionReport r;
  r.composite_error_sq = e * e;
  r.disturbance_sq = eta * eta;
  r.residual_error_sq = resid * resid;
  r.deviation = std::abs(r.composite_error_sq - r.disturbance_sq - r.residual_error_sq);
  return r;
}

namespace {

/// Shared three-way equivalence on the squared scale. `loss_sq` is
/// ||A||^2 - ||pushforward||^2, `resid_sq` is ||A - pullback pushforward||^2,
/// `round_sq` is ||A||^2 - ||pullback pushforward||^2.
bool equivalent_predicates(double loss_sq, double resid_sq, double round_sq,
                           const std::string& what, const Tolerances& tol) {
  bool pa = loss_sq <= tol.num;
  bool pb = resid_sq <= tol.num;
  bool pc = loss_sq <= tol.num && std::abs(round_sq) <= tol.num;
  if (pa != pb || pa != pc) {
    throw NumericalError(what + ": equivalent predicates disagree near the threshold (loss_sq=" +
                         std::to_string(loss_sq) + ", resid_sq=" + std::to_string(resid_sq) +
                         ", round_sq=" + std::to_string(round_sq) + ")");
  }
  return pa;
}

}  // namespace

bool errorless_predicate(const HermitianOp& a, const Povm& m, const DensityOp& rho,
                         const Tolerances& tol) {
  double total = inner_q(a, a, rho);
  TangentC pf = pushforward_measurement(m, rho, a, tol);
  TangentQ pb = pullback_measurement(m, rho, pf.values, tol);
  CMatrix diff = a.matrix() - pb.representative;
  double resid_sq = std::max(0.0, inner_q(diff, diff, rho.matrix()));
  return equivalent_predicates(total - pf.norm * pf.norm, resid_sq,
                               total - pb.norm * pb.norm, "errorless_predicate", tol);
}

bool disturbanceless_predicate(const HermitianOp& a, const Channel& t,
                               const DensityOp& rho, const Tolerances& tol) {
  double total = inner_q(a, a, rho);
  TangentQ pf = pushforward_channel(t, rho, a, tol);
  TangentQ pb = pullback_channel(t, rho, HermitianOp(pf.representative, tol), tol);
  CMatrix diff = a.matrix() - pb.representative;
  double resid_sq = std::max(0.0, inner_q(diff, diff, rho.matrix()));
  return equivalent_predicates(total - pf.norm * pf.norm, resid_sq,
                               total - pb.norm * pb.norm, "disturbanceless_predicate",
                               tol);
}

namespace {

struct SpinTriple {
  HermitianOp a;
  HermitianOp b;
  DensityOp rho;
};

/// Angular-momentum pair (Jx, Jy) at the top ladder state; for dim 2 the
/// unscaled Pauli pair. <[A,B]>/2i is strictly positive on rho in both cases.
SpinTriple spin_exhibit(int dim) {
  CVector top = CVector::Zero(dim);
  top[0] = 1.0;
  if (dim == 2) {
    CMatrix sx(2, 2), sy(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    return SpinTriple{HermitianOp(sx), HermitianOp(sy), DensityOp::pure(top)};
  }
  const double j = 0.5 * (dim - 1);
  CMatrix plus = CMatrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) {
    double mlow = j - k;  // J+ raises |j, m> to |j, m+1>
    plus(k - 1, k) = std::sqrt(j * (j + 1) - mlow * (mlow + 1));
  }
  CMatrix jx = 0.5 * (plus + plus.adjoint());
  CMatrix jy = Complex(0, -0.5) * (plus - plus.adjoint());
  return SpinTriple{HermitianOp(jx), HermitianOp(jy), DensityOp::pure(top)};
}

}  // namespace

NoFreeMeasurement no_free_measurement_demo(int dim, const Tolerances& tol) {
  detail::require(dim >= 2, "no_free_measurement_demo: dim must be >= 2");
  SpinTriple s = spin_exhibit(dim);
  Instrument ins = Instrument::luders(s.a, tol.spectral);
  RelationReport rep = check_relation_error_disturbance(s.a, s.b, ins, s.rho, tol);
  double naive =
      std::abs(imag_comm_half(s.a.matrix(), s.b.matrix(), s.rho.matrix()));
  NoFreeMeasurement out{rep, naive, rep.eta_or_eps_b};
  // Squared scale: the error is a square root, so near zero it only
  // resolves down to the root of the tolerance.
  if (rep.eps_a * rep.eps_a > tol.num) {
    throw NumericalError("no_free_measurement_demo: sharp measurement shows error " +
                         std::to_string(rep.eps_a));
  }
  if (!(out.eta > tol.num) || !(naive > tol.num)) {
    throw NumericalError("no_free_measurement_demo: exhibit degenerated");
  }
  if (!rep.satisfied_simple) {
    throw NumericalError("no_free_measurement_demo: commutation bound failed");
  }
  return out;
}

double ozawa_error(const HermitianOp& a, const Povm& m, const DensityOp& rho,
                   const Tolerances& tol) {
  const RVector& labels = m.labels();
  CMatrix first = CMatrix::Zero(m.dim(), m.dim());
  CMatrix second = CMatrix::Zero(m.dim(), m.dim());
  for (int i = 0; i < m.outcomes(); ++i) {
    first += labels[i] * m.effect(i);
    second += labels[i] * labels[i] * m.effect(i);
  }
  double val = expectation(second, rho) -
               2.0 * inner_q(first, a.matrix(), rho.matrix()) +
               expectation(a.matrix() * a.matrix(), rho);
  return sqrt_clamped(val, tol.num);
}

double ozawa_disturbance(const HermitianOp& b, const Channel& t,
                         const DensityOp& rho, const Tolerances& tol) {
  detail::require_dim(t.dim_in() == t.dim_out(),
                      "ozawa_disturbance: needs matching in/out dimensions");
  CMatrix adj_b = t.adjoint(b.matrix());
  CMatrix adj_b2 = t.adjoint(b.matrix() * b.matrix());
  double val = expectation(adj_b2, rho) -
               2.0 * inner_q(adj_b, b.matrix(), rho.matrix()) +
               expectation(b.matrix() * b.matrix(), rho);
  return sqrt_clamped(val, tol.num);
}

bool OzawaChainReport::all_hold(double slack_tol) const {
  return std::all_of(links.begin(), links.end(),
                     [&](const ChainLink& l) { return l.slack >= -slack_tol; });
}

OzawaChainReport ozawa_chain_check(const HermitianOp& a, const HermitianOp& b,
                                   const Instrument& ins, const DensityOp& rho,
                                   const Tolerances& tol) {
  Povm m = ins.induced_povm(tol);
  Channel t{ins.induced_channel(tol)};

  OzawaChainReport r;
  r.eps_moment = ozawa_error(a, m, rho, tol);
  r.eta_moment = ozawa_disturbance(b, t, rho, tol);
  r.eps = measurement_error(a, m, rho, tol);
  r.eta = process_disturbance(b, t, rho, tol);

  Povm l = optimal_secondary(t, b, rho, tol);
  Povm n = compose_measurement_after_channel(l, t, tol);
  ProbDist joint = joint_distribution(ins, l, rho, tol);
  r.bounds = bound_terms_joint(a, b, m, n, joint, rho, tol);

  double sa = stddev(a, rho, tol);
  double sb = stddev(b, rho, tol);
  double comm = std::abs(imag_comm_half(a.matrix(), b.matrix(), rho.matrix()));
  r.additive_rhs = comm - r.eps_moment * sb - sa * r.eta_moment;

  auto link = [](std::string name, double lhs, double rhs) {
    return ChainLink{std::move(name), lhs, rhs, lhs - rhs};
  };
  r.links.push_back(link("moment error >= error", r.eps_moment, r.eps));
  r.links.push_back(
      link("moment disturbance >= disturbance", r.eta_moment, r.eta));
  r.links.push_back(link("error * disturbance >= full bound", r.eps * r.eta,
                         r.bounds.full));
  r.links.push_back(
      link("full bound >= commutation bound", r.bounds.full, r.bounds.simple));
  r.links.push_back(
      link("commutation bound >= additive bound", r.bounds.simple, r.additive_rhs));
  return r;
}

PreparationReduction robertson_reduction(const HermitianOp& a, const HermitianOp& b,
                                         const DensityOp& rho,
                                         const Tolerances& tol) {
  // Unequal weights keep us off the symmetric special case.
  ProbDist q{(RVector(2) << 0.3, 0.7).finished()};
  Povm m = Povm::non_informative(q, rho.dim());
  RVector jw(q.size() * q.size());
  for (int i = 0; i < q.size(); ++i) {
    for (int j = 0; j < q.size(); ++j) jw[i * q.size() + j] = q[i] * q[j];
  }
  ProbDist joint{std::move(jw)};

  PreparationReduction r;
  r.sigma_a = stddev(a, rho, tol);
  r.sigma_b = stddev(b, rho, tol);
  r.eps_a = measurement_error(a, m, rho, tol);
  r.eps_b = measurement_error(b, m, rho, tol);
  r.bounds = bound_terms_joint(a, b, m, m, joint, rho, tol);
  double mean_a = expectation(a.matrix(), rho);
  double mean_b = expectation(b.matrix(), rho);
  r.cov_sym = inner_q(a, b, rho) - mean_a * mean_b;
  r.comm_half = std::abs(imag_comm_half(a.matrix(), b.matrix(), rho.matrix()));
  r.moment_bound = std::hypot(r.cov_sym, r.comm_half);
  r.eps_dev = std::max(std::abs(r.eps_a - r.sigma_a), std::abs(r.eps_b - r.sigma_b));
  r.bound_dev = std::abs(r.bounds.full - r.moment_bound);
  r.report = fill_report(RelationMode::robertson, rho.dim(), r.eps_a, r.eps_b,
                         r.bounds, r.bounds.full, tol);
  return r;
}

}  // namespace uqrel
