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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "uqrel/relations.hpp"
#include "uqrel/sampling.hpp"

using namespace uqrel;

namespace {

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

DensityOp ket0() {
  CVector e0(2);
  e0 << 1, 0;
  return DensityOp::pure(e0);
}

}  // namespace

TEST_CASE("measurement error: sharp same-basis is errorless, conjugate is maximal") {
  DensityOp rho(CMatrix((CMatrix(2, 2) << 0.7, 0, 0, 0.3).finished()));
  Povm mz = Povm::projective(HermitianOp(pauli_z()));
  CHECK(measurement_error(HermitianOp(pauli_z()), mz, rho) < 1e-7);

  Povm mx = Povm::projective(HermitianOp(pauli_x()));
  CHECK(measurement_error(HermitianOp(pauli_z()), mx,
                          DensityOp::maximally_mixed(2)) == doctest::Approx(1.0));
}

TEST_CASE("disturbance of the conjugate component under a sharp measurement") {
  Instrument ins = Instrument::luders(HermitianOp(pauli_x()));
  Channel t{ins.induced_channel()};
  CHECK(process_disturbance(HermitianOp(pauli_y()), t, ket0()) ==
        doctest::Approx(1.0));
  CHECK(process_disturbance(HermitianOp(pauli_x()), t, ket0()) < 1e-7);
  CHECK(ozawa_disturbance(HermitianOp(pauli_y()), t, ket0()) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("classical loss under total merging is the standard deviation") {
  ProbDist p((RVector(2) << 0.5, 0.5).finished());
  RealFn f((RVector(2) << 1, -1).finished());
  CHECK(classical_loss(f, ClassicalChannel::merge_all(2), p) ==
        doctest::Approx(1.0));
  CHECK(classical_loss(f, ClassicalChannel::identity(2), p) < 1e-12);
}

TEST_CASE("bound terms combine as hypot and absolute value") {
  BoundTerms bt = make_bound_terms(3.0, -4.0);
  CHECK(bt.full == doctest::Approx(5.0));
  CHECK(bt.simple == doctest::Approx(4.0));
  CHECK(bt.full >= bt.simple);
}

TEST_CASE("joint bound terms validate the marginals") {
  DensityOp rho = DensityOp::maximally_mixed(2);
  Povm m = Povm::projective(HermitianOp(pauli_z()));
  // J inconsistent with M rho = (1/2, 1/2)
  ProbDist bad((RVector(4) << 0.7, 0.1, 0.1, 0.1).finished());
  CHECK_THROWS_AS(bound_terms_joint(HermitianOp(pauli_x()), HermitianOp(pauli_y()),
                                    m, m, bad, rho),
                  ValidationError);
}

TEST_CASE("error pair relation holds on the sharp conjugate pair") {
  Instrument ins = Instrument::luders(HermitianOp(pauli_x()));
  Povm l = Povm::projective(HermitianOp(pauli_z()));
  RelationReport rep = check_relation_errors(
      HermitianOp(pauli_x()), HermitianOp(pauli_y()), ins, l, ket0());
  CHECK(rep.satisfied_full);
  CHECK(rep.lhs >= rep.bounds.full - 1e-8);
  CHECK(rep.bounds.full >= rep.bounds.simple - 1e-12);
  CHECK(rep.eps_a < 1e-7);  // sharp measurement of A is errorless
}

TEST_CASE("error-disturbance relation on the textbook qubit pair") {
  Instrument ins = Instrument::luders(HermitianOp(pauli_x()));
  RelationReport rep = check_relation_error_disturbance(
      HermitianOp(pauli_x()), HermitianOp(pauli_y()), ins, ket0());
  CHECK(rep.satisfied_simple);
  CHECK(rep.eta_or_eps_b == doctest::Approx(1.0));
  // sharp measurement of A leaves no room: both sides vanish
  CHECK(rep.lhs < 1e-7);
  CHECK(rep.bounds.simple < 1e-7);
}

TEST_CASE("optimal secondary measures the transported representative") {
  Instrument ins = Instrument::luders(HermitianOp(pauli_x()));
  Channel t{ins.induced_channel()};
  // the y component is annihilated: nothing left to measure
  Povm trivial = optimal_secondary(t, HermitianOp(pauli_y()), ket0());
  CHECK(trivial.outcomes() == 1);
  // the x component survives distortion free
  Povm sharp = optimal_secondary(t, HermitianOp(pauli_x()), ket0());
  CHECK(sharp.outcomes() == 2);
  CHECK(sharp.labels()[0] == doctest::Approx(1.0));
  CHECK(sharp.labels()[1] == doctest::Approx(-1.0));
}

TEST_CASE("composite error splits into disturbance plus residual") {
  TrialRng rng(SeedSpec{7, 3});
  for (int trial = 0; trial < 10; ++trial) {
    int dim = trial % 2 == 0 ? 2 : 3;
    DensityOp rho = random_density(dim, rng);
    HermitianOp a = random_observable(dim, rng);
    Channel t{random_channel(dim, dim, 2, rng)};
    Povm l = random_povm(dim, dim, rng);
    DecompositionReport rep = decomposition_check(a, t, l, rho);
    CHECK(rep.deviation < 1e-9);
    CHECK(rep.composite_error_sq >= rep.disturbance_sq - 1e-9);
  }
}

TEST_CASE("errorless and disturbanceless predicates decide both ways") {
  DensityOp rho(CMatrix((CMatrix(2, 2) << 0.7, 0, 0, 0.3).finished()));
  CHECK(errorless_predicate(HermitianOp(pauli_z()),
                            Povm::projective(HermitianOp(pauli_z())), rho));
  CHECK_FALSE(errorless_predicate(HermitianOp(pauli_z()),
                                  Povm::projective(HermitianOp(pauli_x())),
                                  DensityOp::maximally_mixed(2)));

  CHECK(disturbanceless_predicate(HermitianOp(pauli_z()),
                                  Channel{KrausChannel::identity(2)}, rho));
  Instrument ins = Instrument::luders(HermitianOp(pauli_x()));
  CHECK_FALSE(disturbanceless_predicate(HermitianOp(pauli_y()),
                                        Channel{ins.induced_channel()}, ket0()));
  // the transpose map reverses sigma_y yet preserves its class seminorm;
  // it counts as non-disturbing only where the flipped class coincides
  CMatrix r = 0.5 * (CMatrix::Identity(2, 2) + 0.3 * pauli_x() +
                     0.2 * pauli_y() + 0.4 * pauli_z());
  CHECK(disturbanceless_predicate(HermitianOp(pauli_y()),
                                  Channel{TransferMap::transpose_map(2)},
                                  DensityOp(r)));
}

TEST_CASE("information gain forces disturbance while the bound adapts") {
  for (int dim : {2, 3}) {
    CAPTURE(dim);
    NoFreeMeasurement nf = no_free_measurement_demo(dim);
    CHECK(nf.report.satisfied_simple);
    CHECK(nf.naive_bound > 1e-3);
    CHECK(nf.eta > 1e-3);
    CHECK(nf.report.lhs < nf.naive_bound - 1e-3);  // naive product bound fails
    CHECK(nf.report.lhs >= nf.report.bounds.simple - 1e-8);
  }
}

TEST_CASE("moment-based error dominates the seminorm error") {
  // sharp sigma_x measurement read against sigma_z at I/2
  Povm mx = Povm::projective(HermitianOp(pauli_x()));
  DensityOp mixed = DensityOp::maximally_mixed(2);
  double moment = ozawa_error(HermitianOp(pauli_z()), mx, mixed);
  double seminorm_err = measurement_error(HermitianOp(pauli_z()), mx, mixed);
  CHECK(moment == doctest::Approx(std::sqrt(2.0)));
  CHECK(seminorm_err == doctest::Approx(1.0));
  CHECK(moment >= seminorm_err);

  // At |0><0| the gap is extreme: sigma_z acts as the constant 1 there, so
  // the class is recoverable from any statistics and the seminorm error
  // vanishes, while the moment figure still charges sqrt(2).
  CHECK(ozawa_error(HermitianOp(pauli_z()), mx, ket0()) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(measurement_error(HermitianOp(pauli_z()), mx, ket0()) < 1e-7);

  // reading the measured observable itself is exact in both figures
  Povm mz = Povm::projective(HermitianOp(pauli_z()));
  CHECK(ozawa_error(HermitianOp(pauli_z()), mz, ket0()) < 1e-7);
}

TEST_CASE("ozawa_error requires labels") {
  CMatrix half = 0.5 * CMatrix::Identity(2, 2);
  Povm unlabeled({half, half});
  CHECK_THROWS_AS(ozawa_error(HermitianOp(pauli_z()), unlabeled, ket0()),
                  ValidationError);
}

TEST_CASE("the full chain of figures is ordered on the textbook pair") {
  Instrument ins = Instrument::luders(HermitianOp(pauli_x()));
  OzawaChainReport rep = ozawa_chain_check(HermitianOp(pauli_z()),
                                           HermitianOp(pauli_y()), ins, ket0());
  REQUIRE(rep.links.size() == 5);
  CHECK(rep.all_hold(1e-8));
  CHECK(rep.eps_moment >= rep.eps - 1e-10);
  CHECK(rep.eta_moment >= rep.eta - 1e-10);
  for (const auto& link : rep.links) {
    CAPTURE(link.name);
    CHECK(link.slack >= -1e-8);
  }
}

TEST_CASE("non-informative measurements reduce to the preparation relation") {
  PreparationReduction pr = robertson_reduction(HermitianOp(pauli_x()),
                                                HermitianOp(pauli_y()), ket0());
  CHECK(pr.sigma_a == doctest::Approx(1.0));
  CHECK(pr.sigma_b == doctest::Approx(1.0));
  CHECK(pr.eps_a == doctest::Approx(1.0));
  CHECK(pr.eps_b == doctest::Approx(1.0));
  CHECK(std::abs(pr.cov_sym) < 1e-12);
  CHECK(pr.comm_half == doctest::Approx(1.0));
  CHECK(pr.moment_bound == doctest::Approx(1.0));
  CHECK(pr.eps_dev < 1e-10);
  CHECK(pr.bound_dev < 1e-10);
  CHECK(pr.report.satisfied_full);
  // equality: the bound is tight for this pair and state
  CHECK(std::abs(pr.report.lhs - pr.bounds.full) < 1e-10);
}

TEST_CASE("relation mode names round-trip") {
  for (RelationMode m :
       {RelationMode::errors_joint, RelationMode::error_disturbance,
        RelationMode::ozawa_chain, RelationMode::robertson,
        RelationMode::properties}) {
    CHECK(parse_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_mode("nonsense"), ValidationError);
}
