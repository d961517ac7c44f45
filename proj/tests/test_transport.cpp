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
#include <vector>

#include "doctest.h"
#include "uqrel/sampling.hpp"
#include "uqrel/transport.hpp"

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

TEST_CASE("measurement pushforward is the outcome-wise weak value") {
  DensityOp rho(CMatrix((CMatrix(2, 2) << 0.7, 0, 0, 0.3).finished()));
  Povm m = Povm::projective(HermitianOp(pauli_z()));
  TangentC pf = pushforward_measurement(m, rho, HermitianOp(pauli_z()));
  CHECK(pf.values[0] == doctest::Approx(1.0));
  CHECK(pf.values[1] == doctest::Approx(-1.0));
  CHECK(pf.norm == doctest::Approx(1.0));
}

TEST_CASE("zero-probability outcomes carry pushforward value zero") {
  Povm m = Povm::projective(HermitianOp(pauli_z()));
  TangentC pf = pushforward_measurement(m, ket0(), HermitianOp(pauli_z()));
  CHECK(pf.values[0] == doctest::Approx(1.0));
  CHECK(pf.values[1] == 0.0);
  CHECK(pf.base[1] == doctest::Approx(0.0));
  CHECK(pf.norm == doctest::Approx(1.0));
}

TEST_CASE("measurement pullback is the canonical representative of M'(f)") {
  Povm m = Povm::projective(HermitianOp(pauli_x()));
  RealFn f((RVector(2) << 1, -1).finished());
  // M'(f) = sigma_x; at I/2 the class representative is sigma_x itself
  TangentQ pb = pullback_measurement(m, DensityOp::maximally_mixed(2), f);
  CHECK((pb.representative - pauli_x()).norm() < 1e-12);
  CHECK(pb.norm == doctest::Approx(1.0));
}

TEST_CASE("channel pushforward solves the transported Gram system") {
  Instrument ins = Instrument::luders(HermitianOp(pauli_x()));
  Channel t{ins.induced_channel()};
  // sigma_x survives the sigma_x measurement unchanged
  TangentQ pf_x = pushforward_channel(t, ket0(), HermitianOp(pauli_x()));
  CHECK((pf_x.representative - pauli_x()).norm() < 1e-12);
  CHECK(pf_x.norm == doctest::Approx(1.0));
  // sigma_y is wiped out: the pushforward class is zero
  TangentQ pf_y = pushforward_channel(t, ket0(), HermitianOp(pauli_y()));
  CHECK(pf_y.norm < 1e-12);
  CHECK(pf_y.coeffs.norm() < 1e-12);
}

TEST_CASE("channel pullback through the transpose map flips sigma_y") {
  CMatrix r = 0.5 * (CMatrix::Identity(2, 2) + 0.3 * pauli_x() +
                     0.2 * pauli_y() + 0.4 * pauli_z());
  DensityOp rho(r);
  Channel t{TransferMap::transpose_map(2)};
  TangentQ pb = pullback_channel(t, rho, HermitianOp(pauli_y()));
  CHECK((pb.representative + pauli_y()).norm() < 1e-12);
  CHECK(pb.norm == doctest::Approx(seminorm_q(pauli_y(), r)));
}

TEST_CASE("classical pushforward is the conditional expectation") {
  RMatrix kernel(2, 3);
  kernel << 1, 1, 0,
            0, 0, 1;
  ClassicalChannel k(kernel);
  ProbDist p((RVector(3) << 0.2, 0.3, 0.5).finished());
  RealFn f((RVector(3) << 1, 2, 3).finished());
  TangentC pf = pushforward_classical(k, p, f);
  CHECK(pf.values[0] == doctest::Approx((0.2 * 1 + 0.3 * 2) / 0.5));
  CHECK(pf.values[1] == doctest::Approx(3.0));
  CHECK(pf.base[0] == doctest::Approx(0.5));
}

TEST_CASE("identity chains compose with zero deviation") {
  std::vector<Channel> chain{Channel{KrausChannel::identity(2)},
                             Channel{KrausChannel::identity(2)}};
  CMatrix r(2, 2);
  r << 0.6, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.4;
  ComposeReport rep = compose_check(chain, DensityOp(r), HermitianOp(pauli_y()));
  CHECK(rep.max_dev < 1e-12);
}

TEST_CASE("random chains including the transpose satisfy the composition law") {
  TrialRng rng(SeedSpec{99, 0});
  for (int trial = 0; trial < 10; ++trial) {
    DensityOp rho = random_density(2, rng);
    HermitianOp a = random_observable(2, rng);
    std::vector<Channel> chain{Channel{random_channel(2, 2, 2, rng)},
                               Channel{TransferMap::transpose_map(2)}};
    ComposeReport rep = compose_check(chain, rho, a);
    CHECK(rep.max_dev < 1e-9);
  }
}

TEST_CASE("pushforward then pullback never grows the seminorm") {
  TrialRng rng(SeedSpec{100, 0});
  for (int trial = 0; trial < 10; ++trial) {
    int dim = trial % 2 == 0 ? 2 : 3;
    DensityOp rho = random_density(dim, rng);
    HermitianOp a = random_observable(dim, rng);
    Channel t{random_channel(dim, dim, 2, rng)};
    TangentQ pf = pushforward_channel(t, rho, a);
    CHECK(pf.norm <= seminorm_q(a, rho) + 1e-10);
    TangentQ pb = pullback_channel(t, rho, HermitianOp(pf.representative));
    CHECK(pb.norm <= pf.norm + 1e-10);
  }
}
