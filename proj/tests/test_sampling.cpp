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
#include <set>

#include "doctest.h"
#include "uqrel/sampling.hpp"

using namespace uqrel;

TEST_CASE("stream seeds are deterministic and spread out") {
  CHECK(derive_stream_seed({42, 7}) == derive_stream_seed({42, 7}));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 64; ++i) {
    seen.insert(derive_stream_seed({42, i}));
    seen.insert(derive_stream_seed({43, i}));
  }
  CHECK(seen.size() == 128);
}

TEST_CASE("trial streams replay exactly and differ across indices") {
  TrialRng a(SeedSpec{5, 11});
  TrialRng b(SeedSpec{5, 11});
  TrialRng c(SeedSpec{5, 12});
  bool all_equal_c = true;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t va = a.next_u64();
    CHECK(va == b.next_u64());
    if (va != c.next_u64()) all_equal_c = false;
  }
  CHECK_FALSE(all_equal_c);
}

TEST_CASE("uniform and uniform_int stay in range") {
  TrialRng rng(SeedSpec{1, 0});
  for (int i = 0; i < 1000; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    int k = rng.uniform_int(3, 7);
    CHECK(k >= 3);
    CHECK(k <= 7);
  }
  // both endpoints of a 2-wide range appear
  bool lo = false, hi = false;
  for (int i = 0; i < 200; ++i) {
    int k = rng.uniform_int(0, 1);
    lo = lo || k == 0;
    hi = hi || k == 1;
  }
  CHECK(lo);
  CHECK(hi);
}

TEST_CASE("gaussian moments look standard normal") {
  TrialRng rng(SeedSpec{2, 0});
  const int n = 20000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = rng.gaussian();
    sum += g;
    sumsq += g * g;
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.1);
}

TEST_CASE("sampled states pass their own validators") {
  TrialRng rng(SeedSpec{3, 0});
  for (int dim : {2, 3, 5}) {
    DensityOp rho = random_density(dim, rng);  // constructor validates
    CHECK(rho.matrix().trace().real() == doctest::Approx(1.0));
    DensityOp psi = random_pure(dim, rng);
    CHECK((psi.matrix() * psi.matrix() - psi.matrix()).norm() < 1e-12);
    HermitianOp a = random_observable(dim, rng);
    CHECK((a.matrix() - a.matrix().adjoint()).norm() == 0.0);
  }
}

TEST_CASE("haar isometries are isometric") {
  TrialRng rng(SeedSpec{4, 0});
  CMatrix v = haar_isometry(rng, 6, 3);
  CHECK((v.adjoint() * v - CMatrix::Identity(3, 3)).norm() < 1e-12);
  CMatrix u = haar_isometry(rng, 4, 4);
  CHECK((u.adjoint() * u - CMatrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("sampled processes pass their own validators") {
  TrialRng rng(SeedSpec{5, 0});
  Povm m = random_povm(3, 4, rng);
  CHECK(m.outcomes() == 4);
  KrausChannel ch = random_channel(2, 3, 2, rng);
  CHECK(ch.dim_in() == 2);
  CHECK(ch.dim_out() == 3);
  Instrument ins = random_instrument(3, 3, 2, 2, rng);
  CHECK(ins.outcomes() == 2);
  CHECK(ins.induced_povm().outcomes() == 2);
  ClassicalChannel k = random_classical(3, 2, rng);
  for (int i = 0; i < 3; ++i) {
    CHECK(k.kernel().col(i).sum() == doctest::Approx(1.0));
  }
  ProbDist p = random_dist(4, rng);
  CHECK(p.weights().sum() == doctest::Approx(1.0));
  RealFn f = random_fn(4, rng);
  CHECK(f.size() == 4);
}

TEST_CASE("frozen stream head guards against silent generator changes") {
  // These literals pin the SplitMix64 derivation and the mt19937_64 layout.
  // If they move, previously published sweep seeds no longer reproduce.
  CHECK(derive_stream_seed({0, 0}) == 3462778190091352187ULL);
  CHECK(derive_stream_seed({1, 2}) == 17005370212714523711ULL);
  TrialRng rng(SeedSpec{0, 0});
  CHECK(rng.next_u64() == 5842002519583235248ULL);
}
