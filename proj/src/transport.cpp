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

#include "uqrel/transport.hpp"

#include <cmath>
#include <vector>

namespace uqrel {

namespace {

// Probabilities at or below this floor count as zero outcomes: the
// conditional-expectation division is meaningless against sign noise there,
// and such outcomes contribute below any working tolerance to seminorms.
constexpr double kZeroProbabilityFloor = 1e-14;

}  // namespace

TangentQ pullback_measurement(const Povm& m, const DensityOp& rho, const RealFn& f,
                              const Tolerances& tol) {
  HermitianOp x = adjoint_measurement(m, f, tol);
  return canonical_rep(x, rho, tol);
}

TangentC pushforward_measurement(const Povm& m, const DensityOp& rho,
                                 const HermitianOp& a, const Tolerances& tol) {
  detail::require_dim(m.dim() == rho.dim() && a.dim() == rho.dim(),
                      "pushforward_measurement: dimension mismatch");
  ProbDist p = apply_measurement(m, rho, tol);
  RVector v(m.outcomes());
  for (int i = 0; i < m.outcomes(); ++i) {
    if (p[i] <= kZeroProbabilityFloor) {
      v[i] = 0.0;
    } else {
      v[i] = inner_q(a.matrix(), m.effect(i), rho.matrix()) / p[i];
    }
  }
  return make_tangent_c(RealFn(std::move(v)), p);
}

TangentQ pullback_channel(const Channel& t, const DensityOp& rho,
                          const HermitianOp& c, const Tolerances& tol) {
  detail::require_dim(t.dim_in() == rho.dim() && t.dim_out() == c.dim(),
                      "pullback_channel: dimension mismatch");
  HermitianOp x(t.adjoint(c.matrix()), tol);
  return canonical_rep(x, rho, tol);
}

TangentQ pushforward_channel(const Channel& t, const DensityOp& rho,
                             const HermitianOp& a, const Tolerances& tol) {
  detail::require_dim(t.dim_in() == rho.dim() && a.dim() == rho.dim(),
                      "pushforward_channel: dimension mismatch");
  DensityOp out = t.apply(rho, tol);
  StateGeometry geom(out, tol);
  const auto& bout = geom.basis();
  RVector v(bout.size());
  for (int k = 0; k < bout.size(); ++k) {
    v[k] = inner_q(a.matrix(), t.adjoint(bout.element(k)), rho.matrix());
  }
  RVector c = geom.solve(v);
  double norm = std::sqrt(geom.quad(c));
  return TangentQ{out, c, bout.reconstruct(c), norm};
}

TangentC pushforward_classical(const ClassicalChannel& k, const ProbDist& p,
                               const RealFn& f) {
  detail::require_dim(k.size_in() == p.size() && f.size() == p.size(),
                      "pushforward_classical: size mismatch");
  ProbDist q = apply_classical(k, p);
  RVector v(k.size_out());
  for (int j = 0; j < k.size_out(); ++j) {
    if (q[j] <= kZeroProbabilityFloor) {
      v[j] = 0.0;
    } else {
      double acc = 0.0;
      for (int i = 0; i < p.size(); ++i) acc += k.kernel()(j, i) * p[i] * f[i];
      v[j] = acc / q[j];
    }
  }
  return make_tangent_c(RealFn(std::move(v)), q);
}

ComposeReport compose_check(std::span<const Channel> chain, const DensityOp& rho,
                            const HermitianOp& a, const Tolerances& tol) {
  detail::require(chain.size() >= 1, "compose_check: empty chain");

  Channel composite = chain[0];
  for (size_t i = 1; i < chain.size(); ++i) {
    composite = Channel::compose(chain[i], composite, tol);
  }

  // States entering each link.
  std::vector<DensityOp> entry;
  entry.reserve(chain.size());
  entry.push_back(rho);
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    entry.push_back(chain[i].apply(entry.back(), tol));
  }

  TangentQ direct = pushforward_channel(composite, rho, a, tol);

  TangentQ chained = pushforward_channel(chain[0], rho, a, tol);
  for (size_t i = 1; i < chain.size(); ++i) {
    chained = pushforward_channel(chain[i], entry[i],
                                  HermitianOp(chained.representative, tol), tol);
  }

  StateGeometry final_geom(direct.base, tol);
  double pf_dev = class_distance(final_geom, direct, chained);

  HermitianOp cfin(direct.representative, tol);
  TangentQ pb_direct = pullback_channel(composite, rho, cfin, tol);
  TangentQ pb_chained =
      pullback_channel(chain[chain.size() - 1], entry[chain.size() - 1], cfin, tol);
  for (size_t i = chain.size() - 1; i-- > 0;) {
    pb_chained = pullback_channel(chain[i], entry[i],
                                  HermitianOp(pb_chained.representative, tol), tol);
  }

  StateGeometry initial_geom(rho, tol);
  double pb_dev = class_distance(initial_geom, pb_direct, pb_chained);

  return ComposeReport{pf_dev, pb_dev, std::max(pf_dev, pb_dev)};
}

}  // namespace uqrel
