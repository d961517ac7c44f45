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

#ifndef UQREL_TRANSPORT_HPP_
#define UQREL_TRANSPORT_HPP_

#include <span>

#include "uqrel/geometry.hpp"
#include "uqrel/processes.hpp"

namespace uqrel {

/// Pullback of a classical observable along a measurement, as a class at rho:
/// the canonical representative of M'(f).
TangentQ pullback_measurement(const Povm& m, const DensityOp& rho, const RealFn& f,
                              const Tolerances& tol = Tolerances{});

/// Pushforward of an observable along a measurement: the unique class over
/// M(rho) dual to the pullback. Closed form f*(i) = <A, E_i>_rho / p(i), with
/// value 0 on zero-probability outcomes.
TangentC pushforward_measurement(const Povm& m, const DensityOp& rho,
                                 const HermitianOp& a,
                                 const Tolerances& tol = Tolerances{});

/// Pullback of an observable along a channel: canonical representative of
/// T'(C) at rho.
TangentQ pullback_channel(const Channel& t, const DensityOp& rho,
                          const HermitianOp& c,
                          const Tolerances& tol = Tolerances{});

/// Pushforward of an observable along a channel, by the Riesz solve of
/// <pushforward, G_k>_{T rho} = <A, T'(G_k)>_rho.
TangentQ pushforward_channel(const Channel& t, const DensityOp& rho,
                             const HermitianOp& a,
                             const Tolerances& tol = Tolerances{});

/// Classical pushforward along a stochastic kernel: the conditional
/// expectation f*(j) = sum_i K(j|i) p(i) f(i) / (Kp)(j).
TangentC pushforward_classical(const ClassicalChannel& k, const ProbDist& p,
                               const RealFn& f);

/// Deviations between transporting along a composite channel and chaining
/// the per-link transports. Both are seminorm distances of coefficient
/// vectors, measured at the final (pushforward) and initial (pullback) state.
struct ComposeReport {
  double pushforward_dev;
  double pullback_dev;
  double max_dev;
};

/// Verifies the composition laws on a chain applied left to right. The
/// pullback mirror transports the composite-pushforward representative back.
ComposeReport compose_check(std::span<const Channel> chain, const DensityOp& rho,
                            const HermitianOp& a,
                            const Tolerances& tol = Tolerances{});

}  // namespace uqrel

#endif  // UQREL_TRANSPORT_HPP_
