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

#include "uqrel/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>

#include "uqrel/scenario.hpp"

namespace uqrel {

namespace {

using nlohmann::json;

double imag_comm_half(const CMatrix& x, const CMatrix& y, const CMatrix& rho) {
  return (x * y * rho).trace().imag();
}

// -----------------------------------------------------------------------
// Sweep configuration
// -----------------------------------------------------------------------

SweepConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config: expected a JSON object");
  SweepConfig cfg;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "mode") {
      if (!v.is_string()) throw ValidationError("config.mode: expected a string");
      cfg.mode = parse_mode(v.get<std::string>());
    } else if (k == "dims") {
      if (!v.is_array() || v.empty()) {
        throw ValidationError("config.dims: expected a non-empty array");
      }
      cfg.dims.clear();
      for (const auto& d : v) {
        if (!d.is_number_integer() || d.get<int>() < 2 || d.get<int>() > 16) {
          throw ValidationError("config.dims: entries must be integers in [2, 16]");
        }
        cfg.dims.push_back(d.get<int>());
      }
    } else if (k == "trials") {
      if (!v.is_number_integer() || v.get<int>() < 1) {
        throw ValidationError("config.trials: expected a positive integer");
      }
      cfg.trials = v.get<int>();
    } else if (k == "seed") {
      if (!v.is_number_unsigned() && !v.is_number_integer()) {
        throw ValidationError("config.seed: expected an unsigned integer");
      }
      cfg.master_seed = v.get<std::uint64_t>();
    } else if (k == "tol") {
      if (!v.is_number() || v.get<double>() <= 0.0) {
        throw ValidationError("config.tol: expected a positive number");
      }
      cfg.tol.num = v.get<double>();
    } else if (k == "format") {
      if (!v.is_string()) throw ValidationError("config.format: expected a string");
      cfg.format = parse_format(v.get<std::string>());
    } else {
      throw ValidationError("config." + k + ": unknown field");
    }
  }
  return cfg;
}

// -----------------------------------------------------------------------
// Property battery
// -----------------------------------------------------------------------

struct PropertyOutcome {
  double max_dev = 0.0;
  std::string worst = "none";

  void track(const char* name, double dev) {
    if (dev > max_dev) {
      max_dev = dev;
      worst = name;
    }
  }
};

PropertyOutcome property_trial(int dim, TrialRng& rng, const Tolerances& tol) {
  PropertyOutcome out;

  DensityOp rho = random_density(dim, rng);
  DensityOp rho2 = random_density(dim, rng);
  HermitianOp a = random_observable(dim, rng);
  HermitianOp b = random_observable(dim, rng);
  int nout = rng.uniform_int(2, dim + 1);
  Instrument ins = random_instrument(dim, dim, nout, rng.uniform_int(1, 2), rng);
  Povm m = ins.induced_povm(tol);
  Channel t{ins.induced_channel(tol)};
  Channel t2{random_channel(dim, dim, rng.uniform_int(1, 2), rng)};
  Povm l = random_povm(dim, rng.uniform_int(2, dim + 1), rng);
  RealFn f = random_fn(m.outcomes(), rng);

  // Processes are affine in the state.
  double lam = rng.uniform();
  DensityOp mix(lam * rho.matrix() + (1.0 - lam) * rho2.matrix(), tol);
  {
    RVector lhs = apply_measurement(m, mix, tol).weights();
    RVector rhs = lam * apply_measurement(m, rho, tol).weights() +
                  (1.0 - lam) * apply_measurement(m, rho2, tol).weights();
    out.track("measurement-affine", (lhs - rhs).cwiseAbs().maxCoeff());
  }
  {
    CMatrix lhs = t.apply(mix, tol).matrix();
    CMatrix rhs = lam * t.apply(rho, tol).matrix() +
                  (1.0 - lam) * t.apply(rho2, tol).matrix();
    out.track("channel-affine", (lhs - rhs).cwiseAbs().maxCoeff());
  }

  // Adjoints are the statistical duals.
  {
    HermitianOp mf = adjoint_measurement(m, f, tol);
    double lhs = expectation(mf.matrix(), rho);
    double rhs = expectation(f, apply_measurement(m, rho, tol));
    out.track("measurement-duality", std::abs(lhs - rhs));
  }
  {
    double lhs = expectation(t.adjoint(b.matrix()), rho);
    double rhs = expectation(b.matrix(), t.apply(rho, tol));
    out.track("channel-duality", std::abs(lhs - rhs));
  }
  {
    ClassicalChannel k =
        random_classical(m.outcomes(), rng.uniform_int(1, m.outcomes() + 1), rng);
    ProbDist p = apply_measurement(m, rho, tol);
    RealFn g = random_fn(k.size_out(), rng);
    double lhs = expectation(adjoint_classical(k, g), p);
    double rhs = expectation(g, apply_classical(k, p, tol));
    out.track("classical-duality", std::abs(lhs - rhs));
  }

  // Unital adjoints contract the seminorms; operator Schwarz inequality.
  {
    RealFn fm(f.values());
    double adj = seminorm_q(adjoint_measurement(m, fm, tol).matrix(), rho.matrix());
    double orig = seminorm_c(fm, apply_measurement(m, rho, tol));
    out.track("measurement-seminorm-contraction", std::max(0.0, adj - orig));
  }
  {
    double adj = seminorm_q(t.adjoint(b.matrix()), rho.matrix());
    double orig = seminorm_q(b.matrix(), t.apply(rho, tol).matrix());
    out.track("channel-seminorm-contraction", std::max(0.0, adj - orig));
  }
  {
    Channel tr{TransferMap::transpose_map(dim)};
    double adj = seminorm_q(tr.adjoint(b.matrix()), rho.matrix());
    double orig = seminorm_q(b.matrix(), tr.apply(rho, tol).matrix());
    out.track("transpose-seminorm-contraction", std::max(0.0, adj - orig));
  }
  {
    CMatrix gap = t.adjoint(b.matrix() * b.matrix()) -
                  t.adjoint(b.matrix()) * t.adjoint(b.matrix());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gap + gap.adjoint()),
                                              Eigen::EigenvaluesOnly);
    out.track("operator-schwarz", std::max(0.0, -es.eigenvalues().minCoeff()));
  }

  // Transport: duality, contraction, composition.
  {
    TangentC pf = pushforward_measurement(m, rho, a, tol);
    double dev = 0.0;
    for (int i = 0; i < m.outcomes(); ++i) {
      dev = std::max(dev, std::abs(pf.values[i] * pf.base[i] -
                                   inner_q(a.matrix(), m.effect(i), rho.matrix())));
    }
    out.track("measurement-pushforward-duality", dev);
    out.track("measurement-pushforward-contraction",
              std::max(0.0, pf.norm - seminorm_q(a, rho)));
  }
  {
    TangentQ pf = pushforward_channel(t, rho, a, tol);
    StateGeometry geom(pf.base, tol);
    double dev = 0.0;
    for (int k = 0; k < geom.basis().size(); ++k) {
      double lhs = inner_q(pf.representative, geom.basis().element(k),
                           pf.base.matrix());
      double rhs = inner_q(a.matrix(), t.adjoint(geom.basis().element(k)),
                           rho.matrix());
      dev = std::max(dev, std::abs(lhs - rhs));
    }
    out.track("channel-pushforward-duality", dev);
    out.track("channel-pushforward-contraction",
              std::max(0.0, pf.norm - seminorm_q(a, rho)));
    TangentQ pb = pullback_channel(t, rho, HermitianOp(pf.representative, tol), tol);
    out.track("pullback-contraction", std::max(0.0, pb.norm - pf.norm));
  }
  {
    std::vector<Channel> chain{t, t2};
    out.track("composition", compose_check(chain, rho, a, tol).max_dev);
  }

  // Disturbance is a seminorm in the observable.
  {
    double eta_a = process_disturbance(a, t, rho, tol);
    double scaled =
        process_disturbance(HermitianOp(2.5 * a.matrix(), tol), t, rho, tol);
    out.track("disturbance-homogeneity", std::abs(scaled - 2.5 * eta_a));
    double eta_b = process_disturbance(b, t, rho, tol);
    double eta_sum = process_disturbance(
        HermitianOp(a.matrix() + b.matrix(), tol), t, rho, tol);
    out.track("disturbance-subadditive", std::max(0.0, eta_sum - eta_a - eta_b));
  }

  // Coarse graining cannot reduce the error.
  {
    ClassicalChannel k =
        random_classical(m.outcomes(), rng.uniform_int(1, m.outcomes()), rng);
    double before = measurement_error(a, m, rho, tol);
    double after = measurement_error(a, postprocess_measurement(k, m, tol), rho, tol);
    out.track("error-monotone-postprocessing", std::max(0.0, before - after));
  }

  // Lifting a function through a joint marginal preserves its seminorm.
  {
    ProbDist joint = joint_distribution(ins, l, rho, tol);
    RealFn f1 = random_fn(ins.outcomes(), rng);
    RVector lift(joint.size());
    for (int i = 0; i < ins.outcomes(); ++i) {
      for (int j = 0; j < l.outcomes(); ++j) lift[i * l.outcomes() + j] = f1[i];
    }
    double lifted = seminorm_c(RealFn(lift), joint);
    double plain = seminorm_c(f1, apply_measurement(m, rho, tol));
    out.track("joint-marginal-isometry", std::abs(lifted - plain));
  }

  // Classical pairs embedded as diagonal quantum objects: the commutation
  // term vanishes and the relation reduces to its classical form.
  {
    ProbDist p = random_dist(dim, rng);
    RealFn ff = random_fn(dim, rng);
    RealFn gg = random_fn(dim, rng);
    ClassicalChannel k1 = random_classical(dim, rng.uniform_int(2, dim + 1), rng);
    ClassicalChannel k2 = random_classical(dim, rng.uniform_int(2, dim + 1), rng);
    CMatrix rho_d = p.weights().cast<Complex>().asDiagonal();
    DensityOp rho_diag(rho_d, tol);
    HermitianOp a_diag(ff.values().cast<Complex>().asDiagonal(), tol);
    HermitianOp b_diag(gg.values().cast<Complex>().asDiagonal(), tol);
    auto diag_povm = [&](const ClassicalChannel& k) {
      std::vector<CMatrix> effects;
      for (int j = 0; j < k.size_out(); ++j) {
        effects.push_back(k.kernel().row(j).cast<Complex>().asDiagonal());
      }
      return Povm(std::move(effects), std::nullopt, tol);
    };
    Povm m1 = diag_povm(k1);
    Povm m2 = diag_povm(k2);
    RVector jw(k1.size_out() * k2.size_out());
    for (int j1 = 0; j1 < k1.size_out(); ++j1) {
      for (int j2 = 0; j2 < k2.size_out(); ++j2) {
        double acc = 0.0;
        for (int i = 0; i < dim; ++i) {
          acc += k1.kernel()(j1, i) * k2.kernel()(j2, i) * p[i];
        }
        jw[j1 * k2.size_out() + j2] = acc;
      }
    }
    BoundTerms bt = bound_terms_joint(a_diag, b_diag, m1, m2, ProbDist(jw, tol),
                                      rho_diag, tol);
    out.track("classical-commutation-vanishes", std::abs(bt.commutation));
    double e1 = measurement_error(a_diag, m1, rho_diag, tol);
    double e2 = measurement_error(b_diag, m2, rho_diag, tol);
    out.track("classical-relation", std::max(0.0, bt.full - e1 * e2));
    out.track("classical-loss-match",
              std::abs(e1 - classical_loss(ff, k1, p, tol)));
  }

  // Null directions are invisible to transport.
  {
    DensityOp psi = random_pure(dim, rng);
    CMatrix ortho = CMatrix::Identity(dim, dim) - psi.matrix();
    CMatrix null_part = ortho * b.matrix() * ortho;
    HermitianOp shifted(a.matrix() + null_part, tol);
    TangentQ pf_a = pushforward_channel(t, psi, a, tol);
    TangentQ pf_shift = pushforward_channel(t, psi, shifted, tol);
    StateGeometry geom(pf_a.base, tol);
    out.track("null-direction-transport", class_distance(geom, pf_a, pf_shift));
    TangentQ ca = canonical_rep(a, psi, tol);
    TangentQ cs = canonical_rep(shifted, psi, tol);
    StateGeometry geom0(psi, tol);
    out.track("null-direction-canonical", class_distance(geom0, ca, cs));
  }

  // The commutation term does not depend on the pullback representative.
  {
    TangentC fa = pushforward_measurement(m, rho, a, tol);
    HermitianOp raw = adjoint_measurement(m, fa.values, tol);
    TangentQ can = pullback_measurement(m, rho, fa.values, tol);
    out.track("commutation-representative-free",
              std::abs(imag_comm_half(raw.matrix() - can.representative,
                                      b.matrix(), rho.matrix())));
  }

  // Measuring after the channel decomposes into disturbance plus residual.
  out.track("error-decomposition", decomposition_check(a, t, l, rho, tol).deviation);

  // The sharp measurement of the transported observable attains the infimum.
  {
    Povm lopt = optimal_secondary(t, b, rho, tol);
    Povm n = compose_measurement_after_channel(lopt, t, tol);
    double attained = measurement_error(b, n, rho, tol);
    double eta = process_disturbance(b, t, rho, tol);
    out.track("infimum-attainment", std::abs(attained - eta));
    double other = measurement_error(b, compose_measurement_after_channel(l, t, tol),
                                     rho, tol);
    out.track("infimum-no-undercut", std::max(0.0, eta - other));
  }

  // Projective processing of an observable leaves transported classes
  // commuting with it.
  {
    Instrument sharp = Instrument::luders(a, tol.spectral);
    Channel ts{sharp.induced_channel(tol)};
    TangentQ pf = pushforward_channel(ts, rho, b, tol);
    TangentQ pb = pullback_channel(ts, rho, HermitianOp(pf.representative, tol), tol);
    out.track("sharp-process-commutation",
              std::abs(imag_comm_half(a.matrix(), pb.representative, rho.matrix())));
  }

  // Equivalent predicate families must agree (true on constructed cases,
  // false on generic ones).
  {
    Povm sharp_a = Povm::projective(a, tol.spectral);
    if (!errorless_predicate(a, sharp_a, rho, tol)) {
      out.track("errorless-predicate-constructed", 1.0);
    }
    errorless_predicate(a, m, rho, tol);  // agreement enforced internally
    Channel ident{KrausChannel::identity(dim)};
    if (!disturbanceless_predicate(a, ident, rho, tol)) {
      out.track("disturbanceless-predicate-constructed", 1.0);
    }
    disturbanceless_predicate(a, t, rho, tol);
  }

  return out;
}

// -----------------------------------------------------------------------
// Per-trial relation runs
// -----------------------------------------------------------------------

OzawaChainReport ozawa_trial(int dim, std::uint64_t master, std::uint64_t index,
                             const Tolerances& tol) {
  TrialRng rng(SeedSpec{master, index});
  DensityOp rho = random_density(dim, rng);
  HermitianOp a = random_observable(dim, rng);
  HermitianOp b = random_observable(dim, rng);
  int nout = rng.uniform_int(2, dim + 1);
  Instrument ins = random_instrument(dim, dim, nout, rng.uniform_int(1, 2), rng);
  ins = ins.with_labels(random_fn(nout, rng).values());
  return ozawa_chain_check(a, b, ins, rho, tol);
}

struct TrialRow {
  RelationReport report;
  bool satisfied = true;
  std::string worst_property;  // properties mode only
};

TrialRow relation_trial(RelationMode mode, int dim, std::uint64_t master,
                        std::uint64_t index, const Tolerances& tol) {
  TrialRow row;
  TrialRng rng(SeedSpec{master, index});
  switch (mode) {
    case RelationMode::errors_joint: {
      DensityOp rho = random_density(dim, rng);
      HermitianOp a = random_observable(dim, rng);
      HermitianOp b = random_observable(dim, rng);
      Instrument ins = random_instrument(dim, dim, rng.uniform_int(2, dim + 1),
                                         rng.uniform_int(1, 2), rng);
      Povm l = random_povm(dim, rng.uniform_int(2, dim + 1), rng);
      row.report = check_relation_errors(a, b, ins, l, rho, tol);
      row.satisfied = row.report.satisfied_full;
      break;
    }
    case RelationMode::error_disturbance: {
      DensityOp rho = random_density(dim, rng);
      HermitianOp a = random_observable(dim, rng);
      HermitianOp b = random_observable(dim, rng);
      Instrument ins = random_instrument(dim, dim, rng.uniform_int(2, dim + 1),
                                         rng.uniform_int(1, 2), rng);
      row.report = check_relation_error_disturbance(a, b, ins, rho, tol);
      row.satisfied = row.report.satisfied_simple;
      break;
    }
    case RelationMode::ozawa_chain: {
      OzawaChainReport oc = ozawa_trial(dim, master, index, tol);
      row.report.dim = dim;
      row.report.mode = RelationMode::ozawa_chain;
      row.report.eps_a = oc.eps_moment;
      row.report.eta_or_eps_b = oc.eta_moment;
      row.report.lhs = oc.eps_moment * oc.eta_moment;
      row.report.bounds = oc.bounds;
      double min_slack = oc.links.front().slack;
      for (const auto& link : oc.links) min_slack = std::min(min_slack, link.slack);
      row.report.slack = min_slack;
      row.report.satisfied_full = row.report.lhs - oc.bounds.full >= -tol.num;
      row.report.satisfied_simple = row.report.lhs - oc.bounds.simple >= -tol.num;
      row.satisfied = oc.all_hold(tol.num);
      break;
    }
    case RelationMode::robertson: {
      DensityOp rho = random_density(dim, rng);
      HermitianOp a = random_observable(dim, rng);
      HermitianOp b = random_observable(dim, rng);
      PreparationReduction pr = robertson_reduction(a, b, rho, tol);
      row.report = pr.report;
      row.satisfied = pr.report.satisfied_full && pr.eps_dev <= tol.num &&
                      pr.bound_dev <= tol.num;
      break;
    }
    case RelationMode::properties: {
      PropertyOutcome po = property_trial(dim, rng, tol);
      row.report.dim = dim;
      row.report.mode = RelationMode::properties;
      row.report.eps_a = po.max_dev;
      row.report.slack = tol.num - po.max_dev;
      row.satisfied = po.max_dev <= tol.num;
      row.report.satisfied_full = row.satisfied;
      row.report.satisfied_simple = row.satisfied;
      row.worst_property = po.worst;
      break;
    }
  }
  row.report.seed = index;
  return row;
}

// -----------------------------------------------------------------------
// Parallel sweep driver
// -----------------------------------------------------------------------

/// Runs `total` jobs with deterministic per-index results, in parallel,
/// rethrowing the lowest-index failure.
template <typename Fn>
void run_indexed(std::uint64_t total, Fn&& fn) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 4;
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, std::max<std::uint64_t>(total, 1)));

  std::atomic<std::uint64_t> next{0};
  std::mutex err_mu;
  std::uint64_t err_index = total;
  std::exception_ptr err;

  auto body = [&] {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

json summary_base(const char* command, const SweepConfig& cfg) {
  return json{{"command", command},
              {"mode", to_string(cfg.mode)},
              {"dims", cfg.dims},
              {"trials_per_dim", cfg.trials},
              {"master_seed", cfg.master_seed},
              {"tol", cfg.tol.num},
              {"format", cfg.format == OutputFormat::csv ? "csv" : "json"}};
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

RunResult run_verify(const SweepConfig& cfg) {
  detail::require(cfg.trials >= 1, "run_verify: trials must be >= 1");
  const std::uint64_t total =
      static_cast<std::uint64_t>(cfg.dims.size()) * cfg.trials;
  std::vector<TrialRow> rows(total);

  run_indexed(total, [&](std::uint64_t i) {
    int dim = cfg.dims[static_cast<size_t>(i / cfg.trials)];
    rows[i] = relation_trial(cfg.mode, dim, cfg.master_seed, i, cfg.tol);
  });

  std::uint64_t violations = 0;
  double min_slack = rows.empty() ? 0.0 : rows[0].report.slack;
  std::string worst_property = "none";
  double worst_dev = -1.0;
  for (const auto& r : rows) {
    if (!r.satisfied) ++violations;
    min_slack = std::min(min_slack, r.report.slack);
    if (cfg.mode == RelationMode::properties && r.report.eps_a > worst_dev) {
      worst_dev = r.report.eps_a;
      worst_property = r.worst_property;
    }
  }

  std::string body;
  if (cfg.format == OutputFormat::csv) {
    body = report_csv_header();
    for (const auto& r : rows) body += report_csv_row(r.report, r.satisfied);
  } else {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(report_json(r.report, r.satisfied));
    body = arr.dump();
    body += '\n';
  }

  json summary = summary_base("verify", cfg);
  summary["rows"] = total;
  summary["violations"] = violations;
  summary["min_slack"] = min_slack;
  if (cfg.mode == RelationMode::properties) {
    summary["worst_property"] = worst_property;
    summary["max_deviation"] = worst_dev;
  }
  int exit_code = violations == 0 ? 0 : 2;
  summary["exit_code"] = exit_code;
  return RunResult{std::move(body), summary.dump() + "\n", exit_code};
}

RunResult run_compare(const SweepConfig& cfg) {
  detail::require(cfg.trials >= 1, "run_compare: trials must be >= 1");
  const std::uint64_t total =
      static_cast<std::uint64_t>(cfg.dims.size()) * cfg.trials;
  std::vector<OzawaChainReport> rows(total);

  run_indexed(total, [&](std::uint64_t i) {
    int dim = cfg.dims[static_cast<size_t>(i / cfg.trials)];
    rows[i] = ozawa_trial(dim, cfg.master_seed, i, cfg.tol);
  });

  std::uint64_t violations = 0;
  for (const auto& r : rows) {
    if (!r.all_hold(cfg.tol.num)) ++violations;
  }

  std::string body;
  if (cfg.format == OutputFormat::csv) {
    body = compare_csv_header();
    for (std::uint64_t i = 0; i < total; ++i) {
      int dim = cfg.dims[static_cast<size_t>(i / cfg.trials)];
      body += compare_csv_row(i, dim, rows[i], cfg.tol.num);
    }
  } else {
    json arr = json::array();
    for (std::uint64_t i = 0; i < total; ++i) {
      int dim = cfg.dims[static_cast<size_t>(i / cfg.trials)];
      arr.push_back(compare_json(i, dim, rows[i], cfg.tol.num));
    }
    body = arr.dump();
    body += '\n';
  }

  json summary = summary_base("compare", cfg);
  summary["rows"] = total;
  summary["violations"] = violations;
  int exit_code = violations == 0 ? 0 : 2;
  summary["exit_code"] = exit_code;
  return RunResult{std::move(body), summary.dump() + "\n", exit_code};
}

// -----------------------------------------------------------------------
// Demos
// -----------------------------------------------------------------------

namespace {

struct DemoLine {
  std::string quantity;
  double value;
  double reference;
  // Square-root outputs (errors, disturbances, seminorms and their
  // products) resolve only to the root of the tolerance near zero, so
  // their drift is judged on the squared scale.
  bool squared = false;
};

RunResult render_demo(const std::string& name, const std::vector<DemoLine>& lines,
                      OutputFormat format, const Tolerances& tol) {
  std::string drifted;
  std::string body;
  json arr = json::array();
  if (format == OutputFormat::csv) {
    body = "# uqrel-demo v1\nquantity,value,reference,within\n";
  }
  for (const auto& l : lines) {
    double drift = l.squared
                       ? std::abs(l.value * l.value - l.reference * l.reference)
                       : std::abs(l.value - l.reference);
    bool within = drift <= tol.num;
    if (!within) {
      drifted += " " + l.quantity + "=" + format_double(l.value) +
                 " (reference " + format_double(l.reference) + ")";
    }
    if (format == OutputFormat::csv) {
      body += l.quantity + ',' + format_double(l.value) + ',' +
              format_double(l.reference) + (within ? ",1\n" : ",0\n");
    } else {
      arr.push_back({{"quantity", l.quantity},
                     {"value", l.value},
                     {"reference", l.reference},
                     {"within", within}});
    }
  }
  if (format == OutputFormat::json) {
    body = arr.dump();
    body += '\n';
  }
  if (!drifted.empty()) {
    throw NumericalError("demo '" + name +
                         "' drifted from its closed-form references:" + drifted);
  }
  json summary{{"command", "demo"}, {"name", name}, {"lines", lines.size()},
               {"exit_code", 0}};
  return RunResult{std::move(body), summary.dump() + "\n", 0};
}

std::vector<DemoLine> demo_luders_xy(const Tolerances& tol) {
  CMatrix sx(2, 2), sy(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  HermitianOp a(sx), b(sy);
  CVector e0(2);
  e0 << 1, 0;
  DensityOp rho = DensityOp::pure(e0);

  Instrument ins = Instrument::luders(a, tol.spectral);
  Povm m = ins.induced_povm(tol);
  Channel t{ins.induced_channel(tol)};
  ProbDist p = apply_measurement(m, rho, tol);
  TangentC pf_a = pushforward_measurement(m, rho, a, tol);
  DensityOp post = t.apply(rho, tol);
  TangentQ pf_b = pushforward_channel(t, rho, b, tol);
  TangentQ pb_b = pullback_channel(t, rho, HermitianOp(pf_b.representative), tol);
  TangentQ pb_a = pullback_measurement(m, rho, pf_a.values, tol);
  RelationReport rep = check_relation_error_disturbance(a, b, ins, rho, tol);

  return {
      {"outcome_prob_plus", p[0], 0.5},
      {"outcome_prob_minus", p[1], 0.5},
      {"pushforward_A_plus", pf_a.values[0], 1.0},
      {"pushforward_A_minus", pf_a.values[1], -1.0},
      {"error_A", rep.eps_a, 0.0, true},
      {"post_state_purity", (post.matrix() * post.matrix()).trace().real(), 0.5},
      {"pushforward_B_norm", pf_b.norm, 0.0, true},
      {"disturbance_B", rep.eta_or_eps_b, 1.0, true},
      {"comm_raw", imag_comm_half(a.matrix(), b.matrix(), rho.matrix()), 1.0},
      {"comm_measurement_leg",
       imag_comm_half(pb_a.representative, b.matrix(), rho.matrix()), 1.0},
      {"comm_channel_leg",
       imag_comm_half(a.matrix(), pb_b.representative, rho.matrix()), 0.0},
      {"commutation_bound", rep.bounds.simple, 0.0},
      {"lhs", rep.lhs, 0.0, true},
      {"satisfied", rep.satisfied_simple ? 1.0 : 0.0, 1.0},
  };
}

std::vector<DemoLine> demo_naive_violation(const Tolerances& tol) {
  NoFreeMeasurement nf = no_free_measurement_demo(2, tol);
  return {
      {"error_A", nf.report.eps_a, 0.0, true},
      {"disturbance_B", nf.eta, 1.0, true},
      {"lhs", nf.report.lhs, 0.0, true},
      {"naive_bound", nf.naive_bound, 1.0},
      {"commutation_bound", nf.report.bounds.simple, 0.0},
      {"satisfied", nf.report.satisfied_simple ? 1.0 : 0.0, 1.0},
      {"naive_violated", nf.report.lhs < nf.naive_bound - tol.num ? 1.0 : 0.0, 1.0},
  };
}

std::vector<DemoLine> demo_schrodinger_equality(const Tolerances& tol) {
  CMatrix sx(2, 2), sy(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  CVector e0(2);
  e0 << 1, 0;
  DensityOp rho = DensityOp::pure(e0);
  PreparationReduction pr =
      robertson_reduction(HermitianOp(sx), HermitianOp(sy), rho, tol);
  return {
      {"sigma_A", pr.sigma_a, 1.0, true},
      {"sigma_B", pr.sigma_b, 1.0, true},
      {"eps_A", pr.eps_a, 1.0, true},
      {"eps_B", pr.eps_b, 1.0, true},
      {"cov_sym", pr.cov_sym, 0.0},
      {"comm_half", pr.comm_half, 1.0},
      {"moment_bound", pr.moment_bound, 1.0},
      {"bound_full", pr.bounds.full, 1.0},
      {"lhs", pr.report.lhs, 1.0},
      {"equality_gap", std::abs(pr.report.lhs - pr.bounds.full), 0.0},
      {"eps_dev", pr.eps_dev, 0.0},
      {"bound_dev", pr.bound_dev, 0.0},
  };
}

std::vector<DemoLine> demo_transpose_map(const Tolerances& tol) {
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  CMatrix rho_m = 0.5 * (CMatrix::Identity(2, 2) + 0.3 * sx + 0.2 * sy + 0.4 * sz);
  DensityOp rho(rho_m, tol);
  HermitianOp b(sy);
  Channel t{TransferMap::transpose_map(2)};

  DensityOp post = t.apply(rho, tol);
  Eigen::SelfAdjointEigenSolver<CMatrix> es_post(post.matrix(),
                                                 Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<CMatrix> es_choi(choi_matrix(t),
                                                 Eigen::EigenvaluesOnly);
  TangentQ pf = pushforward_channel(t, rho, b, tol);
  StateGeometry geom(post, tol);
  double duality_dev = 0.0;
  for (int k = 0; k < geom.basis().size(); ++k) {
    double lhs = inner_q(pf.representative, geom.basis().element(k), post.matrix());
    double rhs = inner_q(b.matrix(), t.adjoint(geom.basis().element(k)), rho.matrix());
    duality_dev = std::max(duality_dev, std::abs(lhs - rhs));
  }

  return {
      {"output_min_eig", es_post.eigenvalues().minCoeff(),
       0.5 * (1.0 - std::sqrt(0.29))},
      {"choi_min_eig", es_choi.eigenvalues().minCoeff(), -1.0},
      {"contraction_gap",
       std::max(0.0, seminorm_q(t.adjoint(b.matrix()), rho.matrix()) -
                         seminorm_q(b.matrix(), post.matrix())),
       0.0},
      {"pushforward_y_coeff", pf.coeffs[2], -std::sqrt(2.0)},
      {"disturbance_B", process_disturbance(b, t, rho, tol), 0.0, true},
      {"moment_disturbance", ozawa_disturbance(b, t, rho, tol), 2.0, true},
      {"duality_residual", duality_dev, 0.0},
      {"disturbanceless", disturbanceless_predicate(b, t, rho, tol) ? 1.0 : 0.0,
       1.0},
  };
}

}  // namespace

RunResult run_demo(const std::string& name, OutputFormat format,
                   const Tolerances& tol) {
  if (name == "luders-xy") return render_demo(name, demo_luders_xy(tol), format, tol);
  if (name == "naive-violation") {
    return render_demo(name, demo_naive_violation(tol), format, tol);
  }
  if (name == "schrodinger-equality") {
    return render_demo(name, demo_schrodinger_equality(tol), format, tol);
  }
  if (name == "transpose-map") {
    return render_demo(name, demo_transpose_map(tol), format, tol);
  }
  throw ValidationError("unknown demo '" + name +
                        "' (expected luders-xy, naive-violation, "
                        "schrodinger-equality, or transpose-map)");
}

// -----------------------------------------------------------------------
// Single cases
// -----------------------------------------------------------------------

RunResult run_case(const std::string& scenario_json, OutputFormat format) {
  Scenario s = parse_scenario_text(scenario_json);
  const Tolerances& tol = s.tol;
  RelationReport rep;
  bool satisfied = true;
  json extra;

  switch (s.mode) {
    case RelationMode::errors_joint: {
      detail::require(s.instrument.has_value(),
                      "errors-joint mode requires an instrument");
      detail::require(s.secondary.has_value(),
                      "errors-joint mode requires secondary_povm");
      detail::require(!s.transfer.has_value(),
                      "errors-joint mode uses the instrument's own channel; "
                      "remove transfer_map");
      rep = check_relation_errors(*s.a, *s.b, *s.instrument, *s.secondary, *s.rho,
                                  tol);
      satisfied = rep.satisfied_full;
      break;
    }
    case RelationMode::error_disturbance: {
      detail::require(s.instrument.has_value(),
                      "error-disturbance mode requires an instrument");
      if (s.transfer) {
        // Override: evaluate the disturbance leg through the given
        // coordinate map. The guarantee only covers the induced pair, so a
        // violated bound here is reported, not masked.
        Povm m = s.instrument->induced_povm(tol);
        Channel t{*s.transfer};
        double eps = measurement_error(*s.a, m, *s.rho, tol);
        double eta = process_disturbance(*s.b, t, *s.rho, tol);
        double comm =
            bound_commutation_error_disturbance(*s.a, *s.b, m, t, *s.rho, tol);
        rep.dim = s.dim;
        rep.mode = s.mode;
        rep.eps_a = eps;
        rep.eta_or_eps_b = eta;
        rep.lhs = eps * eta;
        rep.bounds = make_bound_terms(0.0, comm);
        rep.slack = rep.lhs - rep.bounds.simple;
        rep.satisfied_full = rep.lhs - rep.bounds.full >= -tol.num;
        rep.satisfied_simple = rep.lhs - rep.bounds.simple >= -tol.num;
        extra["transfer_override"] = true;
      } else {
        rep = check_relation_error_disturbance(*s.a, *s.b, *s.instrument, *s.rho,
                                               tol);
      }
      satisfied = rep.satisfied_simple;
      break;
    }
    case RelationMode::ozawa_chain: {
      detail::require(s.instrument.has_value(),
                      "ozawa-chain mode requires an instrument");
      detail::require(s.instrument->has_labels(),
                      "ozawa-chain mode requires instrument labels");
      detail::require(!s.transfer.has_value(),
                      "ozawa-chain mode uses the instrument's own channel; "
                      "remove transfer_map");
      OzawaChainReport oc = ozawa_chain_check(*s.a, *s.b, *s.instrument, *s.rho, tol);
      rep.dim = s.dim;
      rep.mode = s.mode;
      rep.eps_a = oc.eps_moment;
      rep.eta_or_eps_b = oc.eta_moment;
      rep.lhs = oc.eps_moment * oc.eta_moment;
      rep.bounds = oc.bounds;
      double min_slack = oc.links.front().slack;
      json links = json::array();
      for (const auto& link : oc.links) {
        min_slack = std::min(min_slack, link.slack);
        links.push_back({{"name", link.name}, {"lhs", link.lhs}, {"rhs", link.rhs},
                         {"slack", link.slack}});
      }
      rep.slack = min_slack;
      rep.satisfied_full = rep.lhs - oc.bounds.full >= -tol.num;
      rep.satisfied_simple = rep.lhs - oc.bounds.simple >= -tol.num;
      satisfied = oc.all_hold(tol.num);
      extra["links"] = links;
      break;
    }
    case RelationMode::robertson: {
      PreparationReduction pr = robertson_reduction(*s.a, *s.b, *s.rho, tol);
      rep = pr.report;
      satisfied = pr.report.satisfied_full && pr.eps_dev <= tol.num &&
                  pr.bound_dev <= tol.num;
      extra["eps_dev"] = pr.eps_dev;
      extra["bound_dev"] = pr.bound_dev;
      extra["moment_bound"] = pr.moment_bound;
      break;
    }
    case RelationMode::properties: {
      detail::require(s.instrument.has_value() || s.transfer.has_value(),
                      "properties mode requires an instrument or transfer_map");
      Channel t = s.transfer ? Channel{*s.transfer}
                             : Channel{s.instrument->induced_channel(tol)};
      Povm l = s.secondary ? *s.secondary : optimal_secondary(t, *s.a, *s.rho, tol);
      DecompositionReport dc = decomposition_check(*s.a, t, l, *s.rho, tol);
      double dev = dc.deviation;
      TangentQ pf = pushforward_channel(t, *s.rho, *s.a, tol);
      StateGeometry geom(pf.base, tol);
      for (int k = 0; k < geom.basis().size(); ++k) {
        double lhs =
            inner_q(pf.representative, geom.basis().element(k), pf.base.matrix());
        double rhs = inner_q(s.a->matrix(), t.adjoint(geom.basis().element(k)),
                             s.rho->matrix());
        dev = std::max(dev, std::abs(lhs - rhs));
      }
      rep.dim = s.dim;
      rep.mode = s.mode;
      rep.eps_a = dev;
      rep.slack = tol.num - dev;
      satisfied = dev <= tol.num;
      rep.satisfied_full = satisfied;
      rep.satisfied_simple = satisfied;
      extra["decomposition_deviation"] = dc.deviation;
      break;
    }
  }

  std::string body;
  if (format == OutputFormat::csv) {
    body = report_csv_header() + report_csv_row(rep, satisfied);
  } else {
    body = report_json(rep, satisfied).dump();
    body += '\n';
  }
  int exit_code = satisfied ? 0 : 2;
  json summary{{"command", "case"},
               {"mode", to_string(s.mode)},
               {"dim", s.dim},
               {"satisfied", satisfied},
               {"exit_code", exit_code}};
  if (!extra.is_null()) summary["detail"] = extra;
  return RunResult{std::move(body), summary.dump() + "\n", exit_code};
}

}  // namespace uqrel
