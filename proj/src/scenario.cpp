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

#include "uqrel/scenario.hpp"

#include <utility>
#include <vector>

namespace uqrel {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double parse_real(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int parse_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

Complex parse_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(path, "expected a complex entry as [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

CMatrix parse_cmatrix(const json& j, const std::string& path, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    fail(path, "expected " + std::to_string(rows) + " matrix rows");
  }
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    std::string rpath = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      fail(rpath, "expected a matrix row of " + std::to_string(cols) +
                      " [re, im] pairs");
    }
    for (int c = 0; c < cols; ++c) {
      m(r, c) = parse_complex(row[c], rpath + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

RMatrix parse_rmatrix(const json& j, const std::string& path, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    fail(path, "expected " + std::to_string(rows) + " rows");
  }
  RMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    std::string rpath = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      fail(rpath, "expected a row of " + std::to_string(cols) + " numbers");
    }
    for (int c = 0; c < cols; ++c) {
      m(r, c) = parse_real(row[c], rpath + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

RVector parse_rvector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
  RVector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    v[static_cast<int>(i)] = parse_real(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Tolerances parse_tolerances(const json& j, const std::string& path) {
  Tolerances tol;
  if (!j.is_object()) fail(path, "expected an object of tolerance overrides");
  for (auto it = j.begin(); it != j.end(); ++it) {
    double v = parse_real(it.value(), path + "." + it.key());
    if (v <= 0.0) fail(path + "." + it.key(), "tolerances must be positive");
    if (it.key() == "herm") tol.herm = v;
    else if (it.key() == "trace") tol.trace = v;
    else if (it.key() == "psd") tol.psd = v;
    else if (it.key() == "num") tol.num = v;
    else if (it.key() == "gram_cutoff") tol.gram_cutoff = v;
    else if (it.key() == "spectral") tol.spectral = v;
    else fail(path + "." + it.key(), "unknown tolerance key");
  }
  return tol;
}

template <typename Build>
auto rewrap(const std::string& path, Build build) -> decltype(build()) {
  // Structural validation errors from the constructors get the field path
  // prepended so CLI users see where in the document the problem sits.
  try {
    return build();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) fail("scenario", "expected a JSON object");
  Scenario s;
  s.dim = parse_int(member(doc, "scenario", "dim"), "dim");
  if (s.dim < 2) fail("dim", "expected dim >= 2");
  if (doc.contains("tolerances")) {
    s.tol = parse_tolerances(doc["tolerances"], "tolerances");
  }
  const json& mode_field = member(doc, "scenario", "mode");
  if (!mode_field.is_string()) fail("mode", "expected a string");
  s.mode = rewrap("mode", [&] { return parse_mode(mode_field.get<std::string>()); });

  const int d = s.dim;
  s.rho = rewrap("rho", [&] {
    return DensityOp(parse_cmatrix(member(doc, "scenario", "rho"), "rho", d, d),
                     s.tol);
  });

  const json& obs = member(doc, "scenario", "observables");
  s.a = rewrap("observables.A", [&] {
    return HermitianOp(
        parse_cmatrix(member(obs, "observables", "A"), "observables.A", d, d),
        s.tol);
  });
  s.b = rewrap("observables.B", [&] {
    return HermitianOp(
        parse_cmatrix(member(obs, "observables", "B"), "observables.B", d, d),
        s.tol);
  });

  if (doc.contains("instrument")) {
    const json& ins = doc["instrument"];
    if (!ins.is_array() || ins.empty()) {
      fail("instrument", "expected a non-empty array of Kraus branches");
    }
    std::vector<std::vector<CMatrix>> branches;
    for (size_t i = 0; i < ins.size(); ++i) {
      std::string bpath = "instrument[" + std::to_string(i) + "]";
      const json& br = ins[i];
      if (!br.is_array() || br.empty()) {
        fail(bpath, "expected a non-empty array of Kraus matrices");
      }
      std::vector<CMatrix> ops;
      for (size_t k = 0; k < br.size(); ++k) {
        ops.push_back(
            parse_cmatrix(br[k], bpath + "[" + std::to_string(k) + "]", d, d));
      }
      branches.push_back(std::move(ops));
    }
    std::optional<RVector> labels;
    if (doc.contains("labels")) labels = parse_rvector(doc["labels"], "labels");
    s.instrument = rewrap("instrument", [&] {
      return Instrument(std::move(branches), std::move(labels), s.tol);
    });
  }

  if (doc.contains("secondary_povm")) {
    const json& sec = doc["secondary_povm"];
    const json& eff = member(sec, "secondary_povm", "effects");
    if (!eff.is_array() || eff.empty()) {
      fail("secondary_povm.effects", "expected a non-empty array of matrices");
    }
    std::vector<CMatrix> effects;
    for (size_t i = 0; i < eff.size(); ++i) {
      effects.push_back(parse_cmatrix(
          eff[i], "secondary_povm.effects[" + std::to_string(i) + "]", d, d));
    }
    std::optional<RVector> labels;
    if (sec.contains("labels")) {
      labels = parse_rvector(sec["labels"], "secondary_povm.labels");
    }
    s.secondary = rewrap("secondary_povm", [&] {
      return Povm(std::move(effects), std::move(labels), s.tol);
    });
  }

  if (doc.contains("transfer_map")) {
    const json& tm = doc["transfer_map"];
    int din = tm.contains("dim_in")
                  ? parse_int(tm["dim_in"], "transfer_map.dim_in")
                  : d;
    int dout = tm.contains("dim_out")
                   ? parse_int(tm["dim_out"], "transfer_map.dim_out")
                   : d;
    RMatrix coeffs = parse_rmatrix(member(tm, "transfer_map", "coeffs"),
                                   "transfer_map.coeffs", dout * dout, din * din);
    s.transfer = rewrap("transfer_map", [&] {
      return TransferMap(din, dout, std::move(coeffs), s.tol);
    });
  }

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    if (k != "dim" && k != "mode" && k != "rho" && k != "observables" &&
        k != "instrument" && k != "labels" && k != "secondary_povm" &&
        k != "transfer_map" && k != "tolerances") {
      fail(k, "unknown field");
    }
  }
  return s;
}

Scenario parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario: invalid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace uqrel
