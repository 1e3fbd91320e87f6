// Copyright 2026 The zeno-cavity Authors
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

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zeno/errors.hpp"
#include "zeno/experiments.hpp"
#include "zeno/hilbert.hpp"

namespace zeno {

/// A validated run configuration. Physics is specified either directly
/// through the Rabi frequency R (then n = 1, omega defaults to 1e4 and g is
/// chosen as R/2), or through omega, g and n; the two forms are mutually
/// exclusive. Exactly one of `kappa` (single run) and `kappa_grid` (sweep)
/// is present. All computations driven by a config are deterministic.
struct RunConfig {
  JCParams params;  ///< kappa field filled from `kappa`, or 0 for sweeps
  std::optional<double> kappa;
  std::vector<double> kappa_grid;
  double t_end = 0.1;
  int samples = 1000;
  TrajectoryPath path = TrajectoryPath::full;
  std::string output_dir;

  double rabi() const { return params.rabi(); }
};

namespace detail {

inline double finite_number(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number())
    throw ValidationError("config: key \"" + key + "\" must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw ValidationError("config: key \"" + key + "\" is not finite");
  return v;
}

inline int integer_number(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number_integer())
    throw ValidationError("config: key \"" + key + "\" must be an integer");
  return j.get<int>();
}

}  // namespace detail

/// Parses and validates a JSON run configuration. The schema is closed:
/// unknown keys are rejected so a typo cannot silently fall back to a
/// default.
inline RunConfig parse_config(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config: top level must be a JSON object");

  static const std::vector<std::string> kAllowed = {
      "R", "omega", "g", "n", "kappa", "kappa_grid", "t_end", "samples", "path", "output_dir"};
  for (const auto& item : j.items()) {
    bool known = false;
    for (const std::string& k : kAllowed) known = known || k == item.key();
    if (!known) throw ValidationError("config: unknown key \"" + item.key() + "\"");
  }

  RunConfig cfg;

  const bool has_r = j.contains("R");
  const bool has_derived = j.contains("omega") || j.contains("g") || j.contains("n");
  if (has_r && has_derived)
    throw ValidationError("config: \"R\" is mutually exclusive with \"omega\"/\"g\"/\"n\"");
  if (has_r) {
    const double r = detail::finite_number(j["R"], "R");
    if (!(r > 0.0)) throw ValidationError("config: \"R\" must be > 0");
    cfg.params = JCParams::from_rabi(r, 0.0);
  } else {
    if (!j.contains("g")) throw ValidationError("config: missing required key \"g\" (or \"R\")");
    if (!j.contains("n")) throw ValidationError("config: missing required key \"n\" (or \"R\")");
    JCParams p;
    p.omega = j.contains("omega") ? detail::finite_number(j["omega"], "omega") : 1.0e4;
    p.g = detail::finite_number(j["g"], "g");
    p.n = detail::integer_number(j["n"], "n");
    p.n_max = p.n + 2;
    p.kappa = 0.0;
    p.validate();
    cfg.params = p;
  }

  const bool has_kappa = j.contains("kappa");
  const bool has_grid = j.contains("kappa_grid");
  if (has_kappa == has_grid)
    throw ValidationError("config: exactly one of \"kappa\" and \"kappa_grid\" is required");
  if (has_kappa) {
    const double k = detail::finite_number(j["kappa"], "kappa");
    if (k < 0.0) throw ValidationError("config: \"kappa\" must be >= 0");
    cfg.kappa = k;
    cfg.params.kappa = k;
    cfg.params.validate();
  } else {
    if (!j["kappa_grid"].is_array() || j["kappa_grid"].empty())
      throw ValidationError("config: \"kappa_grid\" must be a non-empty array");
    for (const auto& item : j["kappa_grid"]) {
      const double k = detail::finite_number(item, "kappa_grid");
      if (k < 0.0) throw ValidationError("config: \"kappa_grid\" values must be >= 0");
      cfg.kappa_grid.push_back(k);
    }
  }

  if (j.contains("t_end")) {
    cfg.t_end = detail::finite_number(j["t_end"], "t_end");
    if (!(cfg.t_end > 0.0)) throw ValidationError("config: \"t_end\" must be > 0");
  }
  if (j.contains("samples")) {
    cfg.samples = detail::integer_number(j["samples"], "samples");
    if (cfg.samples < 2) throw ValidationError("config: \"samples\" must be >= 2");
  }
  if (j.contains("path")) {
    if (!j["path"].is_string()) throw ValidationError("config: \"path\" must be a string");
    const std::string s = j["path"].get<std::string>();
    if (s == "full") cfg.path = TrajectoryPath::full;
    else if (s == "block") cfg.path = TrajectoryPath::block;
    else if (s == "analytic") cfg.path = TrajectoryPath::analytic;
    else throw ValidationError("config: \"path\" must be one of full/block/analytic");
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string())
      throw ValidationError("config: \"output_dir\" must be a string");
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  return cfg;
}

}  // namespace zeno
