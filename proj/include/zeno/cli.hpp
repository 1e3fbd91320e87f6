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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zeno/analytic.hpp"
#include "zeno/config.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/errors.hpp"
#include "zeno/experiments.hpp"
#include "zeno/hilbert.hpp"

namespace zeno {

// Command-line driver. Subcommands:
//   simulate  one trajectory -> simulate_<kappa>.csv
//   sweep     kappa grid     -> sweep_grid.csv
//   verify    numeric vs closed form; exit 2 when they disagree > 1e-8
//   spectrum  Jacobi eigenvalues of H vs the dressed-state ladder
// Exit codes: 0 success, 1 validation error, 2 numeric failure.

inline constexpr double kVerifyTolerance = 1e-8;
inline constexpr double kSpectrumTolerance = 1e-10;

namespace detail {

struct CliInvocation {
  std::string config_path;
  std::string out_dir;
  bool quiet = false;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// --out beats the config's output_dir, which beats $ZENO_CAVITY_OUT,
/// which beats the current directory.
inline std::filesystem::path resolve_output_dir(const CliInvocation& inv, const RunConfig& cfg) {
  std::string dir = inv.out_dir;
  if (dir.empty()) dir = cfg.output_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("ZENO_CAVITY_OUT")) dir = env;
  }
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("cannot open output file: " + path.string());
  out << text;
  if (!out) throw NumericError("write failed: " + path.string());
}

inline double require_scalar_kappa(const RunConfig& cfg, const char* sub) {
  if (!cfg.kappa)
    throw ValidationError(std::string(sub) + " requires \"kappa\" (not \"kappa_grid\")");
  return *cfg.kappa;
}

inline int cmd_simulate(const RunConfig& cfg, const CliInvocation& inv) {
  const double kappa = require_scalar_kappa(cfg, "simulate");
  IntegrationReport report;
  const CoherenceTrajectory traj =
      run_trajectory(cfg.params, cfg.t_end, cfg.samples, cfg.path, &report);
  if (!inv.quiet)
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";

  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  const auto file = resolve_output_dir(inv, cfg) / ("simulate_" + short_number(kappa) + ".csv");
  write_text_file(file, csv.str());
  if (!inv.quiet) std::cout << "wrote " << file.string() << "\n";
  return 0;
}

inline int cmd_sweep(const RunConfig& cfg, const CliInvocation& inv) {
  if (cfg.kappa_grid.empty())
    throw ValidationError("sweep requires \"kappa_grid\" (not \"kappa\")");
  const SweepResult sweep = sweep_kappa(cfg.rabi(), cfg.kappa_grid, cfg.t_end, cfg.samples);
  if (!inv.quiet)
    for (std::size_t i = 0; i < sweep.notes.size(); ++i)
      if (!sweep.notes[i].empty())
        std::cerr << "note: kappa = " << short_number(sweep.kappa[i]) << ": "
                  << sweep.notes[i] << "\n";

  std::ostringstream csv;
  write_sweep_csv(csv, sweep);
  const auto file = resolve_output_dir(inv, cfg) / "sweep_grid.csv";
  write_text_file(file, csv.str());
  if (!inv.quiet) std::cout << "wrote " << file.string() << "\n";
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, const CliInvocation& inv) {
  const double kappa = require_scalar_kappa(cfg, "verify");
  if (cfg.path == TrajectoryPath::analytic)
    throw ValidationError("verify requires a numeric path (full or block)");
  IntegrationReport report;
  const CoherenceTrajectory numeric =
      run_trajectory(cfg.params, cfg.t_end, cfg.samples, cfg.path, &report);
  const CoherenceTrajectory analytic =
      run_trajectory(cfg.params, cfg.t_end, cfg.samples, TrajectoryPath::analytic);
  if (!inv.quiet)
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";

  double max_diff = 0.0;
  std::ostringstream csv;
  csv << kUnitsComment << "\n";
  csv << "t,re_numeric,im_numeric,re_analytic,im_analytic,abs_diff\n";
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    const double diff = std::abs(numeric.rho_pm[k] - analytic.rho_pm[k]);
    max_diff = std::max(max_diff, diff);
    csv << csv_number(numeric.t[k]) << ',' << csv_number(numeric.rho_pm[k].real()) << ','
        << csv_number(numeric.rho_pm[k].imag()) << ','
        << csv_number(analytic.rho_pm[k].real()) << ','
        << csv_number(analytic.rho_pm[k].imag()) << ',' << csv_number(diff) << '\n';
  }
  const auto file = resolve_output_dir(inv, cfg) / ("verify_" + short_number(kappa) + ".csv");
  write_text_file(file, csv.str());

  std::cout << "max |numeric - analytic| = " << csv_number(max_diff) << "\n";
  if (max_diff > kVerifyTolerance) {
    std::cerr << "verify FAILED: max difference " << csv_number(max_diff) << " > "
              << csv_number(kVerifyTolerance) << "\n";
    return 2;
  }
  if (!inv.quiet) std::cout << "wrote " << file.string() << "\n";
  return 0;
}

inline int cmd_spectrum(const RunConfig& cfg, const CliInvocation& inv) {
  const double kappa = cfg.kappa ? *cfg.kappa : 0.0;
  const JCParams& p = cfg.params;
  const ComplexMatrix h = build_jc_hamiltonian(p);
  const std::vector<EigenPair> eigen = jacobi_eigen(h);

  auto nearest = [&](double target) {
    double best = eigen.front().value;
    for (const EigenPair& e : eigen)
      if (std::abs(e.value - target) < std::abs(best - target)) best = e.value;
    return best;
  };

  double max_err = 0.0;
  std::ostringstream csv;
  csv << kUnitsComment << "\n";
  csv << "manifold,e_plus_pred,e_minus_pred,e_plus_jacobi,e_minus_jacobi,splitting_error\n";
  for (int k = 1; k <= p.n_max; ++k) {
    const double split = std::sqrt(static_cast<double>(k)) * p.g;
    const double ep_pred = k * p.omega + split;
    const double em_pred = k * p.omega - split;
    const double ep = nearest(ep_pred);
    const double em = nearest(em_pred);
    const double err = std::abs((ep - em) - 2.0 * split);
    max_err = std::max(max_err, err);
    csv << k << ',' << csv_number(ep_pred) << ',' << csv_number(em_pred) << ','
        << csv_number(ep) << ',' << csv_number(em) << ',' << csv_number(err) << '\n';
  }
  const auto file = resolve_output_dir(inv, cfg) / ("spectrum_" + short_number(kappa) + ".csv");
  write_text_file(file, csv.str());

  std::cout << "max splitting error = " << csv_number(max_err) << "\n";
  if (max_err > kSpectrumTolerance) {
    std::cerr << "spectrum FAILED: splitting error " << csv_number(max_err) << " > "
              << csv_number(kSpectrumTolerance) << "\n";
    return 2;
  }
  if (!inv.quiet) std::cout << "wrote " << file.string() << "\n";
  return 0;
}

}  // namespace detail

/// Parses argv (argv[0] is the program name) and runs one subcommand.
/// Returns the process exit code instead of exiting, so tests can drive it
/// in-process.
inline int run_command(int argc, const char* const* argv) {
  CLI::App app{"zeno-cavity: dressed-state decoherence under repeated occupancy measurements"};
  app.require_subcommand(1);

  detail::CliInvocation inv;
  std::string selected;
  const std::pair<const char*, const char*> subs[] = {
      {"simulate", "integrate one trajectory and write its CSV"},
      {"sweep", "scan a kappa grid: rates, regimes, timescales"},
      {"verify", "compare a numeric run against the closed form"},
      {"spectrum", "check the Hamiltonian spectrum with the Jacobi eigensolver"},
  };
  for (const auto& [name, blurb] : subs) {
    CLI::App* sub = app.add_subcommand(name, blurb);
    sub->add_option("--config", inv.config_path, "JSON config file")->required();
    sub->add_option("--out", inv.out_dir, "output directory (overrides config)");
    sub->add_flag("--quiet", inv.quiet, "suppress informational output");
    sub->callback([&selected, name] { selected = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const RunConfig cfg = parse_config(detail::read_file(inv.config_path));
    if (selected == "simulate") return detail::cmd_simulate(cfg, inv);
    if (selected == "sweep") return detail::cmd_sweep(cfg, inv);
    if (selected == "verify") return detail::cmd_verify(cfg, inv);
    return detail::cmd_spectrum(cfg, inv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

inline int run_command(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data());
}

}  // namespace zeno
