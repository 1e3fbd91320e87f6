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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "zeno/analytic.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/errors.hpp"
#include "zeno/hilbert.hpp"

namespace zeno {

// Experiment drivers: single trajectories over any of the three evaluation
// paths, exponential-mode extraction from sampled coherence, kappa sweeps,
// figure-style curve sets, and deterministic CSV emission.

enum class TrajectoryPath { full, block, analytic };

inline const char* path_name(TrajectoryPath p) {
  switch (p) {
    case TrajectoryPath::full: return "full";
    case TrajectoryPath::block: return "block";
    case TrajectoryPath::analytic: return "analytic";
  }
  return "?";
}

/// Uniformly sampled trajectory from the symmetric initial condition over
/// [0, t_end], via the selected evaluation path. Numeric paths choose the
/// step count from the max(R, kappa) * h <= 0.05 rule.
inline CoherenceTrajectory run_trajectory(const JCParams& p, double t_end, int samples,
                                          TrajectoryPath path,
                                          IntegrationReport* report = nullptr) {
  p.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw ValidationError("run_trajectory: t_end must be > 0");
  if (samples < 2) throw ValidationError("run_trajectory: samples must be >= 2");

  if (path == TrajectoryPath::analytic) {
    const double rabi = p.rabi();
    CoherenceTrajectory traj;
    traj.source = TrajectorySource::analytic;
    traj.t.reserve(samples);
    for (int k = 0; k < samples; ++k) {
      const double t = t_end * static_cast<double>(k) / static_cast<double>(samples - 1);
      traj.t.push_back(t);
      traj.rho_pm.push_back(coherence_closed_form(t, rabi, p.kappa));
      const auto [pp, mm] = populations_closed_form(t);
      traj.rho_pp.push_back(pp);
      traj.rho_mm.push_back(mm);
    }
    return traj;
  }

  const long steps = required_steps(p, t_end, samples);
  if (path == TrajectoryPath::full)
    return integrate_full(p, paper_initial_state(p), 0.0, t_end, steps, samples, report);
  return integrate_block(p, initial_block(), 0.0, t_end, steps, samples, report);
}

/// Configuration of the linear-prediction fit. The model order is fixed at
/// two modes (the coherence is exactly a two-exponential signal away from
/// the critical coupling).
struct FitConfig {
  int num_modes = 2;
  int sample_count = 200;
  int start_index = 0;

  void validate() const {
    if (num_modes != 2) throw ValidationError("FitConfig: num_modes is fixed at 2");
    if (sample_count < 8 || sample_count < 2 * num_modes + 2)
      throw ValidationError("FitConfig: sample_count must be >= 8");
    if (start_index < 0) throw ValidationError("FitConfig: start_index must be >= 0");
  }
};

/// Fitted continuous-time mode rates, ordered like ModeRates (fast has the
/// more negative real part; near-ties are broken by imaginary part). When
/// the signal carries only one resolvable exponential, the second mode is
/// flagged spurious and `fast` is NaN.
struct ModeFit {
  Complex fast{std::numeric_limits<double>::quiet_NaN(),
               std::numeric_limits<double>::quiet_NaN()};
  Complex slow{};
  bool fast_spurious = false;
};

namespace detail {

/// Least squares min ||[c0 c1] x - b|| for two complex columns, by
/// Householder QR. Also reports the singular values of [c0 c1] so callers
/// can detect rank deficiency. Columns are modified in place.
struct TwoColumnLs {
  Complex x0, x1;
  double sigma_max = 0.0, sigma_min = 0.0;
};

inline void apply_reflector(const std::vector<Complex>& v, double vnorm2,
                            std::vector<Complex>& x, std::size_t from) {
  Complex dot{};
  for (std::size_t i = from; i < x.size(); ++i) dot += std::conj(v[i]) * x[i];
  const Complex f = 2.0 * dot / vnorm2;
  for (std::size_t i = from; i < x.size(); ++i) x[i] -= f * v[i];
}

inline TwoColumnLs solve_two_column_ls(std::vector<Complex> c0, std::vector<Complex> c1,
                                       std::vector<Complex> b) {
  const std::size_t m = c0.size();
  if (m < 2 || c1.size() != m || b.size() != m)
    throw ValidationError("solve_two_column_ls: bad shapes");

  auto column_norm = [](const std::vector<Complex>& v, std::size_t from) {
    double s = 0.0;
    for (std::size_t i = from; i < v.size(); ++i) s += std::norm(v[i]);
    return std::sqrt(s);
  };

  // reflector 1: map c0 to alpha0 * e0
  const double n0 = column_norm(c0, 0);
  Complex r00(0.0, 0.0), r01(0.0, 0.0), r11(0.0, 0.0);
  if (n0 > 0.0) {
    const Complex phase0 = c0[0] == Complex{} ? Complex(1.0, 0.0) : c0[0] / std::abs(c0[0]);
    const Complex alpha0 = -phase0 * n0;
    std::vector<Complex> v = c0;
    v[0] -= alpha0;
    double vn2 = 0.0;
    for (Complex z : v) vn2 += std::norm(z);
    if (vn2 > 0.0) {
      apply_reflector(v, vn2, c1, 0);
      apply_reflector(v, vn2, b, 0);
    }
    r00 = alpha0;
  }
  r01 = c1[0];
  // reflector 2: on the tail of c1
  const double n1 = column_norm(c1, 1);
  if (n1 > 0.0) {
    const Complex phase1 = c1[1] == Complex{} ? Complex(1.0, 0.0) : c1[1] / std::abs(c1[1]);
    const Complex alpha1 = -phase1 * n1;
    std::vector<Complex> v(m, Complex{});
    for (std::size_t i = 1; i < m; ++i) v[i] = c1[i];
    v[1] -= alpha1;
    double vn2 = 0.0;
    for (Complex z : v) vn2 += std::norm(z);
    if (vn2 > 0.0) apply_reflector(v, vn2, b, 1);
    r11 = alpha1;
  }

  TwoColumnLs out;
  // singular values of R = [[r00, r01], [0, r11]] via its 2x2 Gram matrix
  const double g11 = std::norm(r00);
  const double g22 = std::norm(r01) + std::norm(r11);
  const double g12 = std::abs(std::conj(r00) * r01);
  const double tr = g11 + g22;
  const double gap = std::sqrt(std::max(0.0, (g11 - g22) * (g11 - g22) + 4.0 * g12 * g12));
  out.sigma_max = std::sqrt(std::max(0.0, 0.5 * (tr + gap)));
  out.sigma_min = std::sqrt(std::max(0.0, 0.5 * (tr - gap)));

  if (r11 == Complex{} || r00 == Complex{}) {
    out.x0 = out.x1 = Complex{};
    return out;  // rank deficient; caller falls back on sigma_min
  }
  out.x1 = b[1] / r11;
  out.x0 = (b[0] - r01 * out.x1) / r00;
  return out;
}

inline bool real_parts_tie(Complex a, Complex b) {
  const double scale = std::max(std::abs(a.real()), std::abs(b.real()));
  const double floor = 1e-9 * std::max(std::abs(a.imag()), std::abs(b.imag()));
  return std::abs(a.real() - b.real()) <= 1e-6 * scale + floor;
}

inline void order_fast_slow(Complex& fast, Complex& slow) {
  const bool swap = real_parts_tie(fast, slow) ? fast.imag() > slow.imag()
                                               : fast.real() > slow.real();
  if (swap) std::swap(fast, slow);
}

}  // namespace detail

/// Recovers the decay modes of a sampled coherence signal by two-mode
/// linear prediction (Prony): fit the order-2 recurrence
/// y[k+2] = a y[k+1] + b y[k] by least squares, take the characteristic
/// roots, and map them to continuous rates through log(z)/dt.
///
/// A rank-deficient recurrence (single-exponential signal) degrades to a
/// one-mode fit with the second mode flagged spurious. Root magnitudes
/// above 1 + 1e-6 (growing modes) and near-zero signals are errors.
inline ModeFit fit_decay_modes(const CoherenceTrajectory& traj, const FitConfig& cfg = {}) {
  cfg.validate();
  if (traj.size() < static_cast<std::size_t>(cfg.start_index + cfg.sample_count))
    throw ValidationError("fit_decay_modes: trajectory shorter than start_index + sample_count");
  const double dt = traj.dt();

  const std::size_t n = static_cast<std::size_t>(cfg.sample_count);
  const std::size_t off = static_cast<std::size_t>(cfg.start_index);
  std::vector<Complex> y(n);
  double ymax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = traj.rho_pm[off + k];
    ymax = std::max(ymax, std::abs(y[k]));
  }
  if (ymax == 0.0) throw ValidationError("fit_decay_modes: signal is identically zero");

  const std::size_t rows = n - 2;
  std::vector<Complex> c0(rows), c1(rows), rhs(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    c0[k] = y[k + 1];
    c1[k] = y[k];
    rhs[k] = y[k + 2];
  }
  const detail::TwoColumnLs ls = detail::solve_two_column_ls(std::move(c0), std::move(c1),
                                                             std::move(rhs));
  if (ls.sigma_max <= 0.0)
    throw NumericError("fit_decay_modes: degenerate recurrence (zero design matrix)");

  constexpr double kGrowthSlack = 1e-6;
  auto to_rate = [&](Complex z) {
    if (std::abs(z) > 1.0 + kGrowthSlack)
      throw NumericError("fit_decay_modes: growing mode, |z| = " + std::to_string(std::abs(z)));
    if (z == Complex{})
      throw NumericError("fit_decay_modes: mode root collapsed to zero");
    return std::log(z) / dt;
  };

  ModeFit fit;
  if (ls.sigma_min <= 1e-10 * ls.sigma_max) {
    // single resolvable exponential: fit y[k+1] = z y[k] directly
    Complex num{}, den{};
    for (std::size_t k = 0; k + 1 < n; ++k) {
      num += std::conj(y[k]) * y[k + 1];
      den += std::conj(y[k]) * y[k];
    }
    if (den == Complex{})
      throw NumericError("fit_decay_modes: ill-conditioned single-mode fit");
    fit.slow = to_rate(num / den);
    fit.fast_spurious = true;
    return fit;
  }

  // roots of z^2 - a z - b, larger one first for stability
  const Complex a = ls.x0, b = ls.x1;
  const Complex q = std::sqrt(0.25 * a * a + b);
  Complex z1 = 0.5 * a + q;
  Complex z2 = 0.5 * a - q;
  if (std::abs(z2) > std::abs(z1)) std::swap(z1, z2);
  if (std::abs(z1) > 0.0) z2 = -b / z1;  // product of roots is -b
  fit.fast = to_rate(z1);
  fit.slow = to_rate(z2);
  detail::order_fast_slow(fit.fast, fit.slow);
  return fit;
}

/// Fitting is skipped inside |kappa - 4R| <= 1e-3 R: the degenerate signal
/// has a secular t e^{lambda t} term outside the pure-exponential model.
inline constexpr double kFitExclusionBand = 1e-3;

/// Per-kappa decays and timescales across a coupling grid.
struct SweepResult {
  std::vector<double> kappa;
  std::vector<DampingRegime> regimes;
  std::vector<double> slow_rate_analytic;
  std::vector<double> slow_rate_fitted;  ///< NaN where fitting was skipped or failed
  std::vector<double> fast_rate_analytic;
  std::vector<double> t_dec;             ///< +inf at kappa = 0
  std::vector<std::string> notes;        ///< empty string = clean point
};

/// Sweeps the measurement coupling: analytic mode rates and timescale per
/// point, plus rates refitted from a clean analytic trajectory. Per-point
/// failures are recorded in `notes` and the sweep continues.
inline SweepResult sweep_kappa(double rabi, const std::vector<double>& kappa_grid,
                               double t_end, int samples) {
  if (!(rabi > 0.0) || !std::isfinite(rabi))
    throw ValidationError("sweep_kappa: R must be > 0");
  if (kappa_grid.empty()) throw ValidationError("sweep_kappa: empty kappa grid");
  for (double k : kappa_grid)
    if (!(k >= 0.0) || !std::isfinite(k))
      throw ValidationError("sweep_kappa: kappa values must be >= 0");
  if (!(t_end > 0.0)) throw ValidationError("sweep_kappa: t_end must be > 0");
  if (samples < 2) throw ValidationError("sweep_kappa: samples must be >= 2");

  FitConfig cfg;
  cfg.sample_count = std::min(cfg.sample_count, samples);
  cfg.validate();

  SweepResult out;
  const std::size_t npts = kappa_grid.size();
  out.kappa = kappa_grid;
  out.regimes.reserve(npts);
  out.slow_rate_analytic.reserve(npts);
  out.slow_rate_fitted.reserve(npts);
  out.fast_rate_analytic.reserve(npts);
  out.t_dec.reserve(npts);
  out.notes.assign(npts, std::string{});

  for (std::size_t i = 0; i < npts; ++i) {
    const double kap = kappa_grid[i];
    const ModeRates rates = mode_rates(rabi, kap);
    out.regimes.push_back(rates.regime);
    out.slow_rate_analytic.push_back(rates.slow_rate());
    out.fast_rate_analytic.push_back(rates.fast_rate());
    out.t_dec.push_back(kap == 0.0 ? std::numeric_limits<double>::infinity()
                                   : decoherence_timescale(rabi, kap).t_dec);

    double fitted = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(kap - 4.0 * rabi) <= kFitExclusionBand * rabi) {
      out.notes[i] = "critical band: analytic rates only";
    } else {
      try {
        const JCParams p = JCParams::from_rabi(rabi, kap);
        const CoherenceTrajectory traj =
            run_trajectory(p, t_end, samples, TrajectoryPath::analytic);
        const ModeFit fit = fit_decay_modes(traj, cfg);
        fitted = -fit.slow.real();
      } catch (const std::exception& e) {
        out.notes[i] = e.what();
      }
    }
    out.slow_rate_fitted.push_back(fitted);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV emission. Formatting is deterministic: 17 significant digits through
// std::to_chars (locale-independent, round-trip exact for binary64), '.'
// decimal separator, '\n' line endings.

inline std::string csv_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Shortest representation that round-trips; used for file names.
inline std::string short_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline const char* regime_name(DampingRegime r) {
  switch (r) {
    case DampingRegime::underdamped: return "underdamped";
    case DampingRegime::critical: return "critical";
    case DampingRegime::overdamped: return "overdamped";
  }
  return "?";
}

inline constexpr const char* kUnitsComment =
    "# units: t in us, kappa and angular frequencies in rad/us, rates in 1/us";

inline void write_trajectory_csv(std::ostream& os, const CoherenceTrajectory& traj) {
  os << kUnitsComment << "\n";
  os << "t,re_rho_pm,im_rho_pm,abs_rho_pm,rho_pp,rho_mm,source\n";
  const char* src = source_name(traj.source);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << csv_number(traj.t[k]) << ',' << csv_number(traj.rho_pm[k].real()) << ','
       << csv_number(traj.rho_pm[k].imag()) << ',' << csv_number(std::abs(traj.rho_pm[k]))
       << ',' << csv_number(traj.rho_pp[k]) << ',' << csv_number(traj.rho_mm[k]) << ','
       << src << '\n';
  }
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << kUnitsComment << "\n";
  os << "kappa,regime,slow_rate_analytic,slow_rate_fitted,fast_rate_analytic,t_dec\n";
  for (std::size_t i = 0; i < sweep.kappa.size(); ++i) {
    os << csv_number(sweep.kappa[i]) << ',' << regime_name(sweep.regimes[i]) << ','
       << csv_number(sweep.slow_rate_analytic[i]) << ','
       << csv_number(sweep.slow_rate_fitted[i]) << ','
       << csv_number(sweep.fast_rate_analytic[i]) << ',' << csv_number(sweep.t_dec[i])
       << '\n';
  }
}

/// One curve of the standard figure set: analytic evaluation plus the
/// full-space numeric overlay at the same sample points.
struct FigureCurve {
  double kappa = 0.0;
  CoherenceTrajectory analytic;
  CoherenceTrajectory numeric;
};

/// Coherence evolution for kappa/R in {0, 1, 2, 4, 8, 20} over t in
/// [0, 10/R], 1000 samples per curve: brackets the critical coupling from
/// both sides.
inline std::vector<FigureCurve> reproduce_figure(double rabi) {
  if (!(rabi > 0.0) || !std::isfinite(rabi))
    throw ValidationError("reproduce_figure: R must be > 0");
  const double t_end = 10.0 / rabi;
  constexpr int kSamples = 1000;
  std::vector<FigureCurve> curves;
  for (double mult : {0.0, 1.0, 2.0, 4.0, 8.0, 20.0}) {
    FigureCurve c;
    c.kappa = mult * rabi;
    const JCParams p = JCParams::from_rabi(rabi, c.kappa);
    c.analytic = run_trajectory(p, t_end, kSamples, TrajectoryPath::analytic);
    c.numeric = run_trajectory(p, t_end, kSamples, TrajectoryPath::full);
    curves.push_back(std::move(c));
  }
  return curves;
}

}  // namespace zeno
