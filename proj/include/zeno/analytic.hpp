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
#include <complex>
#include <utility>

#include "zeno/complex_matrix.hpp"
#include "zeno/errors.hpp"

namespace zeno {

// Closed-form solutions for the coherence between the two dressed states
// of one excitation manifold, evolving under
//   d/dt rho_pm = (-iR - kappa/4) rho_pm + (kappa/4) rho_mp
// with symmetric initial condition rho_pm(0) = 1/2. The coherence is a sum
// of two complex exponentials with rates
//   lambda_{fast,slow} = -kappa/4 -+ sqrt(kappa^2 - 16 R^2)/4 ,
// which degenerate at the critical coupling kappa = 4R.

enum class DampingRegime { underdamped, critical, overdamped };

/// Relative half-width (in units of R) of the band around kappa = 4R that
/// is treated as exactly critical. Inside it the generic formula loses
/// digits to cancellation; the exact degenerate-limit formula is used and
/// differs from the generic branch by less than the band width itself.
inline constexpr double kCriticalBand = 1e-6;

inline void require_rate_args(double rabi, double kappa, bool allow_zero_kappa = true) {
  if (!(rabi > 0.0) || !std::isfinite(rabi))
    throw ValidationError("analytic: R must be > 0");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ValidationError("analytic: kappa must be >= 0");
  if (!allow_zero_kappa && kappa == 0.0)
    throw ValidationError("analytic: kappa must be > 0 (timescale diverges at kappa = 0)");
}

inline bool is_critical(double rabi, double kappa) {
  return std::abs(kappa - 4.0 * rabi) <= kCriticalBand * rabi;
}

inline DampingRegime regime_classify(double rabi, double kappa) {
  require_rate_args(rabi, kappa);
  if (is_critical(rabi, kappa)) return DampingRegime::critical;
  return kappa < 4.0 * rabi ? DampingRegime::underdamped : DampingRegime::overdamped;
}

/// The two decay modes of the coherence subsystem, ordered by real part
/// (fast decays faster). Underdamped modes share the real part -kappa/4;
/// the tie is broken by imaginary part, fast taking the negative one.
struct ModeRates {
  Complex fast;
  Complex slow;
  DampingRegime regime = DampingRegime::underdamped;

  /// Decay rate of the long-time envelope, -Re(slow).
  double slow_rate() const { return -slow.real(); }
  double fast_rate() const { return -fast.real(); }
};

inline ModeRates mode_rates(double rabi, double kappa) {
  require_rate_args(rabi, kappa);
  ModeRates out;
  out.regime = regime_classify(rabi, kappa);
  if (out.regime == DampingRegime::critical) {
    out.fast = out.slow = Complex(-kappa / 4.0, 0.0);
    return out;
  }
  const Complex disc = std::sqrt(Complex(kappa * kappa - 16.0 * rabi * rabi, 0.0));
  const Complex lp = (-kappa + disc) / 4.0;
  const Complex lm = (-kappa - disc) / 4.0;
  const bool lp_fast = lp.real() < lm.real() ||
                       (lp.real() == lm.real() && lp.imag() < lm.imag());
  out.fast = lp_fast ? lp : lm;
  out.slow = lp_fast ? lm : lp;
  return out;
}

/// kappa_crit = 4R: the measurement coupling where the two decay modes
/// degenerate and the decoherence rate peaks.
inline double critical_coupling(double rabi) {
  if (!(rabi > 0.0) || !std::isfinite(rabi))
    throw ValidationError("critical_coupling: R must be > 0");
  return 4.0 * rabi;
}

/// Decoherence rate of the slow (envelope-governing) mode: kappa/4 below
/// the critical coupling, (kappa - sqrt(kappa^2 - 16 R^2))/4 above it.
inline double decoherence_rate(double rabi, double kappa) {
  return mode_rates(rabi, kappa).slow_rate();
}

/// rho_pm(t), the coherence between the dressed states, for the symmetric
/// initial condition. Single complex-arithmetic formula away from the
/// critical coupling; the exact nilpotent-limit formula
/// e^{-Rt} (1/2 + (Rt/2)(1 - i)) inside the critical band. Returns exactly
/// 1/2 at t = 0.
inline Complex coherence_closed_form(double t, double rabi, double kappa) {
  require_rate_args(rabi, kappa);
  if (!(t >= 0.0) || !std::isfinite(t))
    throw ValidationError("coherence_closed_form: t must be >= 0");
  if (t == 0.0) return Complex(0.5, 0.0);
  if (is_critical(rabi, kappa)) {
    const double rt = rabi * t;
    return std::exp(-rt) * (Complex(0.5, 0.0) + 0.5 * rt * Complex(1.0, -1.0));
  }
  const Complex disc = std::sqrt(Complex(kappa * kappa - 16.0 * rabi * rabi, 0.0));
  const Complex lam_p = (-kappa + disc) / 4.0;
  const Complex lam_m = (-kappa - disc) / 4.0;
  const Complex ep = std::exp(lam_p * t);
  const Complex em = std::exp(lam_m * t);
  return (kappa + disc) / (4.0 * disc) * ep - (kappa - disc) / (4.0 * disc) * em -
         Complex(0.0, rabi) / disc * (ep - em);
}

/// Dressed-state populations under the symmetric initial condition: both
/// stay at 1/2 for all times.
inline std::pair<double, double> populations_closed_form(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw ValidationError("populations_closed_form: t must be >= 0");
  return {0.5, 0.5};
}

enum class TimescaleBranch { below_critical, above_critical };

struct TimescaleReport {
  double kappa = 0.0;
  double t_dec = 0.0;
  TimescaleBranch branch = TimescaleBranch::below_critical;
};

/// Coherence-destruction timescale: 4/kappa below the critical coupling,
/// 4/(kappa - sqrt(kappa^2 - 16 R^2)) above it (evaluated in the
/// cancellation-free form (kappa + sqrt(...))/(4 R^2)). Both branches give
/// 1/R at kappa = 4R. Rejects kappa = 0, where the timescale diverges.
inline TimescaleReport decoherence_timescale(double rabi, double kappa) {
  require_rate_args(rabi, kappa, /*allow_zero_kappa=*/false);
  TimescaleReport rep;
  rep.kappa = kappa;
  if (kappa <= 4.0 * rabi) {
    rep.branch = TimescaleBranch::below_critical;
    rep.t_dec = 4.0 / kappa;
  } else {
    rep.branch = TimescaleBranch::above_critical;
    const double disc = std::sqrt(kappa * kappa - 16.0 * rabi * rabi);
    rep.t_dec = (kappa + disc) / (4.0 * rabi * rabi);
  }
  return rep;
}

}  // namespace zeno
