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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "zeno/analytic.hpp"
#include "zeno/dynamics.hpp"

using namespace zeno;

namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  return g;
}

}  // namespace

TEST_CASE("mode_rates in the three regimes") {
  const double R = 100.0;

  const ModeRates free_evolution = mode_rates(R, 0.0);
  CHECK(free_evolution.regime == DampingRegime::underdamped);
  CHECK(std::abs(free_evolution.fast - Complex(0.0, -R)) < 1e-12);
  CHECK(std::abs(free_evolution.slow - Complex(0.0, +R)) < 1e-12);

  const ModeRates critical = mode_rates(R, 4.0 * R);
  CHECK(critical.regime == DampingRegime::critical);
  CHECK(critical.fast == Complex(-R, 0.0));
  CHECK(critical.slow == Complex(-R, 0.0));

  // kappa = 8R: rates -(2 -+ sqrt(3)) R by the quadratic formula
  const ModeRates over = mode_rates(R, 8.0 * R);
  CHECK(over.regime == DampingRegime::overdamped);
  CHECK(over.slow.real() == Catch::Approx(-(2.0 - std::sqrt(3.0)) * R).epsilon(1e-13));
  CHECK(over.fast.real() == Catch::Approx(-(2.0 + std::sqrt(3.0)) * R).epsilon(1e-13));
  CHECK(over.slow.imag() == 0.0);
  CHECK(over.slow_rate() == Catch::Approx(0.2679491924311227 * R).epsilon(1e-12));

  std::vector<double> kappas = log_grid(1e-2 * R, 1e3 * R, 60);
  for (double kap : kappas) {
    const ModeRates m = mode_rates(R, kap);
    CHECK(m.fast.real() <= m.slow.real());
    CHECK(m.slow.real() <= 0.0);
  }
}

TEST_CASE("coherence closed form at t = 0 is exactly one half") {
  for (double R : {1.0, 100.0})
    for (double kap : {0.0, 0.5 * R, 4.0 * R, 100.0 * R})
      CHECK(coherence_closed_form(0.0, R, kap) == Complex(0.5, 0.0));
}

TEST_CASE("free evolution: rho_pm = exp(-iRt)/2") {
  const double R = 100.0;
  for (double rt : {0.1, 1.0, 5.0, 10.0}) {
    const double t = rt / R;
    const Complex expected = 0.5 * std::exp(Complex(0.0, -R * t));
    CHECK(std::abs(coherence_closed_form(t, R, 0.0) - expected) < 1e-13);
  }
}

TEST_CASE("critical coupling: nilpotent-limit formula") {
  const double R = 100.0;
  const double t = 1.0 / R;  // Rt = 1
  const Complex v = coherence_closed_form(t, R, 4.0 * R);
  const Complex expected(0.36787944117144233, -0.18393972058572117);  // e^{-1} (1 - i/2)
  CHECK(std::abs(v - expected) < 1e-15);
}

TEST_CASE("strong measurement freezes the coherence") {
  const double R = 100.0;
  const double t = 10.0 / R;
  const Complex v = coherence_closed_form(t, R, 1e4 * R);
  CHECK(std::abs(v - Complex(0.5, 0.0)) < 1e-2);
}

TEST_CASE("closed form satisfies the coherence ODE and its conjugate") {
  // central finite difference as an independent derivative oracle
  const double R = 100.0;
  for (double kap : {0.0, 50.0, 200.0, 390.0, 800.0}) {
    for (double rt : {0.5, 2.0, 7.0}) {
      const double t = rt / R;
      const double dt = 1e-7 / R;
      const Complex up = coherence_closed_form(t + dt, R, kap);
      const Complex dn = coherence_closed_form(t - dt, R, kap);
      const Complex deriv = (up - dn) / (2.0 * dt);
      const Complex pm = coherence_closed_form(t, R, kap);
      const Complex rhs_pm = Complex(-kap / 4.0, -R) * pm + (kap / 4.0) * std::conj(pm);
      CHECK(std::abs(deriv - rhs_pm) < 1e-4 * R);  // O(dt^2 R^3) discretization error
      // conjugate component obeys the sign-flipped equation
      const Complex deriv_mp = std::conj(deriv);
      const Complex rhs_mp = Complex(-kap / 4.0, +R) * std::conj(pm) + (kap / 4.0) * pm;
      CHECK(std::abs(deriv_mp - rhs_mp) < 1e-4 * R);
    }
  }
}

TEST_CASE("populations stay at one half") {
  CHECK(populations_closed_form(0.0) == std::pair<double, double>(0.5, 0.5));
  CHECK(populations_closed_form(1.0) == std::pair<double, double>(0.5, 0.5));
  CHECK_THROWS_AS(populations_closed_form(-1.0), ValidationError);
}

TEST_CASE("critical coupling value") {
  CHECK(critical_coupling(100.0) == 400.0);
  CHECK(critical_coupling(1.0) == 4.0);
  CHECK_THROWS_AS(critical_coupling(0.0), ValidationError);

  // the decoherence rate is maximized at 4R on any grid containing it
  const double R = 7.0;
  std::vector<double> grid = log_grid(0.1 * R, 50.0 * R, 101);
  grid.push_back(critical_coupling(R));
  double best_rate = -1.0, best_kappa = 0.0;
  for (double kap : grid) {
    const double rate = decoherence_rate(R, kap);
    if (rate > best_rate) {
      best_rate = rate;
      best_kappa = kap;
    }
  }
  CHECK(best_kappa == critical_coupling(R));
  CHECK(best_rate == Catch::Approx(R).epsilon(1e-14));
}

TEST_CASE("decoherence timescale") {
  const double R = 100.0;

  const TimescaleReport below = decoherence_timescale(R, 2.0 * R);
  CHECK(below.branch == TimescaleBranch::below_critical);
  CHECK(below.t_dec == Catch::Approx(2.0 / R).epsilon(1e-15));

  const TimescaleReport crit = decoherence_timescale(R, 4.0 * R);
  CHECK(crit.t_dec == Catch::Approx(1.0 / R).epsilon(1e-12));

  const TimescaleReport above = decoherence_timescale(R, 8.0 * R);
  CHECK(above.branch == TimescaleBranch::above_critical);
  CHECK(above.t_dec == Catch::Approx(3.7320508075688772 / R).epsilon(1e-13));

  CHECK_THROWS_AS(decoherence_timescale(R, 0.0), ValidationError);

  // both branch formulas meet at 1/R
  const double from_below = 4.0 / (4.0 * R);
  const double from_above = (4.0 * R + std::sqrt(16.0 * R * R - 16.0 * R * R)) / (4.0 * R * R);
  CHECK(from_below == Catch::Approx(1.0 / R).epsilon(1e-15));
  CHECK(from_above == Catch::Approx(1.0 / R).epsilon(1e-15));
}

TEST_CASE("regime classification") {
  const double R = 50.0;
  CHECK(regime_classify(R, R) == DampingRegime::underdamped);
  CHECK(regime_classify(R, 4.0 * R) == DampingRegime::critical);
  CHECK(regime_classify(R, 5.0 * R) == DampingRegime::overdamped);
  CHECK(regime_classify(R, 0.0) == DampingRegime::underdamped);
}

TEST_CASE("underdamped coherence stays within its envelope") {
  const double R = 100.0;
  for (double kap : {10.0, 100.0, 250.0, 350.0, 390.0, 399.0}) {
    const double s = std::sqrt(16.0 * R * R - kap * kap);
    // sharp attainable envelope |c+| + |c-| from the mode decomposition
    const Complex c_plus(0.25 - R / s, -kap / (4.0 * s));
    const Complex c_minus(0.25 + R / s, +kap / (4.0 * s));
    const double envelope = std::abs(c_plus) + std::abs(c_minus);
    for (int i = 0; i <= 200; ++i) {
      const double t = (10.0 / R) * i / 200.0;
      const double mag = std::abs(coherence_closed_form(t, R, kap));
      CHECK(mag <= 0.5 * (1.0 + 1e-9));
      CHECK(mag <= std::exp(-kap * t / 4.0) * envelope * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("continuity across the critical band") {
  const double R = 100.0;
  for (double sign : {-1.0, 1.0}) {
    const double kap = 4.0 * R * (1.0 + sign * 1e-7);
    for (int i = 0; i <= 100; ++i) {
      const double t = (10.0 / R) * i / 100.0;
      const Complex a = coherence_closed_form(t, R, kap);
      const Complex b = coherence_closed_form(t, R, 4.0 * R);
      CHECK(std::abs(a - b) < 1e-6);
    }
  }
  // just outside the band the generic branch takes over smoothly
  for (double sign : {-1.0, 1.0}) {
    const double kap = 4.0 * R * (1.0 + sign * 2e-6);
    for (int i = 0; i <= 20; ++i) {
      const double t = (10.0 / R) * i / 20.0;
      CHECK(std::abs(coherence_closed_form(t, R, kap) -
                     coherence_closed_form(t, R, 4.0 * R)) < 1e-5);
    }
  }
}

TEST_CASE("slow rate rises as kappa/4 then falls past the critical point") {
  const double R = 100.0;
  std::vector<double> grid = log_grid(1e-2 * R, 1e3 * R, 200);
  grid.push_back(4.0 * R);
  std::sort(grid.begin(), grid.end());

  double prev_rate = -1.0;
  bool decreasing = false;
  for (double kap : grid) {
    const double rate = decoherence_rate(R, kap);
    if (kap <= 4.0 * R) {
      CHECK(rate == Catch::Approx(kap / 4.0).epsilon(1e-14));
    } else {
      const double expected = (kap - std::sqrt(kap * kap - 16.0 * R * R)) / 4.0;
      CHECK(rate == Catch::Approx(expected).epsilon(1e-12));
    }
    if (prev_rate >= 0.0) {
      if (!decreasing && rate < prev_rate) decreasing = true;  // single turning point
      if (decreasing)
        CHECK(rate < prev_rate);
      else
        CHECK(rate > prev_rate);
    }
    prev_rate = rate;
  }
  CHECK(decreasing);
}

TEST_CASE("deep measurement regime: slow rate approaches 2 R^2 / kappa") {
  const double R = 100.0;
  for (double mult : {100.0, 300.0, 1e3, 1e4}) {
    const double kap = mult * R;
    const double rate = decoherence_rate(R, kap);
    CHECK(rate == Catch::Approx(2.0 * R * R / kap).epsilon(0.01));
  }
}

TEST_CASE("closed form matches block RK4 across regimes") {
  const double R = 100.0;
  const double t_end = 10.0 / R;
  const int samples = 1000;
  for (double mult : {0.0, 0.5, 1.0, 2.0, 3.9, 4.0, 4.1, 8.0, 100.0}) {
    const JCParams p = JCParams::from_rabi(R, mult * R);
    const long steps = required_steps(p, t_end, samples);
    const CoherenceTrajectory num =
        integrate_block(p, initial_block(), 0.0, t_end, steps, samples);
    double max_diff = 0.0;
    for (std::size_t k = 0; k < num.size(); ++k)
      max_diff = std::max(max_diff,
                          std::abs(num.rho_pm[k] - coherence_closed_form(num.t[k], R, p.kappa)));
    INFO("kappa/R = " << mult);
    CHECK(max_diff <= 1e-8);
  }
}
