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
#include <limits>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "zeno/complex_matrix.hpp"
#include "zeno/errors.hpp"
#include "zeno/hilbert.hpp"

namespace zeno {

// Master-equation right-hand sides and fixed-step RK4 time integration, in
// the full truncated space and in the reduced 2x2 dressed-state block.

/// Tolerances a physical density matrix must satisfy. One order looser
/// than the roundoff RK4 accumulates over ~1e5 steps, so violations flag
/// coding errors rather than float noise.
inline constexpr double kDensityTraceTol = 1e-10;
inline constexpr double kDensityHermTol = 1e-10;
inline constexpr double kDensityEigFloor = -1e-9;
inline constexpr double kManifoldLeakTol = 1e-12;

/// Step-size rule for the integrator: max(R, kappa) * h <= 0.05.
inline constexpr double kStepBound = 0.05;

struct DensityCheckReport {
  double hermiticity_defect = 0.0;  ///< Frobenius norm of rho - rho'
  double trace_defect = 0.0;        ///< |Tr rho - 1|
  double min_eigenvalue = 0.0;
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool positive_ok = false;

  bool pass() const { return hermitian_ok && trace_ok && positive_ok; }
};

/// Measures the density-matrix invariants of an arbitrary square matrix.
/// The positivity threshold is 10x looser than tol, matching the defaults
/// above (1e-10 trace/Hermiticity, -1e-9 eigenvalue floor).
inline DensityCheckReport check_density(const ComplexMatrix& rho, double tol = kDensityTraceTol) {
  DensityCheckReport rep;
  rep.hermiticity_defect = hermiticity_defect(rho);
  rep.trace_defect = std::abs(trace(rho) - Complex(1.0, 0.0));
  const std::vector<double> eig = jacobi_eigenvalues(rho);
  rep.min_eigenvalue = eig.front();
  rep.hermitian_ok = rep.hermiticity_defect <= tol;
  rep.trace_ok = rep.trace_defect <= tol;
  rep.positive_ok = rep.min_eigenvalue >= -10.0 * tol;
  return rep;
}

/// A ComplexMatrix validated to be Hermitian, unit trace and positive
/// semidefinite within the standard tolerances.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    mat_.require_finite("DensityMatrix");
    const DensityCheckReport rep = check_density(mat_);
    if (!rep.pass())
      throw ValidationError(
          "DensityMatrix: invariant violation (hermiticity defect " +
          std::to_string(rep.hermiticity_defect) + ", trace defect " +
          std::to_string(rep.trace_defect) + ", min eigenvalue " +
          std::to_string(rep.min_eigenvalue) + ")");
  }

  const ComplexMatrix& mat() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.dim(); }

 private:
  ComplexMatrix mat_;
};

/// |psi><psi| from an arbitrary nonzero state vector (normalized here).
inline DensityMatrix pure_state(const std::vector<Complex>& psi) {
  const double nrm = vec_norm(psi);
  if (nrm == 0.0) throw ValidationError("pure_state: zero vector");
  ComplexMatrix rho(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j)
      rho(i, j) = psi[i] * std::conj(psi[j]) / (nrm * nrm);
  return DensityMatrix(std::move(rho));
}

/// The initial condition rho_pp = rho_mm = rho_pm = rho_mp = 1/2 of the
/// dressed-state block, which in the full space is the pure state
/// |g,n><g,n| -- i.e. the occupancy projector itself.
inline DensityMatrix paper_initial_state(const JCParams& p) {
  return DensityMatrix(build_occupancy_operator(p));
}

/// drho/dt = -i [H, rho] - (kappa/2) [A, [A, rho]]   (hbar = 1)
inline ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h,
                                  const ComplexMatrix& a, double kappa) {
  rho.require_same_dim(h, "lindblad_rhs");
  rho.require_same_dim(a, "lindblad_rhs");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ValidationError("lindblad_rhs: kappa must be >= 0");
  ComplexMatrix out = Complex(0.0, -1.0) * commutator(h, rho);
  if (kappa != 0.0) out -= (0.5 * kappa) * commutator(a, commutator(a, rho));
  return out;
}

/// The same generator reduced to the 2x2 dressed-state block, where the
/// occupancy operator is the all-1/2 matrix:
///   d rho_pp = -(kappa/4)(rho_pp - rho_mm)        d rho_mm = + the same
///   d rho_pm = (-iR - kappa/4) rho_pm + (kappa/4) rho_mp   (and conjugate)
inline ComplexMatrix block_rhs(const ComplexMatrix& rho2, double rabi, double kappa) {
  if (rho2.dim() != 2) throw ValidationError("block_rhs: state must be 2x2");
  if (!(rabi > 0.0) || !std::isfinite(rabi))
    throw ValidationError("block_rhs: R must be > 0");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ValidationError("block_rhs: kappa must be >= 0");
  const double q = 0.25 * kappa;
  ComplexMatrix d(2);
  const Complex pop = rho2(0, 0) - rho2(1, 1);
  d(0, 0) = -q * pop;
  d(1, 1) = +q * pop;
  d(0, 1) = Complex(-q, -rabi) * rho2(0, 1) + q * rho2(1, 0);
  d(1, 0) = Complex(-q, +rabi) * rho2(1, 0) + q * rho2(0, 1);
  return d;
}

/// One classical fourth-order Runge-Kutta step of y' = f(y, t).
template <typename Rhs>
ComplexMatrix rk4_step(const ComplexMatrix& y, double t, double dt, Rhs&& f) {
  const ComplexMatrix k1 = f(y, t);
  const ComplexMatrix k2 = f(y + (0.5 * dt) * k1, t + 0.5 * dt);
  const ComplexMatrix k3 = f(y + (0.5 * dt) * k2, t + 0.5 * dt);
  const ComplexMatrix k4 = f(y + dt * k3, t + dt);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

enum class TrajectorySource { numeric_full, numeric_block, analytic };

inline const char* source_name(TrajectorySource s) {
  switch (s) {
    case TrajectorySource::numeric_full: return "numeric_full";
    case TrajectorySource::numeric_block: return "numeric_block";
    case TrajectorySource::analytic: return "analytic";
  }
  return "?";
}

/// Uniformly sampled time series of the dressed-state coherence rho_pm and
/// populations rho_pp, rho_mm.
struct CoherenceTrajectory {
  std::vector<double> t;
  std::vector<Complex> rho_pm;
  std::vector<double> rho_pp;
  std::vector<double> rho_mm;
  TrajectorySource source = TrajectorySource::analytic;

  std::size_t size() const { return t.size(); }

  double dt() const {
    if (t.size() < 2) throw ValidationError("CoherenceTrajectory: need >= 2 samples for dt");
    return t[1] - t[0];
  }
};

/// Worst-case invariant defects observed across every accepted step, plus
/// any step-size warnings.
struct IntegrationReport {
  long steps = 0;
  double max_trace_defect = 0.0;
  double max_hermiticity_defect = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  double max_offmanifold_population = 0.0;
  std::vector<std::string> warnings;
};

/// Smallest step count that is a multiple of (samples - 1) and respects
/// max(R, kappa) * h <= 0.05 over [0, t_span].
inline long required_steps(const JCParams& p, double t_span, int samples) {
  p.validate();
  if (!(t_span > 0.0)) throw ValidationError("required_steps: t_span must be > 0");
  if (samples < 2) throw ValidationError("required_steps: samples must be >= 2");
  const double scale = std::max(p.rabi(), p.kappa);
  const long min_steps = std::max<long>(1, static_cast<long>(std::ceil(t_span * scale / kStepBound)));
  const long intervals = samples - 1;
  const long sub = (min_steps + intervals - 1) / intervals;
  return intervals * sub;
}

namespace detail {

struct StepValidator {
  // indices of the manifold states; empty when the state IS the block
  std::vector<std::size_t> manifold;
  bool full_space = false;

  void check(const ComplexMatrix& rho, long step, IntegrationReport* rep) const {
    const DensityCheckReport d = check_density(rho);
    double leak = 0.0;
    if (full_space) {
      for (std::size_t i = 0; i < rho.dim(); ++i) {
        if (i == manifold[0] || i == manifold[1]) continue;
        leak += std::abs(rho(i, i).real());
      }
    }
    if (rep) {
      rep->max_trace_defect = std::max(rep->max_trace_defect, d.trace_defect);
      rep->max_hermiticity_defect = std::max(rep->max_hermiticity_defect, d.hermiticity_defect);
      rep->min_eigenvalue = std::min(rep->min_eigenvalue, d.min_eigenvalue);
      rep->max_offmanifold_population = std::max(rep->max_offmanifold_population, leak);
    }
    if (!d.pass())
      throw IntegrationError(
          "integration lost density-matrix invariants (trace defect " +
          std::to_string(d.trace_defect) + ", hermiticity defect " +
          std::to_string(d.hermiticity_defect) + ", min eigenvalue " +
          std::to_string(d.min_eigenvalue) + ")", step);
    if (full_space && leak > kManifoldLeakTol)
      throw IntegrationError("integration leaked population out of the excitation manifold (" +
                             std::to_string(leak) + ")", step);
  }
};

template <typename Rhs, typename Extract>
CoherenceTrajectory rk4_integrate(const JCParams& p, const ComplexMatrix& rho0,
                                  double t0, double t1, long steps, int samples,
                                  TrajectorySource source, Rhs&& rhs, Extract&& extract,
                                  const StepValidator& validator,
                                  IntegrationReport* report,
                                  std::vector<ComplexMatrix>* history) {
  if (samples < 2) throw ValidationError("rk4_integrate: samples must be >= 2");
  if (steps < 1) throw ValidationError("rk4_integrate: steps must be >= 1");
  if (!(t1 > t0)) throw ValidationError("rk4_integrate: need t1 > t0");
  const long intervals = samples - 1;
  if (steps % intervals != 0)
    throw ValidationError("rk4_integrate: steps must be a multiple of samples - 1");
  const long sub = steps / intervals;
  const double h = (t1 - t0) / static_cast<double>(steps);
  const double scale = std::max(p.rabi(), p.kappa);
  if (report) report->steps = steps;
  if (scale * h > kStepBound && report)
    report->warnings.push_back("step size violates max(R, kappa) * h <= " +
                               std::to_string(kStepBound) + ": max(R, kappa) * h = " +
                               std::to_string(scale * h));

  CoherenceTrajectory traj;
  traj.source = source;
  traj.t.reserve(samples);
  traj.rho_pm.reserve(samples);
  traj.rho_pp.reserve(samples);
  traj.rho_mm.reserve(samples);

  ComplexMatrix state = rho0;
  validator.check(state, 0, report);
  for (long step = 0; step <= steps; ++step) {
    if (step % sub == 0) {
      const long k = step / sub;
      traj.t.push_back(t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(intervals));
      const auto [pm, pp, mm] = extract(state);
      traj.rho_pm.push_back(pm);
      traj.rho_pp.push_back(pp);
      traj.rho_mm.push_back(mm);
      if (history) history->push_back(state);
    }
    if (step == steps) break;
    state = rk4_step(state, t0 + h * static_cast<double>(step), h, rhs);
    validator.check(state, step + 1, report);
  }
  return traj;
}

}  // namespace detail

/// Integrates the full-space master equation from rho0 over [t0, t1] with
/// the given fixed step count, re-validating the state after every step.
/// Records `samples` uniformly spaced points (steps must be a multiple of
/// samples - 1). The optional history receives the full state at each
/// sample point.
inline CoherenceTrajectory integrate_full(const JCParams& p, const DensityMatrix& rho0,
                                          double t0, double t1, long steps, int samples,
                                          IntegrationReport* report = nullptr,
                                          std::vector<ComplexMatrix>* history = nullptr) {
  p.validate();
  if (rho0.dim() != static_cast<std::size_t>(p.space_dim()))
    throw ValidationError("integrate_full: state dimension does not match params");
  const ComplexMatrix h = build_jc_hamiltonian(p);
  const ComplexMatrix a = build_occupancy_operator(p);
  detail::StepValidator validator;
  validator.full_space = true;
  validator.manifold = {basis_index(AtomState::ground, p.n, p.n_max),
                        basis_index(AtomState::excited, p.n - 1, p.n_max)};
  auto rhs = [&](const ComplexMatrix& y, double) { return lindblad_rhs(y, h, a, p.kappa); };
  auto extract = [&](const ComplexMatrix& y) {
    const ComplexMatrix blk = to_jce_block(y, p);
    return std::tuple<Complex, double, double>{blk(0, 1), blk(0, 0).real(), blk(1, 1).real()};
  };
  return detail::rk4_integrate(p, rho0.mat(), t0, t1, steps, samples,
                               TrajectorySource::numeric_full, rhs, extract, validator,
                               report, history);
}

/// Same integrator on the reduced 2x2 dressed-state block, where only R
/// and kappa enter. Mandatory past kappa ~ 40 R, where full-space step
/// counts blow up.
inline CoherenceTrajectory integrate_block(const JCParams& p, const ComplexMatrix& rho0_block,
                                           double t0, double t1, long steps, int samples,
                                           IntegrationReport* report = nullptr,
                                           std::vector<ComplexMatrix>* history = nullptr) {
  p.validate();
  if (rho0_block.dim() != 2)
    throw ValidationError("integrate_block: state must be 2x2");
  const double rabi = p.rabi();
  detail::StepValidator validator;  // full_space = false: no leakage check
  auto rhs = [&](const ComplexMatrix& y, double) { return block_rhs(y, rabi, p.kappa); };
  auto extract = [](const ComplexMatrix& y) {
    return std::tuple<Complex, double, double>{y(0, 1), y(0, 0).real(), y(1, 1).real()};
  };
  return detail::rk4_integrate(p, rho0_block, t0, t1, steps, samples,
                               TrajectorySource::numeric_block, rhs, extract, validator,
                               report, history);
}

/// The symmetric initial condition as a 2x2 block: every entry 1/2.
inline ComplexMatrix initial_block() {
  ComplexMatrix b(2);
  b(0, 0) = b(0, 1) = b(1, 0) = b(1, 1) = 0.5;
  return b;
}

}  // namespace zeno
