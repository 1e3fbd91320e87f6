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
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "zeno/complex_matrix.hpp"
#include "zeno/errors.hpp"

namespace zeno {

/// Physical parameters of the atom-cavity system.
///
/// Units convention: hbar = 1, every frequency (omega, g, kappa, the Rabi
/// frequency R) is an angular frequency in rad/us, time is in us.
struct JCParams {
  double omega = 1.0e4;  ///< common resonant frequency of atom and field
  double g = 50.0;       ///< atom-field coupling constant
  int n = 1;             ///< number of excitation quanta in the manifold under study
  double kappa = 0.0;    ///< occupancy-measurement coupling, >= 0
  int n_max = 3;         ///< Fock truncation: photon numbers 0..n_max

  /// Parameters with a prescribed n-photon Rabi frequency R = 2 g sqrt(n):
  /// g is chosen as R / (2 sqrt(n)).
  static JCParams from_rabi(double rabi, double kappa, int n = 1, double omega = 1.0e4) {
    JCParams p;
    p.omega = omega;
    p.n = n;
    p.g = rabi / (2.0 * std::sqrt(static_cast<double>(n)));
    p.kappa = kappa;
    p.n_max = n + 2;
    p.validate();
    return p;
  }

  /// R = 2 g sqrt(n), the n-photon Rabi frequency.
  double rabi() const { return 2.0 * g * std::sqrt(static_cast<double>(n)); }

  /// Dimension of the truncated product space {ground, excited} x {0..n_max}.
  int space_dim() const { return 2 * (n_max + 1); }

  void validate() const {
    if (!std::isfinite(omega) || !std::isfinite(g) || !std::isfinite(kappa))
      throw ValidationError("JCParams: non-finite parameter");
    if (omega < 0) throw ValidationError("JCParams: omega must be >= 0");
    if (g <= 0) throw ValidationError("JCParams: g must be > 0");
    if (n < 1) throw ValidationError("JCParams: n must be >= 1");
    if (kappa < 0) throw ValidationError("JCParams: kappa must be >= 0");
    if (n_max < n + 2) throw ValidationError("JCParams: n_max must be >= n + 2");
  }
};

enum class AtomState { ground = 0, excited = 1 };

/// Basis ordering: ground block first, then excited block, photon number
/// ascending within each block. This ordering is fixed so serialized
/// output is reproducible.
inline std::size_t basis_index(AtomState atom, int photons, int n_max) {
  if (photons < 0 || photons > n_max)
    throw ValidationError("basis_index: photon number outside truncation");
  return static_cast<std::size_t>(atom == AtomState::excited ? n_max + 1 : 0) +
         static_cast<std::size_t>(photons);
}

/// H = (omega/2) sz (x) I + I (x) omega (a'a + 1/2) + g (a' s + a s'),
/// hbar = 1, on the truncated product space. Real symmetric; conserves the
/// total excitation number, so it is block diagonal over the manifolds
/// span{|g,k>, |e,k-1>}.
inline ComplexMatrix build_jc_hamiltonian(const JCParams& p) {
  p.validate();
  const int nm = p.n_max;
  ComplexMatrix h(static_cast<std::size_t>(p.space_dim()));
  for (int k = 0; k <= nm; ++k) {
    const auto ig = basis_index(AtomState::ground, k, nm);
    const auto ie = basis_index(AtomState::excited, k, nm);
    h(ig, ig) = -0.5 * p.omega + p.omega * (k + 0.5);
    h(ie, ie) = +0.5 * p.omega + p.omega * (k + 0.5);
  }
  for (int k = 1; k <= nm; ++k) {
    // a's |e,k-1> = sqrt(k) |g,k> and the Hermitian counterpart
    const auto ig = basis_index(AtomState::ground, k, nm);
    const auto ie = basis_index(AtomState::excited, k - 1, nm);
    const double v = p.g * std::sqrt(static_cast<double>(k));
    h(ig, ie) = v;
    h(ie, ig) = v;
  }
  return h;
}

/// Rank-1 projector onto |g,n>: the Lindblad operator of the ground-state
/// occupancy measurement. Idempotent by construction.
inline ComplexMatrix build_occupancy_operator(const JCParams& p) {
  p.validate();
  ComplexMatrix a(static_cast<std::size_t>(p.space_dim()));
  const auto ig = basis_index(AtomState::ground, p.n, p.n_max);
  a(ig, ig) = 1.0;
  return a;
}

/// |+-> = (|g,n> +- |e,n-1>)/sqrt(2), embedded in the full space.
inline std::pair<std::vector<Complex>, std::vector<Complex>> jce_states(const JCParams& p) {
  p.validate();
  const double amp = 1.0 / std::sqrt(2.0);
  std::vector<Complex> plus(static_cast<std::size_t>(p.space_dim()));
  std::vector<Complex> minus(plus.size());
  const auto ig = basis_index(AtomState::ground, p.n, p.n_max);
  const auto ie = basis_index(AtomState::excited, p.n - 1, p.n_max);
  plus[ig] = amp;
  plus[ie] = amp;
  minus[ig] = amp;
  minus[ie] = -amp;
  return {plus, minus};
}

/// (E+, E-) = (n omega + sqrt(n) g, n omega - sqrt(n) g). Their difference
/// is the Rabi frequency R = 2 g sqrt(n).
inline std::pair<double, double> jce_eigenvalues(const JCParams& p) {
  p.validate();
  const double split = std::sqrt(static_cast<double>(p.n)) * p.g;
  return {p.n * p.omega + split, p.n * p.omega - split};
}

/// Projects a full-space operator onto the 2x2 block spanned by |+>, |->
/// of the n-manifold: entries <s|op|s'>.
///
/// Computed from the unnormalized sums |g,n> +- |e,n-1> and one exact
/// multiplication by 1/2, so that e.g. the occupancy projector maps to the
/// all-1/2 matrix without rounding.
inline ComplexMatrix to_jce_block(const ComplexMatrix& op, const JCParams& p) {
  p.validate();
  if (op.dim() != static_cast<std::size_t>(p.space_dim()))
    throw ValidationError("to_jce_block: operator dimension does not match params");
  const auto ig = basis_index(AtomState::ground, p.n, p.n_max);
  const auto ie = basis_index(AtomState::excited, p.n - 1, p.n_max);
  const Complex a = op(ig, ig), b = op(ig, ie), c = op(ie, ig), d = op(ie, ie);
  ComplexMatrix blk(2);
  blk(0, 0) = 0.5 * (a + b + c + d);
  blk(0, 1) = 0.5 * (a - b + c - d);
  blk(1, 0) = 0.5 * (a + b - c - d);
  blk(1, 1) = 0.5 * (a - b - c + d);
  return blk;
}

struct EigenPair {
  double value = 0.0;
  std::vector<Complex> vector;
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& h) {
  double s = 0.0;
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j)
      if (i != j) s += std::norm(h(i, j));
  return std::sqrt(s);
}

/// One cyclic-by-rows Jacobi sweep: rotates away every off-diagonal pair.
/// Accumulates the similarity into *vecs when non-null.
inline void jacobi_sweep(ComplexMatrix& h, ComplexMatrix* vecs) {
  const std::size_t n = h.dim();
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const Complex apq = h(p, q);
      const double beta = std::abs(apq);
      if (beta == 0.0) continue;
      const Complex phase = apq / beta;  // e^{i arg(apq)}
      const double tau = (h(q, q).real() - h(p, p).real()) / (2.0 * beta);
      const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;
      const Complex sp = s * phase;           // s e^{+i a}
      const Complex sm = s * std::conj(phase);  // s e^{-i a}

      for (std::size_t k = 0; k < n; ++k) {  // columns: H <- H G
        const Complex hp = h(k, p), hq = h(k, q);
        h(k, p) = c * hp - sm * hq;
        h(k, q) = sp * hp + c * hq;
      }
      for (std::size_t k = 0; k < n; ++k) {  // rows: H <- G' H
        const Complex hp = h(p, k), hq = h(q, k);
        h(p, k) = c * hp - sp * hq;
        h(q, k) = sm * hp + c * hq;
      }
      h(p, q) = 0.0;
      h(q, p) = 0.0;
      h(p, p) = Complex(h(p, p).real(), 0.0);
      h(q, q) = Complex(h(q, q).real(), 0.0);

      if (vecs) {
        for (std::size_t k = 0; k < n; ++k) {  // V <- V G
          const Complex vp = (*vecs)(k, p), vq = (*vecs)(k, q);
          (*vecs)(k, p) = c * vp - sm * vq;
          (*vecs)(k, q) = sp * vp + c * vq;
        }
      }
    }
  }
}

/// Shared driver. tol is measured relative to the Frobenius norm of the
/// input (with a floor of 1 for tiny matrices): an absolute 1e-12 target
/// would be unreachable below machine precision once matrix entries are
/// O(1e4). One extra polish sweep runs after the threshold is met; Jacobi
/// converges quadratically, so the exit off-norm lands near roundoff.
inline void jacobi_diagonalize(ComplexMatrix& h, ComplexMatrix* vecs, double tol) {
  if (tol <= 0.0) throw ValidationError("jacobi_eigen: tol must be > 0");
  const double scale = std::max(1.0, frobenius_norm(h));
  if (hermiticity_defect(h) > 1e-12 * scale)
    throw ValidationError("jacobi_eigen: input is not Hermitian");
  // symmetrize roundoff so the rotations see exact Hermitian data
  for (std::size_t i = 0; i < h.dim(); ++i) {
    h(i, i) = Complex(h(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < h.dim(); ++j) {
      const Complex m = 0.5 * (h(i, j) + std::conj(h(j, i)));
      h(i, j) = m;
      h(j, i) = std::conj(m);
    }
  }
  const double threshold = tol * scale;
  constexpr int kMaxSweeps = 50;
  int sweeps = 0;
  while (off_diagonal_norm(h) > threshold) {
    if (++sweeps > kMaxSweeps)
      throw NumericError("jacobi_eigen: no convergence after " +
                         std::to_string(kMaxSweeps) + " sweeps (off-norm " +
                         std::to_string(off_diagonal_norm(h)) + ")");
    jacobi_sweep(h, vecs);
  }
  jacobi_sweep(h, vecs);  // polish
}

}  // namespace detail

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Eigenvalues ascending; each eigenvector is phase-fixed by
/// making its largest-magnitude component real positive.
inline std::vector<EigenPair> jacobi_eigen(const ComplexMatrix& h, double tol = 1e-12) {
  ComplexMatrix d = h;
  ComplexMatrix v = ComplexMatrix::identity(h.dim());
  detail::jacobi_diagonalize(d, &v, tol);

  const std::size_t n = h.dim();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return d(a, a).real() < d(b, b).real(); });

  std::vector<EigenPair> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t col = order[k];
    out[k].value = d(col, col).real();
    out[k].vector.resize(n);
    std::size_t imax = 0;
    double amax = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      out[k].vector[i] = v(i, col);
      const double a = std::abs(v(i, col));
      if (a > amax) {
        amax = a;
        imax = i;
      }
    }
    if (amax > 0.0) {
      const Complex rot = std::conj(out[k].vector[imax]) / amax;
      for (Complex& z : out[k].vector) z *= rot;
    }
  }
  return out;
}

/// Eigenvalues only (ascending); same rotations, no vector accumulation.
inline std::vector<double> jacobi_eigenvalues(const ComplexMatrix& h, double tol = 1e-12) {
  ComplexMatrix d = h;
  detail::jacobi_diagonalize(d, nullptr, tol);
  std::vector<double> vals(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) vals[i] = d(i, i).real();
  std::sort(vals.begin(), vals.end());
  return vals;
}

}  // namespace zeno
