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
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "zeno/errors.hpp"

namespace zeno {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Dense square complex matrix, row-major storage. Dimensions in this
/// project stay below ~30, so there is no sparsity and no external BLAS;
/// everything is a plain loop.
///
/// Constructors that accept data reject non-finite entries so that a NaN
/// cannot slip into an integration loop unnoticed. Arithmetic on finite
/// inputs is not re-checked.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw ValidationError("ComplexMatrix: dim must be >= 1");
  }

  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries)
      : ComplexMatrix(dim) {
    if (entries.size() != dim * dim) {
      throw ValidationError("ComplexMatrix: expected " +
                            std::to_string(dim * dim) + " entries, got " +
                            std::to_string(entries.size()));
    }
    std::size_t k = 0;
    for (Complex z : entries) {
      if (!is_finite(z)) throw ValidationError("ComplexMatrix: non-finite entry");
      data_[k++] = z;
    }
  }

  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  const std::vector<Complex>& data() const noexcept { return data_; }

  /// Throws if any entry is NaN or infinite.
  void require_finite(const char* where = "ComplexMatrix") const {
    for (Complex z : data_)
      if (!is_finite(z)) throw ValidationError(std::string(where) + ": non-finite entry");
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other) {
    require_same_dim(other, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& other) {
    require_same_dim(other, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (Complex& z : data_) z *= s;
    return *this;
  }

  void require_same_dim(const ComplexMatrix& other, const char* op) const {
    if (dim_ != other.dim_)
      throw ValidationError(std::string(op) + ": dimension mismatch (" +
                            std::to_string(dim_) + " vs " + std::to_string(other.dim_) + ")");
  }

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
inline ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex(s, 0.0); }
inline ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= Complex(s, 0.0); }

/// Matrix product. Row-times-column with the inner index in the middle
/// loop so the right factor is walked row-wise.
inline ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  a.require_same_dim(b, "mat_mul");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return mat_mul(a, b);
}

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

/// a.b - b.a
inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  a.require_same_dim(b, "commutator");
  return mat_mul(a, b) - mat_mul(b, a);
}

/// Kronecker product; result dimension is a.dim()*b.dim().
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix c(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          c(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return c;
}

inline Complex trace(const ComplexMatrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

inline std::vector<Complex> mat_vec(const ComplexMatrix& a, const std::vector<Complex>& x) {
  if (x.size() != a.dim()) throw ValidationError("mat_vec: dimension mismatch");
  std::vector<Complex> y(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < a.dim(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

inline Complex vec_dot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw ValidationError("vec_dot: length mismatch");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline double vec_norm(const std::vector<Complex>& a) {
  double s = 0.0;
  for (Complex z : a) s += std::norm(z);
  return std::sqrt(s);
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Complex z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  a.require_same_dim(b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

/// Frobenius norm of a - adjoint(a); zero for Hermitian matrices.
inline double hermiticity_defect(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      s += std::norm(a(i, j) - std::conj(a(j, i)));
  return std::sqrt(s);
}

}  // namespace zeno
