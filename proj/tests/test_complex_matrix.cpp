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

#include <limits>

#include "test_support.hpp"
#include "zeno/complex_matrix.hpp"

using namespace zeno;
using zeno::test::naive_mat_mul;
using zeno::test::random_matrix;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("constructors validate shape and finiteness") {
  CHECK_THROWS_AS(ComplexMatrix(0), ValidationError);
  CHECK_THROWS_AS(ComplexMatrix(2, {1.0, 2.0, 3.0}), ValidationError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ComplexMatrix(1, {Complex(nan, 0.0)}), ValidationError);
  CHECK_THROWS_AS(ComplexMatrix(1, {Complex(0.0, std::numeric_limits<double>::infinity())}),
                  ValidationError);
  CHECK_NOTHROW(ComplexMatrix(2, {1.0, 0.0, 0.0, 1.0}));
}

TEST_CASE("mat_mul identities") {
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(mat_mul(eye, eye), eye) == 0.0);

  const ComplexMatrix sx(2, {0.0, 1.0, 1.0, 0.0});
  CHECK(max_abs_diff(mat_mul(sx, sx), eye) == 0.0);

  CHECK_THROWS_AS(mat_mul(eye, ComplexMatrix::identity(3)), ValidationError);
}

TEST_CASE("mat_mul matches the triple-loop oracle") {
  std::mt19937 rng(12001);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix a = random_matrix(rng, 4);
    const ComplexMatrix b = random_matrix(rng, 4);
    CHECK(max_abs_diff(mat_mul(a, b), naive_mat_mul(a, b)) < 1e-14);
  }
}

TEST_CASE("adjoint") {
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(adjoint(eye), eye) == 0.0);

  const ComplexMatrix m(2, {0.0, kI, 0.0, 0.0});
  const ComplexMatrix expected(2, {0.0, 0.0, -kI, 0.0});
  CHECK(max_abs_diff(adjoint(m), expected) == 0.0);

  std::mt19937 rng(12002);
  const ComplexMatrix a = random_matrix(rng, 3);
  CHECK(max_abs_diff(adjoint(adjoint(a)), a) == 0.0);
}

TEST_CASE("commutator") {
  std::mt19937 rng(12003);
  const ComplexMatrix a = random_matrix(rng, 3);
  CHECK(frobenius_norm(commutator(a, a)) < 1e-15);

  const ComplexMatrix b = random_matrix(rng, 3);
  CHECK(frobenius_norm(commutator(ComplexMatrix::identity(3), b)) < 1e-15);

  // [sz, s+] = 2 s+ by direct hand multiplication
  const ComplexMatrix sz(2, {1.0, 0.0, 0.0, -1.0});
  const ComplexMatrix sp(2, {0.0, 1.0, 0.0, 0.0});
  const ComplexMatrix expected(2, {0.0, 2.0, 0.0, 0.0});
  CHECK(max_abs_diff(commutator(sz, sp), expected) == 0.0);

  CHECK_THROWS_AS(commutator(sz, ComplexMatrix::identity(3)), ValidationError);
}

TEST_CASE("kron") {
  const ComplexMatrix eye2 = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(kron(eye2, eye2), ComplexMatrix::identity(4)) == 0.0);

  std::mt19937 rng(12004);
  const ComplexMatrix b = random_matrix(rng, 3);
  const ComplexMatrix two(1, {2.0});
  CHECK(max_abs_diff(kron(two, b), 2.0 * b) == 0.0);

  const ComplexMatrix sz(2, {1.0, 0.0, 0.0, -1.0});
  const ComplexMatrix k = kron(sz, ComplexMatrix::identity(3));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const Complex expect = i != j ? Complex{} : (i < 3 ? Complex(1.0) : Complex(-1.0));
      CHECK(k(i, j) == expect);
    }
}

TEST_CASE("trace") {
  CHECK(trace(ComplexMatrix::identity(2)) == Complex(2.0, 0.0));
  CHECK(trace(ComplexMatrix::zero(3)) == Complex{});

  std::mt19937 rng(12005);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix a = random_matrix(rng, 4);
    const ComplexMatrix b = random_matrix(rng, 4);
    // cyclic property, two independent evaluation orders
    CHECK(std::abs(trace(mat_mul(a, b)) - trace(mat_mul(b, a))) < 1e-13);
  }
}

TEST_CASE("algebraic properties on random matrices") {
  std::mt19937 rng(12006);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix a = random_matrix(rng, 4);
    const ComplexMatrix b = random_matrix(rng, 4);
    const ComplexMatrix c = random_matrix(rng, 4);

    const ComplexMatrix lhs = mat_mul(mat_mul(a, b), c);
    const ComplexMatrix rhs = mat_mul(a, mat_mul(b, c));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12 * frobenius_norm(lhs));

    CHECK(max_abs_diff(adjoint(mat_mul(a, b)), mat_mul(adjoint(b), adjoint(a))) < 1e-13);

    CHECK(std::abs(trace(commutator(a, b))) < 1e-12);
  }
}

TEST_CASE("kron distributes over mat_mul") {
  std::mt19937 rng(12007);
  for (int rep = 0; rep < 8; ++rep) {
    const ComplexMatrix a = random_matrix(rng, 2);
    const ComplexMatrix c = random_matrix(rng, 2);
    const ComplexMatrix b = random_matrix(rng, 3);
    const ComplexMatrix d = random_matrix(rng, 3);
    const ComplexMatrix lhs = mat_mul(kron(a, b), kron(c, d));
    const ComplexMatrix rhs = kron(mat_mul(a, c), mat_mul(b, d));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}
