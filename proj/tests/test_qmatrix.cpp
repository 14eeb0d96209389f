// Copyright 2026 The relaxsim Authors
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

#include <doctest.h>

#include "relaxsim/qmatrix.hpp"
#include "test_support.hpp"

using namespace relaxsim;
using namespace relaxsim::testing;

TEST_CASE("tensor of elementary matrices") {
  CHECK(tensor(identity(2), identity(2)) == identity(4));

  ComplexVector<double> ket00 = ComplexVector<double>::Zero(4);
  ket00(0) = 1;
  const ComplexVector<double> out = tensor(pauli_x(), identity(2)) * ket00;
  CHECK(out(2) == cd(1));
  CHECK(out.norm() == doctest::Approx(1.0));

  Mat zz = Mat::Zero(4, 4);
  zz.diagonal() << 1, -1, -1, 1;
  CHECK(tensor(pauli_z(), pauli_z()) == zz);
}

TEST_CASE("tensor matches a loop-built Kronecker product") {
  for (int rep = 0; rep < 10; ++rep) {
    const Mat a = random_matrix(2, 3), b = random_matrix(4, 2);
    CHECK(tensor(a, b) == kron_loops(a, b));
  }
}

TEST_CASE("tensor associativity") {
  // Small integer entries: every product is exact, so both groupings agree bit for bit.
  std::uniform_int_distribution<int> pick(-4, 4);
  auto int_matrix = [&](Index r, Index c) {
    Mat m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = cd(pick(rng()), pick(rng()));
    return m;
  };
  for (int rep = 0; rep < 20; ++rep) {
    const Mat a = int_matrix(2, 2), b = int_matrix(2, 3), c = int_matrix(3, 2);
    CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
  }
  // General complex entries: complex multiplication is not associative in floating point.
  for (int rep = 0; rep < 20; ++rep) {
    const Mat a = random_matrix(2, 2), b = random_matrix(2, 2), c = random_matrix(2, 2);
    CHECK(max_abs(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) <= 1e-14);
  }
}

TEST_CASE("trace is multiplicative over tensor") {
  for (int rep = 0; rep < 20; ++rep) {
    const Mat a = random_matrix(3, 3), b = random_matrix(4, 4);
    const cd lhs = trace(tensor(a, b));
    const cd rhs = trace(a) * trace(b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("tensor_all folds left to right") {
  const Mat a = random_matrix(2, 2), b = random_matrix(2, 2), c = random_matrix(2, 2);
  CHECK(max_abs(tensor_all<double>({a, b, c}), kron_loops(kron_loops(a, b), c)) == 0.0);
}

TEST_CASE("mat_ops") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = cd(0, 1);
  Mat dd = Mat::Zero(2, 2);
  dd(0, 0) = 1;
  dd(1, 1) = cd(0, -1);
  CHECK(dagger(d) == dd);
  CHECK(multiply(pauli_x(), pauli_x()) == identity(2));
  CHECK(add(pauli_x(), pauli_z())(0, 1) == cd(1));
  CHECK(scale(cd(0, 2), pauli_z())(1, 1) == cd(0, -2));

  const auto ev = eigenvalues_hermitian(Mat(identity(4) / 4.0));
  REQUIRE(ev.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(ev(i) == doctest::Approx(0.25).epsilon(1e-15));

  CHECK_THROWS_AS(multiply(random_matrix(2, 3), random_matrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(add(random_matrix(2, 2), random_matrix(3, 3)), DimensionError);
}

TEST_CASE("eigenvalues_hermitian against a known spectrum") {
  // U diag(w) U^dag with U from a QR of a random matrix: spectrum w by construction.
  for (Index dim : {2, 8, 32, 128}) {
    const Eigen::HouseholderQR<Mat> qr(random_matrix(dim, dim));
    const Mat u = qr.householderQ();
    RealVector<double> w(dim);
    for (Index i = 0; i < dim; ++i) w(i) = uniform(-3, 3);
    Mat a = u * w.cast<cd>().asDiagonal() * u.adjoint();
    a = ((a + a.adjoint()) / 2.0).eval();
    std::vector<double> expected(w.data(), w.data() + dim);
    std::sort(expected.begin(), expected.end());
    const auto ev = eigenvalues_hermitian(a);
    double worst = 0;
    for (Index i = 0; i < dim; ++i) worst = std::max(worst, std::abs(ev(i) - expected[i]));
    CHECK(worst <= 1e-10);
    for (Index i = 1; i < dim; ++i) CHECK(ev(i - 1) <= ev(i));
  }
}

TEST_CASE("sqrt_psd squares back") {
  const auto rho = random_density(4);
  const Mat r = sqrt_psd(rho.matrix());
  CHECK(max_abs(r * r, rho.matrix()) <= 1e-13);
}

TEST_CASE("PureState and DensityMatrix invariants") {
  ComplexVector<double> v(2);
  v << 1, 1;
  CHECK_THROWS_AS(PureState<double>{v}, StateError);
  CHECK_NOTHROW(PureState<double>(v / std::sqrt(2.0)));

  const auto eq = PureState<double>::equilibrium_qubit(0.3);
  CHECK(std::norm(eq.amplitudes()(0)) == doctest::Approx(0.3));
  CHECK_THROWS_AS(PureState<double>::equilibrium_qubit(1.2), DomainError);

  Mat not_herm = identity(2) / 2.0;
  not_herm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix<double>{not_herm}, StateError);
  CHECK_THROWS_AS(DensityMatrix<double>(Mat(identity(2))), StateError);
  Mat negative = Mat::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix<double>{negative}, StateError);
  CHECK_THROWS_AS(DensityMatrix<double>(random_matrix(2, 3)), DimensionError);
  CHECK(DensityMatrix<double>::maximally_mixed(8).is_valid());
  CHECK(DensityMatrix<double>::from_pure(random_pure(4)).is_valid());
}

TEST_CASE("partial_trace examples") {
  const auto ra = random_density(2), rb = random_density(2);
  const Mat prod = tensor(ra.matrix(), rb.matrix());
  CHECK(max_abs(partial_trace(prod, {2, 2}, {0}), ra.matrix()) <= 1e-15);
  CHECK(max_abs(partial_trace(prod, {2, 2}, {1}), rb.matrix()) <= 1e-15);

  ComplexVector<double> phi = ComplexVector<double>::Zero(4);
  phi(0) = phi(3) = 1 / std::sqrt(2.0);
  const auto bell = DensityMatrix<double>::from_pure(PureState<double>(phi));
  CHECK(max_abs(partial_trace(bell, {2, 2}, {0}).matrix(), identity(2) / 2.0) <= 1e-15);
}

TEST_CASE("partial_trace keeps the original order of subsystems") {
  const auto a = random_density(2), b = random_density(3), c = random_density(2);
  const Mat abc = tensor(tensor(a.matrix(), b.matrix()), c.matrix());
  CHECK(max_abs(partial_trace(abc, {2, 3, 2}, {2, 0}), tensor(a.matrix(), c.matrix())) <= 1e-15);
  CHECK(max_abs(partial_trace(abc, {2, 3, 2}, {1}), b.matrix()) <= 1e-15);
}

TEST_CASE("partial_trace keeping every subsystem returns the input") {
  const auto rho = random_density(8);
  CHECK(partial_trace(rho.matrix(), {2, 2, 2}, {0, 1, 2}) == rho.matrix());
  CHECK(partial_trace(rho.matrix(), {8}, {0}) == rho.matrix());
  CHECK_THROWS_AS(partial_trace(rho.matrix(), {2, 2, 2}, {}), DimensionError);
  CHECK_THROWS_AS(partial_trace(rho.matrix(), {2, 3}, {0}), DimensionError);
  CHECK_THROWS_AS(partial_trace(rho.matrix(), {2, 4}, {2}), DimensionError);
}

TEST_CASE("partial_trace of random states is a valid state with the same trace") {
  for (int rep = 0; rep < 20; ++rep) {
    const auto rho = random_density(16);
    for (std::vector<Index> keep : {std::vector<Index>{0}, {1, 3}, {0, 2, 3}}) {
      const auto red = partial_trace(rho, {2, 2, 2, 2}, keep);
      CHECK(std::abs(red.matrix().trace() - cd(1)) <= 1e-12);
      CHECK(red.is_valid());
    }
  }
}

TEST_CASE("partial_trace against an explicit index sum") {
  // Tr_B over a 2x4 split written out element by element.
  const auto rho = random_density(8);
  Mat expected = Mat::Zero(2, 2);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 4; ++k) expected(i, j) += rho(i * 4 + k, j * 4 + k);
  CHECK(max_abs(partial_trace(rho.matrix(), {2, 4}, {0}), expected) <= 1e-15);
}
