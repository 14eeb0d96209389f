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

// Dense complex linear algebra for small qubit registers (dim <= 2^10).
//
// Conventions: qubit 0 is the outermost tensor factor, basis states are
// ordered |0..00>, |0..01>, ..., and all matrices are stored row-major.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "relaxsim/errors.hpp"

namespace relaxsim {

using Index = Eigen::Index;

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Real type underlying an Eigen expression with complex or real scalars.
template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

/// Numerical tolerances for the state invariants.
template <typename Real>
struct Tolerance {
  static constexpr Real hermitian = Real(1e-12);
  static constexpr Real trace = Real(1e-12);
  static constexpr Real positivity = Real(-1e-10);
  static constexpr Real norm = Real(1e-12);
};

namespace detail {

inline std::string shape_of(Index rows, Index cols) {
  std::ostringstream os;
  os << rows << "x" << cols;
  return os.str();
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* where) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(where) + ": expected a nonempty square matrix, got " +
                         shape_of(a.rows(), a.cols()));
  }
}

template <typename DA, typename DB>
void require_same_shape(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                        const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(where) + ": shape mismatch " +
                         shape_of(a.rows(), a.cols()) + " vs " + shape_of(b.rows(), b.cols()));
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Elementary matrices

template <typename Real = double>
ComplexMatrix<Real> identity(Index dim) {
  return ComplexMatrix<Real>::Identity(dim, dim);
}

template <typename Real = double>
ComplexMatrix<Real> pauli_x() {
  ComplexMatrix<Real> m(2, 2);
  m << Real(0), Real(1), Real(1), Real(0);
  return m;
}

template <typename Real = double>
ComplexMatrix<Real> pauli_y() {
  ComplexMatrix<Real> m(2, 2);
  m << Real(0), Complex<Real>(0, -1), Complex<Real>(0, 1), Real(0);
  return m;
}

template <typename Real = double>
ComplexMatrix<Real> pauli_z() {
  ComplexMatrix<Real> m(2, 2);
  m << Real(1), Real(0), Real(0), Real(-1);
  return m;
}

// |index><index| on a register of dimension dim.
template <typename Real = double>
ComplexMatrix<Real> basis_projector(Index dim, Index index) {
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(dim, dim);
  m(index, index) = Real(1);
  return m;
}

// ---------------------------------------------------------------------------
// Products and arithmetic

/// Kronecker product with `a` as the outer factor.
template <typename DA, typename DB>
ComplexMatrix<RealOf<DA>> tensor(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  ComplexMatrix<RealOf<DA>> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Complex<RealOf<DA>>(a(i, j)) * b.template cast<Complex<RealOf<DA>>>();
    }
  }
  return out;
}

/// Left-to-right Kronecker product of a list of factors.
template <typename Real>
ComplexMatrix<Real> tensor_all(const std::vector<ComplexMatrix<Real>>& factors) {
  if (factors.empty()) return identity<Real>(1);
  ComplexMatrix<Real> out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

template <typename Derived>
ComplexMatrix<RealOf<Derived>> dagger(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint();
}

template <typename DA, typename DB>
ComplexMatrix<RealOf<DA>> multiply(const Eigen::MatrixBase<DA>& a,
                                   const Eigen::MatrixBase<DB>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("multiply: inner dimensions differ (" + detail::shape_of(a.rows(), a.cols()) +
                         " * " + detail::shape_of(b.rows(), b.cols()) + ")");
  }
  return a * b;
}

template <typename DA, typename DB>
ComplexMatrix<RealOf<DA>> add(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  detail::require_same_shape(a, b, "add");
  return a + b;
}

template <typename Derived>
ComplexMatrix<RealOf<Derived>> scale(Complex<RealOf<Derived>> c,
                                     const Eigen::MatrixBase<Derived>& a) {
  return c * a;
}

template <typename Derived>
Complex<RealOf<Derived>> trace(const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a, "trace");
  return a.trace();
}

/// Largest entrywise modulus of a - b.
template <typename DA, typename DB>
RealOf<DA> max_abs_diff(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  detail::require_same_shape(a, b, "max_abs_diff");
  if (a.size() == 0) return RealOf<DA>(0);
  return (a - b).cwiseAbs().maxCoeff();
}

template <typename Derived>
RealOf<Derived> hermiticity_error(const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a, "hermiticity_error");
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
RealOf<Derived> unitarity_error(const Eigen::MatrixBase<Derived>& u) {
  detail::require_square(u, "unitarity_error");
  using Real = RealOf<Derived>;
  return max_abs_diff(u.adjoint() * u, ComplexMatrix<Real>::Identity(u.rows(), u.cols()));
}

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is read.
template <typename Derived>
RealVector<RealOf<Derived>> eigenvalues_hermitian(const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a, "eigenvalues_hermitian");
  using Real = RealOf<Derived>;
  Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic> col = a;
  Eigen::SelfAdjointEigenSolver<decltype(col)> solver(col, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw DomainError("eigenvalues_hermitian: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

/// Principal square root of a positive-semidefinite Hermitian matrix. Negative
/// round-off eigenvalues are clamped to zero.
template <typename Derived>
ComplexMatrix<RealOf<Derived>> sqrt_psd(const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a, "sqrt_psd");
  using Real = RealOf<Derived>;
  Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic> col = a;
  Eigen::SelfAdjointEigenSolver<decltype(col)> solver(col);
  RealVector<Real> roots = solver.eigenvalues().cwiseMax(Real(0)).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

// ---------------------------------------------------------------------------
// States

template <typename Real = double>
class PureState {
 public:
  explicit PureState(ComplexVector<Real> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) throw DimensionError("PureState: empty amplitude vector");
    const Real err = std::abs(amplitudes_.squaredNorm() - Real(1));
    if (err > Tolerance<Real>::norm) {
      std::ostringstream os;
      os << "PureState: amplitudes not normalized (|norm^2 - 1| = " << err << ")";
      throw StateError(os.str());
    }
  }

  /// Computational basis state |index> of a register of dimension dim.
  static PureState basis(Index dim, Index index) {
    if (index < 0 || index >= dim) throw DimensionError("PureState::basis: index out of range");
    ComplexVector<Real> v = ComplexVector<Real>::Zero(dim);
    v(index) = Real(1);
    return PureState(std::move(v));
  }

  /// sqrt(p)|0> + sqrt(1-p)|1>.
  static PureState equilibrium_qubit(Real p) {
    if (!(p >= Real(0) && p <= Real(1))) {
      throw DomainError("PureState::equilibrium_qubit: population outside [0,1]");
    }
    ComplexVector<Real> v(2);
    v << std::sqrt(p), std::sqrt(Real(1) - p);
    return PureState(std::move(v));
  }

  Index dim() const { return amplitudes_.size(); }
  const ComplexVector<Real>& amplitudes() const { return amplitudes_; }
  ComplexMatrix<Real> projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  ComplexVector<Real> amplitudes_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix. The checked
/// constructor enforces all three invariants; `unchecked` is for results of
/// maps already known to be CPTP.
template <typename Real = double>
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix<Real> mat) : mat_(std::move(mat)) { validate(); }

  static DensityMatrix unchecked(ComplexMatrix<Real> mat) {
    DensityMatrix rho;
    rho.mat_ = std::move(mat);
    return rho;
  }

  static DensityMatrix from_pure(const PureState<Real>& psi) {
    return DensityMatrix(psi.projector());
  }

  static DensityMatrix maximally_mixed(Index dim) {
    return DensityMatrix(ComplexMatrix<Real>::Identity(dim, dim) / Real(dim));
  }

  Index dim() const { return mat_.rows(); }
  const ComplexMatrix<Real>& matrix() const { return mat_; }
  Complex<Real> operator()(Index i, Index j) const { return mat_(i, j); }

  /// Throws StateError describing the first violated invariant.
  void validate() const {
    detail::require_square(mat_, "DensityMatrix");
    const Real herm = hermiticity_error(mat_);
    if (herm > Tolerance<Real>::hermitian) fail("not Hermitian", herm);
    const Real tr = std::abs(mat_.trace() - Complex<Real>(1));
    if (tr > Tolerance<Real>::trace) fail("trace differs from 1", tr);
    const Real low = eigenvalues_hermitian(mat_).minCoeff();
    if (low < Tolerance<Real>::positivity) fail("negative eigenvalue", low);
  }

  bool is_valid() const {
    try {
      validate();
      return true;
    } catch (const StateError&) {
      return false;
    }
  }

 private:
  DensityMatrix() = default;

  [[noreturn]] static void fail(const char* what, Real value) {
    std::ostringstream os;
    os << "DensityMatrix: " << what << " (" << value << ")";
    throw StateError(os.str());
  }

  ComplexMatrix<Real> mat_;
};

// ---------------------------------------------------------------------------
// Partial trace

/// Reduced matrix on the subsystems listed in `keep` (kept in their original
/// relative order). Works on any square operator, not only states.
template <typename Derived>
ComplexMatrix<RealOf<Derived>> partial_trace(const Eigen::MatrixBase<Derived>& mat,
                                             const std::vector<Index>& subsystem_dims,
                                             std::vector<Index> keep) {
  using Real = RealOf<Derived>;
  detail::require_square(mat, "partial_trace");
  if (subsystem_dims.empty()) throw DimensionError("partial_trace: no subsystems given");
  Index total = 1;
  for (Index d : subsystem_dims) {
    if (d <= 0) throw DimensionError("partial_trace: subsystem dimensions must be positive");
    total *= d;
  }
  if (total != mat.rows()) {
    throw DimensionError("partial_trace: product of subsystem dims (" + std::to_string(total) +
                         ") differs from matrix dim (" + std::to_string(mat.rows()) + ")");
  }
  const auto n = static_cast<Index>(subsystem_dims.size());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");
  for (Index k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial_trace: subsystem index out of range");
  }

  std::vector<bool> kept(n, false);
  for (Index k : keep) kept[k] = true;

  // Strides of the full and the reduced index spaces (outermost first).
  std::vector<Index> stride(n), kept_stride(n, 0);
  Index kept_dim = 1;
  for (Index s = n - 1, acc = 1; s >= 0; --s) {
    stride[s] = acc;
    acc *= subsystem_dims[s];
    if (kept[s]) {
      kept_stride[s] = kept_dim;
      kept_dim *= subsystem_dims[s];
    }
  }

  // Split every full index into (kept part, traced part).
  std::vector<Index> kept_part(total), traced_part(total);
  for (Index idx = 0; idx < total; ++idx) {
    Index k = 0, t = 0, rem = idx;
    for (Index s = 0; s < n; ++s) {
      const Index digit = rem / stride[s];
      rem %= stride[s];
      if (kept[s]) {
        k += digit * kept_stride[s];
      } else {
        t = t * subsystem_dims[s] + digit;
      }
    }
    kept_part[idx] = k;
    traced_part[idx] = t;
  }

  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(kept_dim, kept_dim);
  for (Index r = 0; r < total; ++r) {
    for (Index c = 0; c < total; ++c) {
      if (traced_part[r] == traced_part[c]) out(kept_part[r], kept_part[c]) += mat(r, c);
    }
  }
  return out;
}

template <typename Real>
DensityMatrix<Real> partial_trace(const DensityMatrix<Real>& rho,
                                  const std::vector<Index>& subsystem_dims, std::vector<Index> keep) {
  return DensityMatrix<Real>::unchecked(
      partial_trace(rho.matrix(), subsystem_dims, std::move(keep)));
}

}  // namespace relaxsim
