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

// Quantum noise channels in Kraus form.
//
// A channel maps rho -> sum_k E_k rho E_k^dag and is trace preserving iff
// sum_k E_k^dag E_k = I. Kraus sets are not unique, so channels are compared
// through their Choi matrices.

#pragma once

#include <cmath>
#include <sstream>
#include <type_traits>
#include <utility>
#include <vector>

#include "relaxsim/params.hpp"
#include "relaxsim/qmatrix.hpp"

namespace relaxsim {

template <typename Real>
struct ChannelTolerance {
  static constexpr Real completeness = Real(1e-12);
  static constexpr Real choi_equal = Real(1e-10);
};

template <typename Real = double>
class KrausChannel {
 public:
  /// Checks shapes and the completeness relation to `tol`.
  explicit KrausChannel(std::vector<ComplexMatrix<Real>> operators,
                        Real tol = ChannelTolerance<Real>::completeness)
      : ops_(std::move(operators)) {
    check_shapes();
    const Real err = completeness_error();
    if (err > tol) {
      std::ostringstream os;
      os << "KrausChannel: completeness violated (max |sum E^dag E - I| = " << err << ")";
      throw StateError(os.str());
    }
  }

  static KrausChannel unchecked(std::vector<ComplexMatrix<Real>> operators) {
    KrausChannel ch;
    ch.ops_ = std::move(operators);
    ch.check_shapes();
    return ch;
  }

  static KrausChannel identity(Index dim) { return KrausChannel({ComplexMatrix<Real>::Identity(dim, dim)}); }

  Index dim() const { return ops_.front().rows(); }
  std::size_t size() const { return ops_.size(); }
  const std::vector<ComplexMatrix<Real>>& operators() const { return ops_; }
  const ComplexMatrix<Real>& operator[](std::size_t k) const { return ops_[k]; }

  Real completeness_error() const {
    ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(dim(), dim());
    for (const auto& e : ops_) sum.noalias() += e.adjoint() * e;
    return max_abs_diff(sum, ComplexMatrix<Real>::Identity(dim(), dim()));
  }

  /// Copy without operators whose largest entry is at most `tol`.
  KrausChannel pruned(Real tol = Real(0)) const {
    std::vector<ComplexMatrix<Real>> kept;
    for (const auto& e : ops_) {
      if (e.cwiseAbs().maxCoeff() > tol) kept.push_back(e);
    }
    if (kept.empty()) kept.push_back(ComplexMatrix<Real>::Zero(dim(), dim()));
    return unchecked(std::move(kept));
  }

 private:
  KrausChannel() = default;

  void check_shapes() const {
    if (ops_.empty()) throw DimensionError("KrausChannel: operator list is empty");
    const Index d = ops_.front().rows();
    for (const auto& e : ops_) {
      if (e.rows() != d || e.cols() != d || d == 0) {
        throw DimensionError("KrausChannel: operators must all be square of equal dimension");
      }
    }
  }

  std::vector<ComplexMatrix<Real>> ops_;
};

/// Choi matrix sum_ij |i><j| (x) ch(|i><j|), of dimension dim^2. Input index is
/// the outer factor.
template <typename Real = double>
struct ChoiMatrix {
  ComplexMatrix<Real> mat;

  Index channel_dim() const { return static_cast<Index>(std::lround(std::sqrt(double(mat.rows())))); }
};

// ---------------------------------------------------------------------------
// Application

/// sum_k E_k m E_k^dag for an arbitrary square operator m.
template <typename Real, typename Derived>
ComplexMatrix<Real> apply_map(const KrausChannel<Real>& ch, const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != ch.dim() || m.cols() != ch.dim()) {
    throw DimensionError("apply_channel: channel dim " + std::to_string(ch.dim()) +
                         " does not match operand " + detail::shape_of(m.rows(), m.cols()));
  }
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(ch.dim(), ch.dim());
  for (const auto& e : ch.operators()) out.noalias() += e * m * e.adjoint();
  return out;
}

template <typename Real>
DensityMatrix<Real> apply_channel(const KrausChannel<Real>& ch, const DensityMatrix<Real>& rho) {
  return DensityMatrix<Real>::unchecked(apply_map(ch, rho.matrix()));
}

// ---------------------------------------------------------------------------
// Constructors

/// Generalized amplitude damping. `p` weights the decay operators E1, E2
/// (towards |0>), 1 - p the excitation operators E3, E4; the fixed point is
/// diag(p, 1 - p).
template <typename Real = double>
KrausChannel<Real> gad(std::type_identity_t<Real> gamma, std::type_identity_t<Real> p) {
  detail::require_probability(gamma, "gad: gamma");
  detail::require_probability(p, "gad: p");
  const Real sp = std::sqrt(p), sq = std::sqrt(Real(1) - p);
  const Real keep = std::sqrt(Real(1) - gamma), jump = std::sqrt(gamma);
  std::vector<ComplexMatrix<Real>> ops(4, ComplexMatrix<Real>::Zero(2, 2));
  ops[0](0, 0) = sp;
  ops[0](1, 1) = sp * keep;
  ops[1](0, 1) = sp * jump;
  ops[2](0, 0) = sq * keep;
  ops[2](1, 1) = sq;
  ops[3](1, 0) = sq * jump;
  return KrausChannel<Real>(std::move(ops));
}

/// Phase damping: the relative phase survives with probability lambda and is
/// flipped with probability 1 - lambda.
template <typename Real = double>
KrausChannel<Real> pd(std::type_identity_t<Real> lambda) {
  detail::require_probability(lambda, "pd: lambda");
  return KrausChannel<Real>({std::sqrt(lambda) * identity<Real>(2),
                             std::sqrt(Real(1) - lambda) * pauli_z<Real>()});
}

/// Global phase damping on two qubits: both relative phases flip together
/// (Z (x) Z) with probability 1 - lambda. Bell-type coherences rho_03, rho_12
/// are untouched.
template <typename Real = double>
KrausChannel<Real> gpd(std::type_identity_t<Real> lambda) {
  detail::require_probability(lambda, "gpd: lambda");
  return KrausChannel<Real>({std::sqrt(Real(1) - lambda) * tensor(pauli_z<Real>(), pauli_z<Real>()),
                             std::sqrt(lambda) * identity<Real>(4)});
}

/// Local product channel {A_k (x) B_m}.
template <typename Real>
KrausChannel<Real> tensor_channels(const KrausChannel<Real>& a, const KrausChannel<Real>& b) {
  std::vector<ComplexMatrix<Real>> ops;
  ops.reserve(a.size() * b.size());
  for (const auto& ea : a.operators()) {
    for (const auto& eb : b.operators()) ops.push_back(tensor(ea, eb));
  }
  return KrausChannel<Real>::unchecked(std::move(ops));
}

/// outer o inner: apply `inner` first.
template <typename Real>
KrausChannel<Real> compose(const KrausChannel<Real>& outer, const KrausChannel<Real>& inner) {
  if (outer.dim() != inner.dim()) {
    throw DimensionError("compose: channel dimensions differ (" + std::to_string(outer.dim()) +
                         " vs " + std::to_string(inner.dim()) + ")");
  }
  std::vector<ComplexMatrix<Real>> ops;
  ops.reserve(outer.size() * inner.size());
  for (const auto& o : outer.operators()) {
    for (const auto& i : inner.operators()) ops.push_back(o * i);
  }
  return KrausChannel<Real>::unchecked(std::move(ops));
}

/// Spin-3/2 quadrupolar relaxation model: GPD(lambda) o (GAD_A (x) GAD_B).
/// The two factors commute, so the order is a convention.
template <typename Real>
KrausChannel<Real> quadrupolar_channel(const RelaxationParams<Real>& params) {
  params.validate();
  return compose(gpd<Real>(params.lambda), tensor_channels(gad<Real>(params.gamma_a, params.p_a),
                                                     gad<Real>(params.gamma_b, params.p_b)));
}

// ---------------------------------------------------------------------------
// Choi representation

template <typename Real>
ChoiMatrix<Real> choi(const KrausChannel<Real>& ch) {
  const Index d = ch.dim();
  // Entry ((i,a),(j,b)) = sum_k E_k(a,i) conj(E_k(b,j)).
  ComplexMatrix<Real> vecs(d * d, static_cast<Index>(ch.size()));
  for (std::size_t k = 0; k < ch.size(); ++k) {
    const auto& e = ch[k];
    for (Index i = 0; i < d; ++i) {
      for (Index a = 0; a < d; ++a) vecs(i * d + a, static_cast<Index>(k)) = e(a, i);
    }
  }
  return {vecs * vecs.adjoint()};
}

template <typename Real>
Real choi_distance(const KrausChannel<Real>& a, const KrausChannel<Real>& b) {
  if (a.dim() != b.dim()) throw DimensionError("choi_distance: channel dimensions differ");
  return max_abs_diff(choi(a).mat, choi(b).mat);
}

/// Channels are equal when their Choi matrices agree entrywise to `tol`.
template <typename Real>
bool channels_equal(const KrausChannel<Real>& a, const KrausChannel<Real>& b,
                    Real tol = ChannelTolerance<Real>::choi_equal) {
  return a.dim() == b.dim() && choi_distance(a, b) <= tol;
}

}  // namespace relaxsim
