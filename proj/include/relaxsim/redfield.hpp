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

// Analytic relaxation solutions: Bloch equations for spin 1/2, the
// quadrupolar Redfield solution for spin 3/2, and the element-wise action of
// the composite GPD/GAD channel. All times are measured from t0 = 0.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "relaxsim/params.hpp"
#include "relaxsim/qmatrix.hpp"

namespace relaxsim {

// ---------------------------------------------------------------------------
// Spin 1/2

template <typename Real>
using Magnetization = Eigen::Matrix<Real, 3, 1>;

/// GAD/PD parameters that reproduce Bloch relaxation after time t:
/// gamma = 1 - exp(-t/T1), lambda = (1 + exp(-t/tau))/2, tau = 2 T1 T2 / (2 T1 - T2).
template <typename Real>
struct BlochChannelParams {
  Real gamma;
  Real lambda;
};

template <typename Real>
BlochChannelParams<Real> bloch_channel_params(const BlochParams<Real>& bp, Real t) {
  bp.validate();
  if (!(t >= 0)) throw DomainError("bloch: t must be non-negative");
  return {-std::expm1(-t / bp.t1), (1 + std::exp(-t / bp.dephasing_time())) / 2};
}

/// (Mx, My, Mz) after time t.
template <typename Real>
Magnetization<Real> bloch_solution(const Magnetization<Real>& m0, const BlochParams<Real>& bp, Real t) {
  const auto [gamma, lambda] = bloch_channel_params(bp, t);
  const Real transverse = std::sqrt(1 - gamma) * (2 * lambda - 1);
  return {m0.x() * transverse, m0.y() * transverse, m0.z() * (1 - gamma) + gamma * (2 * bp.p_eq - 1)};
}

/// rho = [[(1+Mz)/2, (Mx+iMy)/2], [(Mx-iMy)/2, (1-Mz)/2]], so Mz = rho00 - rho11.
template <typename Real>
DensityMatrix<Real> bloch_state(const Magnetization<Real>& m) {
  ComplexMatrix<Real> rho(2, 2);
  rho << (1 + m.z()) / 2, Complex<Real>(m.x(), m.y()) / Real(2), Complex<Real>(m.x(), -m.y()) / Real(2),
      (1 - m.z()) / 2;
  return DensityMatrix<Real>(std::move(rho));
}

template <typename Real>
Magnetization<Real> magnetization(const DensityMatrix<Real>& rho) {
  if (rho.dim() != 2) throw DimensionError("magnetization: expected a single-qubit state");
  const Complex<Real> c = rho(0, 1);
  return {2 * c.real(), 2 * c.imag(), (rho(0, 0) - rho(1, 1)).real()};
}

// ---------------------------------------------------------------------------
// Spin 3/2

/// gamma_A = 1 - exp(-2 C J2 t), gamma_B = 1 - exp(-2 C J1 t),
/// lambda = (1 + exp(-C J0 t)) / 2.
template <typename Real>
RelaxationParams<Real> channel_params_from_spectral(const SpectralDensities<Real>& sd, Real p_a,
                                                    Real p_b, Real t) {
  sd.validate();
  if (!(t >= 0)) throw DomainError("channel_params_from_spectral: t must be non-negative");
  RelaxationParams<Real> params;
  params.gamma_a = -std::expm1(-2 * sd.c * sd.j2 * t);
  params.gamma_b = -std::expm1(-2 * sd.c * sd.j1 * t);
  params.lambda = (1 + std::exp(-sd.c * sd.j0 * t)) / 2;
  params.p_a = p_a;
  params.p_b = p_b;
  params.t = t;
  params.validate();
  return params;
}

namespace detail {

template <typename Real>
void require_two_qubit(const DensityMatrix<Real>& rho, const char* where) {
  if (rho.dim() != 4) throw DimensionError(std::string(where) + ": expected a 4x4 density matrix");
}

// Fill the lower triangle from the upper one.
template <typename Real>
DensityMatrix<Real> hermitian_from_upper(ComplexMatrix<Real> m) {
  for (Index i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (Index j = i + 1; j < m.cols(); ++j) m(j, i) = std::conj(m(i, j));
  }
  return DensityMatrix<Real>::unchecked(std::move(m));
}

}  // namespace detail

/// Redfield solution for pure quadrupolar relaxation of a spin 3/2. Levels
/// |3/2>, |1/2>, |-1/2>, |-3/2> map to |00>, |01>, |10>, |11>. The
/// population mode amplitudes R1..R3 are taken from the initial state.
template <typename Real>
DensityMatrix<Real> redfield_evolve(const DensityMatrix<Real>& rho0, const DensityMatrix<Real>& rho_eq,
                                    const SpectralDensities<Real>& sd, Real t) {
  detail::require_two_qubit(rho0, "redfield_evolve");
  detail::require_two_qubit(rho_eq, "redfield_evolve");
  sd.validate();
  if (!(t >= 0)) throw DomainError("redfield_evolve: t must be non-negative");
  const auto& eq = rho_eq.matrix();
  if ((eq - ComplexMatrix<Real>(eq.diagonal().asDiagonal())).cwiseAbs().maxCoeff() > Tolerance<Real>::hermitian) {
    throw StateError("redfield_evolve: equilibrium state must be diagonal");
  }

  const Real c = sd.c;
  const Real e_j2 = std::exp(-2 * c * sd.j2 * t);       // qubit A populations
  const Real e_j1 = std::exp(-2 * c * sd.j1 * t);       // qubit B populations
  const Real e_j12 = std::exp(-2 * c * (sd.j1 + sd.j2) * t);
  const Real d01 = std::exp(-c * (sd.j0 + sd.j1) * t);
  const Real d02 = std::exp(-c * (sd.j0 + sd.j2) * t);
  const Real d03 = std::exp(-c * (sd.j1 + sd.j2) * t);

  const auto& r = rho0.matrix();
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(4, 4);
  out(0, 1) = ((r(0, 1) + r(2, 3)) + (r(0, 1) - r(2, 3)) * e_j2) * d01 / Real(2);
  out(2, 3) = ((r(0, 1) + r(2, 3)) - (r(0, 1) - r(2, 3)) * e_j2) * d01 / Real(2);
  out(0, 2) = ((r(0, 2) + r(1, 3)) + (r(0, 2) - r(1, 3)) * e_j1) * d02 / Real(2);
  out(1, 3) = ((r(0, 2) + r(1, 3)) - (r(0, 2) - r(1, 3)) * e_j1) * d02 / Real(2);
  out(1, 2) = r(1, 2) * d03;
  out(0, 3) = r(0, 3) * d03;

  std::array<Real, 4> dev{};
  for (int i = 0; i < 4; ++i) dev[i] = (r(i, i) - eq(i, i)).real();
  const Real r1 = -dev[0] + dev[1] + dev[2] - dev[3];
  const Real r2 = dev[0] + dev[1] - dev[2] - dev[3];
  const Real r3 = dev[0] - dev[1] + dev[2] - dev[3];
  out(0, 0) = eq(0, 0).real() - (r1 * e_j12 - r2 * e_j2 - r3 * e_j1) / 4;
  out(1, 1) = eq(1, 1).real() + (r1 * e_j12 + r2 * e_j2 - r3 * e_j1) / 4;
  out(2, 2) = eq(2, 2).real() + (r1 * e_j12 - r2 * e_j2 + r3 * e_j1) / 4;
  out(3, 3) = eq(3, 3).real() - (r1 * e_j12 + r2 * e_j2 + r3 * e_j1) / 4;
  return detail::hermitian_from_upper(std::move(out));
}

/// Element-wise action of GPD(lambda) o (GAD(gamma_A, P_A) (x) GAD(gamma_B, P_B)).
template <typename Real>
DensityMatrix<Real> closed_form_channel_evolve(const DensityMatrix<Real>& rho0,
                                               const RelaxationParams<Real>& params) {
  detail::require_two_qubit(rho0, "closed_form_channel_evolve");
  params.validate();
  const Real ga = params.gamma_a, gb = params.gamma_b, pa = params.p_a, pb = params.p_b;
  const Real dephase = 2 * params.lambda - 1;
  const Real keep_a = std::sqrt(1 - ga), keep_b = std::sqrt(1 - gb);

  // Single-qubit population transfer weights: stay in 0, 1 -> 0, 0 -> 1, stay in 1.
  const Real a00 = 1 - ga * (1 - pa), a10 = ga * pa, a01 = ga * (1 - pa), a11 = 1 - ga * pa;
  const Real b00 = 1 - gb * (1 - pb), b10 = gb * pb, b01 = gb * (1 - pb), b11 = 1 - gb * pb;

  const auto& r = rho0.matrix();
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(4, 4);
  out(0, 1) = (a00 * r(0, 1) + a10 * r(2, 3)) * keep_b * dephase;
  out(2, 3) = (a01 * r(0, 1) + a11 * r(2, 3)) * keep_b * dephase;
  out(0, 2) = (b00 * r(0, 2) + b10 * r(1, 3)) * keep_a * dephase;
  out(1, 3) = (b01 * r(0, 2) + b11 * r(1, 3)) * keep_a * dephase;
  out(1, 2) = r(1, 2) * keep_a * keep_b;
  out(0, 3) = r(0, 3) * keep_a * keep_b;

  const Real p0 = r(0, 0).real(), p1 = r(1, 1).real(), p2 = r(2, 2).real(), p3 = r(3, 3).real();
  out(0, 0) = a00 * b00 * p0 + a00 * b10 * p1 + a10 * b00 * p2 + a10 * b10 * p3;
  out(1, 1) = a00 * b01 * p0 + a00 * b11 * p1 + a10 * b01 * p2 + a10 * b11 * p3;
  out(2, 2) = a01 * b00 * p0 + a01 * b10 * p1 + a11 * b00 * p2 + a11 * b10 * p3;
  out(3, 3) = a01 * b01 * p0 + a01 * b11 * p1 + a11 * b01 * p2 + a11 * b11 * p3;
  return detail::hermitian_from_upper(std::move(out));
}

// ---------------------------------------------------------------------------
// Initial states

enum class StateKind { Label00, Label01, Label10, Label11, Uniform, Bell };

inline std::string_view to_string(StateKind kind) {
  switch (kind) {
    case StateKind::Label00: return "label00";
    case StateKind::Label01: return "label01";
    case StateKind::Label10: return "label10";
    case StateKind::Label11: return "label11";
    case StateKind::Uniform: return "uniform";
    case StateKind::Bell: return "bell";
  }
  return "?";
}

inline constexpr std::array<StateKind, 6> kAllStateKinds{StateKind::Label00, StateKind::Label01,
                                                         StateKind::Label10, StateKind::Label11,
                                                         StateKind::Uniform, StateKind::Bell};

inline StateKind parse_state_kind(std::string_view name) {
  for (auto kind : kAllStateKinds) {
    if (name == to_string(kind)) return kind;
  }
  throw DomainError("unknown state kind '" + std::string(name) + "'");
}

/// Pseudo-pure state (1 - eps)/4 I + eps |psi><psi|.
template <typename Real = double>
DensityMatrix<Real> make_state(StateKind kind, Real epsilon) {
  if (!(epsilon > 0 && epsilon <= 1)) throw DomainError("make_state: epsilon must lie in (0,1]");
  ComplexVector<Real> psi = ComplexVector<Real>::Zero(4);
  switch (kind) {
    case StateKind::Label00: psi(0) = 1; break;
    case StateKind::Label01: psi(1) = 1; break;
    case StateKind::Label10: psi(2) = 1; break;
    case StateKind::Label11: psi(3) = 1; break;
    case StateKind::Uniform: psi.setConstant(Real(0.5)); break;
    case StateKind::Bell:
      psi(0) = psi(3) = 1 / std::sqrt(Real(2));
      break;
  }
  ComplexMatrix<Real> rho = (1 - epsilon) / 4 * identity<Real>(4) + epsilon * psi * psi.adjoint();
  return DensityMatrix<Real>(std::move(rho));
}

// ---------------------------------------------------------------------------
// Entanglement

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), l_i the decreasing square
/// roots of the eigenvalues of rho (Y(x)Y) rho* (Y(x)Y). These equal the
/// eigenvalues of the Hermitian sqrt(sqrt(rho) rho~ sqrt(rho)).
template <typename Real>
Real concurrence(const DensityMatrix<Real>& rho) {
  detail::require_two_qubit(rho, "concurrence");
  const ComplexMatrix<Real> yy = tensor(pauli_y<Real>(), pauli_y<Real>());
  const ComplexMatrix<Real> flipped = yy * rho.matrix().conjugate() * yy;
  const ComplexMatrix<Real> root = sqrt_psd(rho.matrix());
  ComplexMatrix<Real> r = root * flipped * root;
  r = (r + r.adjoint()).eval() / Real(2);
  RealVector<Real> ev = eigenvalues_hermitian(r).cwiseMax(Real(0)).cwiseSqrt();
  // ascending: ev(3) is the largest
  return std::max(Real(0), ev(3) - ev(2) - ev(1) - ev(0));
}

}  // namespace relaxsim
