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

// Gate-level simulation of system + environment dilations.
//
// Qubit 0 is the top wire of a circuit diagram and the outermost tensor
// factor. System qubits occupy the lowest indices, environment qubits follow.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relaxsim/channels.hpp"
#include "relaxsim/params.hpp"
#include "relaxsim/qmatrix.hpp"

namespace relaxsim {

enum class GateKind { RY, X, Z, SWAP };
enum class Polarity { Closed, Open };

struct Control {
  int qubit;
  Polarity polarity;
};

inline Control closed(int qubit) { return {qubit, Polarity::Closed}; }
inline Control open(int qubit) { return {qubit, Polarity::Open}; }

template <typename Real = double>
struct Gate {
  GateKind kind;
  std::vector<int> targets;
  std::vector<Control> controls;
  Real angle = 0;  // RY only

  static Gate ry(Real angle, int target, std::vector<Control> controls = {}) {
    return {GateKind::RY, {target}, std::move(controls), angle};
  }
  static Gate x(int target, std::vector<Control> controls = {}) {
    return {GateKind::X, {target}, std::move(controls), 0};
  }
  static Gate z(int target, std::vector<Control> controls = {}) {
    return {GateKind::Z, {target}, std::move(controls), 0};
  }
  static Gate swap(int a, int b, std::vector<Control> controls = {}) {
    return {GateKind::SWAP, {a, b}, std::move(controls), 0};
  }

  void validate(int n_qubits) const {
    const std::size_t want = kind == GateKind::SWAP ? 2 : 1;
    if (targets.size() != want) throw DimensionError("Gate: wrong number of targets");
    std::vector<int> used = targets;
    for (const auto& c : controls) used.push_back(c.qubit);
    for (int q : used) {
      if (q < 0 || q >= n_qubits) {
        throw DimensionError("Gate: qubit index " + std::to_string(q) + " outside register of " +
                             std::to_string(n_qubits) + " qubits");
      }
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
      throw DimensionError("Gate: target and control qubits must be distinct");
    }
  }

  /// 2x2 action on the target for single-target kinds.
  ComplexMatrix<Real> local_matrix() const {
    switch (kind) {
      case GateKind::RY: {
        ComplexMatrix<Real> m(2, 2);
        const Real c = std::cos(angle / 2), s = std::sin(angle / 2);
        m << c, -s, s, c;
        return m;
      }
      case GateKind::X:
        return pauli_x<Real>();
      case GateKind::Z:
        return pauli_z<Real>();
      case GateKind::SWAP:
        break;
    }
    throw DimensionError("Gate: SWAP has no single-qubit matrix");
  }
};

template <typename Real = double>
class Circuit {
 public:
  explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits <= 0 || n_qubits > 10) throw DimensionError("Circuit: register must hold 1..10 qubits");
  }

  Circuit& add(Gate<Real> g) {
    g.validate(n_qubits_);
    gates_.push_back(std::move(g));
    return *this;
  }

  int n_qubits() const { return n_qubits_; }
  Index dim() const { return Index(1) << n_qubits_; }
  const std::vector<Gate<Real>>& gates() const { return gates_; }

 private:
  int n_qubits_;
  std::vector<Gate<Real>> gates_;
};

/// Environment qubits (one pure state each), placed after `system_qubit_count`
/// system qubits.
template <typename Real = double>
struct EnvironmentSpec {
  std::vector<PureState<Real>> env_qubit_states;
  int system_qubit_count = 1;

  int env_qubit_count() const { return static_cast<int>(env_qubit_states.size()); }
  Index system_dim() const { return Index(1) << system_qubit_count; }
  Index env_dim() const { return Index(1) << env_qubit_count(); }

  void validate() const {
    if (system_qubit_count <= 0) throw DimensionError("EnvironmentSpec: need at least one system qubit");
    for (const auto& s : env_qubit_states) {
      if (s.dim() != 2) throw DimensionError("EnvironmentSpec: environment states must be single qubits");
    }
  }

  ComplexVector<Real> joint_state() const {
    ComplexVector<Real> v = ComplexVector<Real>::Ones(1);
    for (const auto& s : env_qubit_states) {
      ComplexVector<Real> next(v.size() * 2);
      for (Index i = 0; i < v.size(); ++i) next.segment(2 * i, 2) = v(i) * s.amplitudes();
      v = std::move(next);
    }
    return v;
  }
};

// ---------------------------------------------------------------------------
// Unitaries

namespace detail {

inline std::uint64_t qubit_bit(int qubit, int n_qubits) {
  return std::uint64_t(1) << (n_qubits - 1 - qubit);
}

inline bool controls_fire(std::uint64_t index, const std::vector<Control>& controls, int n_qubits) {
  for (const auto& c : controls) {
    const bool set = (index & qubit_bit(c.qubit, n_qubits)) != 0;
    if (set != (c.polarity == Polarity::Closed)) return false;
  }
  return true;
}

}  // namespace detail

/// In-place m <- G m for a gate acting on an n-qubit register.
template <typename Real, typename Derived>
void apply_gate(const Gate<Real>& g, int n_qubits, Eigen::MatrixBase<Derived>& m) {
  g.validate(n_qubits);
  const auto dim = std::uint64_t(1) << n_qubits;
  if (m.rows() != static_cast<Index>(dim)) throw DimensionError("apply_gate: operand has wrong row count");

  if (g.kind == GateKind::SWAP) {
    const auto a = detail::qubit_bit(g.targets[0], n_qubits);
    const auto b = detail::qubit_bit(g.targets[1], n_qubits);
    for (std::uint64_t r = 0; r < dim; ++r) {
      // Visit each (a=1,b=0) <-> (a=0,b=1) pair once.
      if ((r & a) && !(r & b) && detail::controls_fire(r, g.controls, n_qubits)) {
        m.row(static_cast<Index>(r)).swap(m.row(static_cast<Index>((r & ~a) | b)));
      }
    }
    return;
  }

  const auto u = g.local_matrix();
  const auto bit = detail::qubit_bit(g.targets[0], n_qubits);
  for (std::uint64_t r0 = 0; r0 < dim; ++r0) {
    if ((r0 & bit) || !detail::controls_fire(r0, g.controls, n_qubits)) continue;
    const auto i0 = static_cast<Index>(r0), i1 = static_cast<Index>(r0 | bit);
    const ComplexVector<Real> row0 = m.row(i0).transpose();
    const ComplexVector<Real> row1 = m.row(i1).transpose();
    m.row(i0) = (u(0, 0) * row0 + u(0, 1) * row1).transpose();
    m.row(i1) = (u(1, 0) * row0 + u(1, 1) * row1).transpose();
  }
}

template <typename Real>
ComplexMatrix<Real> gate_unitary(const Gate<Real>& g, int n_qubits) {
  if (n_qubits <= 0 || n_qubits > 10) throw DimensionError("gate_unitary: register must hold 1..10 qubits");
  ComplexMatrix<Real> u = identity<Real>(Index(1) << n_qubits);
  apply_gate(g, n_qubits, u);
  return u;
}

/// Product of the gate unitaries; the first gate listed acts first.
template <typename Real>
ComplexMatrix<Real> circuit_unitary(const Circuit<Real>& c) {
  ComplexMatrix<Real> u = identity<Real>(c.dim());
  for (const auto& g : c.gates()) apply_gate(g, c.n_qubits(), u);
  return u;
}

// ---------------------------------------------------------------------------
// Open-system evolution

namespace detail {

template <typename Real>
void require_layout(const Circuit<Real>& c, const EnvironmentSpec<Real>& env, const char* where) {
  env.validate();
  if (c.n_qubits() != env.system_qubit_count + env.env_qubit_count()) {
    throw DimensionError(std::string(where) + ": circuit has " + std::to_string(c.n_qubits()) +
                         " qubits but system + environment = " +
                         std::to_string(env.system_qubit_count + env.env_qubit_count()));
  }
}

// U (I_sys (x) |env>), a (sys*env) x sys isometry.
template <typename Real>
ComplexMatrix<Real> dilation_isometry(const Circuit<Real>& c, const EnvironmentSpec<Real>& env) {
  const ComplexMatrix<Real> u = circuit_unitary(c);
  const ComplexVector<Real> e = env.joint_state();
  const Index ds = env.system_dim(), de = env.env_dim();
  ComplexMatrix<Real> v = ComplexMatrix<Real>::Zero(ds * de, ds);
  for (Index i = 0; i < ds; ++i) {
    for (Index m = 0; m < de; ++m) {
      if (e(m) != Complex<Real>(0)) v.col(i) += e(m) * u.col(i * de + m);
    }
  }
  return v;
}

}  // namespace detail

/// Tr_env[ U (rho (x) rho_env) U^dag ] for a pure product environment.
template <typename Real>
DensityMatrix<Real> evolve_open(const Circuit<Real>& c, const DensityMatrix<Real>& system_rho,
                                const EnvironmentSpec<Real>& env) {
  detail::require_layout(c, env, "evolve_open");
  if (system_rho.dim() != env.system_dim()) {
    throw DimensionError("evolve_open: state dimension " + std::to_string(system_rho.dim()) +
                         " does not match " + std::to_string(env.system_qubit_count) + " system qubits");
  }
  const ComplexMatrix<Real> v = detail::dilation_isometry(c, env);
  const ComplexMatrix<Real> joint = v * system_rho.matrix() * v.adjoint();
  const std::vector<Index> dims{env.system_dim(), env.env_dim()};
  return DensityMatrix<Real>::unchecked(partial_trace(joint, dims, {0}));
}

/// E_k = (I (x) <k|) U (I (x) |env>) for every environment basis state k.
template <typename Real>
KrausChannel<Real> extract_kraus(const Circuit<Real>& c, const EnvironmentSpec<Real>& env) {
  detail::require_layout(c, env, "extract_kraus");
  const ComplexMatrix<Real> v = detail::dilation_isometry(c, env);
  const Index ds = env.system_dim(), de = env.env_dim();
  std::vector<ComplexMatrix<Real>> ops(de, ComplexMatrix<Real>::Zero(ds, ds));
  for (Index k = 0; k < de; ++k) {
    for (Index a = 0; a < ds; ++a) ops[k].row(a) = v.row(a * de + k);
  }
  return KrausChannel<Real>(std::move(ops), Real(1e-11));
}

// ---------------------------------------------------------------------------
// Builders for the relaxation dilations

enum class CircuitKind { AD, EXCITE, GAD, PD, BLOCH, GPD, QUADRUPOLAR };

inline std::string_view to_string(CircuitKind kind) {
  switch (kind) {
    case CircuitKind::AD: return "AD";
    case CircuitKind::EXCITE: return "EXCITE";
    case CircuitKind::GAD: return "GAD";
    case CircuitKind::PD: return "PD";
    case CircuitKind::BLOCH: return "BLOCH";
    case CircuitKind::GPD: return "GPD";
    case CircuitKind::QUADRUPOLAR: return "QUADRUPOLAR";
  }
  return "?";
}

inline CircuitKind parse_circuit_kind(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
  for (auto kind : {CircuitKind::AD, CircuitKind::EXCITE, CircuitKind::GAD, CircuitKind::PD,
                    CircuitKind::BLOCH, CircuitKind::GPD, CircuitKind::QUADRUPOLAR}) {
    if (upper == to_string(kind)) return kind;
  }
  throw DomainError("unknown circuit kind '" + std::string(name) + "'");
}

/// Rotation angles (radians) and equilibrium populations consumed by the builders.
/// Each builder reads only the fields it needs and rejects missing ones.
template <typename Real = double>
struct CircuitAngles {
  std::optional<Real> alpha, beta, theta;
  std::optional<Real> alpha_a, beta_a, alpha_b, beta_b;
  std::optional<Real> p, p_a, p_b;
};

/// RY angle taking |1>|0> to sqrt(1-gamma)|1>|0> + sqrt(gamma)|1>|1> (decay branch).
template <typename Real>
Real damping_angle(Real gamma) {
  detail::require_probability(gamma, "gamma");
  return 2 * std::asin(std::sqrt(gamma));
}

/// RY angle of the excitation branch. Equals damping_angle(gamma) + pi up to the
/// sign of one Kraus operator, which leaves the channel unchanged.
template <typename Real>
Real excitation_angle(Real gamma) {
  detail::require_probability(gamma, "gamma");
  return 2 * std::acos(std::sqrt(gamma));
}

/// RY angle whose controlled application scales coherences by 2 lambda - 1.
template <typename Real>
Real dephasing_angle(Real lambda) {
  detail::require_probability(lambda, "lambda");
  return 2 * std::acos(std::clamp(2 * lambda - 1, Real(-1), Real(1)));
}

template <typename Real>
CircuitAngles<Real> gad_angles(Real gamma, Real p) {
  CircuitAngles<Real> a;
  a.alpha = damping_angle(gamma);
  a.beta = excitation_angle(gamma);
  a.p = p;
  return a;
}

template <typename Real>
CircuitAngles<Real> quadrupolar_angles(const RelaxationParams<Real>& params) {
  params.validate();
  CircuitAngles<Real> a;
  a.theta = dephasing_angle(params.lambda);
  a.alpha_a = damping_angle(params.gamma_a);
  a.beta_a = excitation_angle(params.gamma_a);
  a.alpha_b = damping_angle(params.gamma_b);
  a.beta_b = excitation_angle(params.gamma_b);
  a.p_a = params.p_a;
  a.p_b = params.p_b;
  return a;
}

template <typename Real = double>
struct BuiltCircuit {
  Circuit<Real> circuit;
  EnvironmentSpec<Real> env;
};

namespace detail {

template <typename Real>
Real need(const std::optional<Real>& v, const char* name, CircuitKind kind) {
  if (!v) throw DomainError(std::string(to_string(kind)) + " circuit: missing '" + name + "'");
  return *v;
}

// Excitation branch of a GAD dilation on (system, ancilla), active when the
// equilibrium qubit `eq` is |1>.
template <typename Real>
void add_excitation(Circuit<Real>& c, int sys, int anc, int eq, Real beta) {
  c.add(Gate<Real>::x(anc, {closed(eq)}));
  c.add(Gate<Real>::ry(beta, anc, {open(sys), closed(eq)}));
  c.add(Gate<Real>::x(sys, {open(anc), closed(eq)}));
  c.add(Gate<Real>::z(sys, {closed(anc), closed(eq)}));
  c.add(Gate<Real>::swap(sys, anc, {closed(eq)}));
}

// Decay branch followed by excitation branch, selected by `eq`.
template <typename Real>
void add_gad(Circuit<Real>& c, int sys, int anc, int eq, Real alpha, Real beta) {
  c.add(Gate<Real>::ry(alpha, anc, {closed(sys), open(eq)}));
  c.add(Gate<Real>::x(sys, {closed(anc), open(eq)}));
  add_excitation(c, sys, anc, eq, beta);
}

}  // namespace detail

/// Gate lists of the relaxation dilations with environments in their initial states.
///
///   AD          1 system + |0>             amplitude damping towards |0>
///   EXCITE      1 system + |0>             excitation towards |1>
///   GAD         1 system + |0>|Phi_eq>     generalized amplitude damping
///   PD          1 system + |0>             phase damping
///   BLOCH       1 system + |0>|0>|Phi_eq>  PD followed by GAD
///   GPD         2 system + |0>             global phase damping
///   QUADRUPOLAR 2 system + |000>|Phi_A>|Phi_B>  GPD followed by GAD_A (x) GAD_B
template <typename Real>
BuiltCircuit<Real> build_circuit(CircuitKind kind, const CircuitAngles<Real>& angles) {
  using G = Gate<Real>;
  const auto zero = PureState<Real>::basis(2, 0);
  auto eq = [&](const std::optional<Real>& p, const char* name) {
    return PureState<Real>::equilibrium_qubit(detail::need(p, name, kind));
  };

  switch (kind) {
    case CircuitKind::AD: {
      Circuit<Real> c(2);
      c.add(G::ry(detail::need(angles.alpha, "alpha", kind), 1, {closed(0)}));
      c.add(G::x(0, {closed(1)}));
      return {std::move(c), {{zero}, 1}};
    }
    case CircuitKind::EXCITE: {
      const Real beta = detail::need(angles.beta, "beta", kind);
      Circuit<Real> c(2);
      c.add(G::x(1));
      c.add(G::ry(beta, 1, {open(0)}));
      c.add(G::x(0, {open(1)}));
      c.add(G::z(0, {closed(1)}));
      c.add(G::swap(0, 1));
      return {std::move(c), {{zero}, 1}};
    }
    case CircuitKind::GAD: {
      Circuit<Real> c(3);
      detail::add_gad(c, 0, 1, 2, detail::need(angles.alpha, "alpha", kind),
                      detail::need(angles.beta, "beta", kind));
      return {std::move(c), {{zero, eq(angles.p, "p")}, 1}};
    }
    case CircuitKind::PD: {
      Circuit<Real> c(2);
      c.add(G::ry(detail::need(angles.theta, "theta", kind), 1, {closed(0)}));
      return {std::move(c), {{zero}, 1}};
    }
    case CircuitKind::BLOCH: {
      Circuit<Real> c(4);
      c.add(G::ry(detail::need(angles.theta, "theta", kind), 1, {closed(0)}));
      detail::add_gad(c, 0, 2, 3, detail::need(angles.alpha, "alpha", kind),
                      detail::need(angles.beta, "beta", kind));
      return {std::move(c), {{zero, zero, eq(angles.p, "p")}, 1}};
    }
    case CircuitKind::GPD: {
      const Real theta = detail::need(angles.theta, "theta", kind);
      Circuit<Real> c(3);
      c.add(G::ry(theta, 2, {closed(0), open(1)}));
      c.add(G::ry(theta, 2, {open(0), closed(1)}));
      return {std::move(c), {{zero}, 2}};
    }
    case CircuitKind::QUADRUPOLAR: {
      const Real theta = detail::need(angles.theta, "theta", kind);
      Circuit<Real> c(7);
      // Wires: 0,1 system; 2 GPD ancilla; 3,4 GAD ancillas; 5,6 equilibrium qubits.
      c.add(G::ry(theta, 2, {closed(0), open(1)}));
      c.add(G::ry(theta, 2, {open(0), closed(1)}));
      detail::add_gad(c, 0, 3, 5, detail::need(angles.alpha_a, "alpha_a", kind),
                      detail::need(angles.beta_a, "beta_a", kind));
      detail::add_gad(c, 1, 4, 6, detail::need(angles.alpha_b, "alpha_b", kind),
                      detail::need(angles.beta_b, "beta_b", kind));
      return {std::move(c), {{zero, zero, zero, eq(angles.p_a, "p_a"), eq(angles.p_b, "p_b")}, 2}};
    }
  }
  throw DomainError("build_circuit: unknown circuit kind");
}

// ---------------------------------------------------------------------------
// Debug listing

/// One line per gate, e.g. `RY(theta=1.5708) target=2 controls=[(0,closed),(6,open)]`.
template <typename Real>
std::string format_gate(const Gate<Real>& g) {
  std::ostringstream os;
  switch (g.kind) {
    case GateKind::RY: os << "RY(theta=" << g.angle << ")"; break;
    case GateKind::X: os << "X"; break;
    case GateKind::Z: os << "Z"; break;
    case GateKind::SWAP: os << "SWAP"; break;
  }
  os << " target=";
  for (std::size_t i = 0; i < g.targets.size(); ++i) os << (i ? "," : "") << g.targets[i];
  os << " controls=[";
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    os << (i ? "," : "") << "(" << g.controls[i].qubit << ","
       << (g.controls[i].polarity == Polarity::Closed ? "closed" : "open") << ")";
  }
  os << "]";
  return os.str();
}

template <typename Real>
std::string dump(const Circuit<Real>& c) {
  std::string out;
  for (const auto& g : c.gates()) out += format_gate(g) + "\n";
  return out;
}

}  // namespace relaxsim
