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

#include <fstream>
#include <numbers>
#include <sstream>

#include "relaxsim/channels.hpp"
#include "relaxsim/circuit.hpp"
#include "relaxsim/redfield.hpp"
#include "test_support.hpp"

using namespace relaxsim;
using namespace relaxsim::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Column-by-column embedding: bit of qubit q is (n - 1 - q).
Mat reference_unitary(const Gate<double>& g, int n) {
  const Index dim = Index(1) << n;
  auto bit = [&](Index idx, int q) { return (idx >> (n - 1 - q)) & 1; };
  auto flip = [&](Index idx, int q) { return idx ^ (Index(1) << (n - 1 - q)); };
  Mat u = Mat::Zero(dim, dim);
  for (Index col = 0; col < dim; ++col) {
    bool fire = true;
    for (const auto& c : g.controls) fire &= bit(col, c.qubit) == (c.polarity == Polarity::Closed ? 1 : 0);
    if (!fire) {
      u(col, col) = 1;
      continue;
    }
    const int t = g.targets[0];
    switch (g.kind) {
      case GateKind::X: u(flip(col, t), col) = 1; break;
      case GateKind::Z: u(col, col) = bit(col, t) ? -1 : 1; break;
      case GateKind::RY: {
        const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
        if (bit(col, t) == 0) {
          u(col, col) = c;
          u(flip(col, t), col) = s;
        } else {
          u(col, col) = c;
          u(flip(col, t), col) = -s;
        }
        break;
      }
      case GateKind::SWAP: {
        const int a = g.targets[0], b = g.targets[1];
        Index out = col;
        if (bit(col, a) != bit(col, b)) out = flip(flip(col, a), b);
        u(out, col) = 1;
        break;
      }
    }
  }
  return u;
}

Gate<double> random_gate(int n) {
  std::vector<int> qubits(n);
  std::iota(qubits.begin(), qubits.end(), 0);
  std::shuffle(qubits.begin(), qubits.end(), rng());
  const auto kind = static_cast<GateKind>(std::uniform_int_distribution<int>(0, n >= 2 ? 3 : 2)(rng()));
  const int n_targets = kind == GateKind::SWAP ? 2 : 1;
  const int n_controls = std::uniform_int_distribution<int>(0, n - n_targets)(rng());
  Gate<double> g{kind, {}, {}, uniform(-2 * kPi, 2 * kPi)};
  for (int i = 0; i < n_targets; ++i) g.targets.push_back(qubits[i]);
  for (int i = 0; i < n_controls; ++i) {
    g.controls.push_back({qubits[n_targets + i], uniform() < 0.5 ? Polarity::Closed : Polarity::Open});
  }
  return g;
}

const std::vector<CircuitKind> kAllKinds{CircuitKind::AD,  CircuitKind::EXCITE, CircuitKind::GAD,
                                         CircuitKind::PD,  CircuitKind::BLOCH,  CircuitKind::GPD,
                                         CircuitKind::QUADRUPOLAR};

CircuitAngles<double> random_angles() {
  CircuitAngles<double> a;
  a.alpha = uniform(0, kPi);
  a.beta = uniform(0, kPi);
  a.theta = uniform(0, kPi);
  a.alpha_a = uniform(0, kPi);
  a.beta_a = uniform(0, kPi);
  a.alpha_b = uniform(0, kPi);
  a.beta_b = uniform(0, kPi);
  a.p = uniform();
  a.p_a = uniform();
  a.p_b = uniform();
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gate_unitary examples") {
  Mat ry_pi(2, 2);
  ry_pi << 0, -1, 1, 0;
  CHECK(max_abs(gate_unitary(Gate<double>::ry(kPi, 0), 1), ry_pi) <= 1e-16);

  Mat cnot = Mat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  CHECK(gate_unitary(Gate<double>::x(1, {closed(0)}), 2) == cnot);

  const Mat u = gate_unitary(Gate<double>::x(0, {open(1)}), 2);
  CHECK(u(2, 0) == cd(1));  // |00> -> |10>
  CHECK(u(1, 1) == cd(1));  // |01> -> |01>

  // RY(phi)|0> = cos(phi/2)|0> + sin(phi/2)|1>
  const Mat r = gate_unitary(Gate<double>::ry(0.7, 0), 1);
  CHECK(r(0, 0).real() == doctest::Approx(std::cos(0.35)));
  CHECK(r(1, 0).real() == doctest::Approx(std::sin(0.35)));
}

TEST_CASE("gate_unitary matches the column-by-column embedding") {
  for (int rep = 0; rep < 200; ++rep) {
    const int n = std::uniform_int_distribution<int>(1, 5)(rng());
    const auto g = random_gate(n);
    const Mat u = gate_unitary(g, n);
    CHECK(max_abs(u, reference_unitary(g, n)) <= 1e-15);
    CHECK(unitarity_error(u) <= 1e-14);
  }
}

TEST_CASE("apply_gate acts on the left") {
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3;
    const auto g = random_gate(n);
    Mat m = random_matrix(8, 5);
    const Mat expected = gate_unitary(g, n) * m;
    apply_gate(g, n, m);
    CHECK(max_abs(m, expected) <= 1e-14);
  }
}

TEST_CASE("gate validation") {
  CHECK_THROWS_AS(gate_unitary(Gate<double>::x(2), 2), DimensionError);
  CHECK_THROWS_AS(gate_unitary(Gate<double>::x(-1), 2), DimensionError);
  CHECK_THROWS_AS(gate_unitary(Gate<double>::x(0, {closed(0)}), 2), DimensionError);
  CHECK_THROWS_AS(gate_unitary(Gate<double>::swap(1, 1), 2), DimensionError);
  CHECK_THROWS_AS(gate_unitary(Gate<double>{GateKind::SWAP, {0}, {}, 0}, 2), DimensionError);
  CHECK_THROWS_AS(gate_unitary(Gate<double>{GateKind::X, {0, 1}, {}, 0}, 2), DimensionError);
  CHECK_THROWS_AS(Circuit<double>(0), DimensionError);
  CHECK_THROWS_AS(Circuit<double>(11), DimensionError);
  Circuit<double> c(2);
  CHECK_THROWS_AS(c.add(Gate<double>::z(3)), DimensionError);
}

TEST_CASE("circuit_unitary ordering") {
  CHECK(circuit_unitary(Circuit<double>(3)) == identity(8));

  Circuit<double> xx(2);
  xx.add(Gate<double>::x(0)).add(Gate<double>::x(0));
  CHECK(circuit_unitary(xx) == identity(4));

  for (int rep = 0; rep < 20; ++rep) {
    Circuit<double> c(4);
    Mat expected = identity(16);
    for (int k = 0; k < 6; ++k) {
      const auto g = random_gate(4);
      c.add(g);
      expected = reference_unitary(g, 4) * expected;
    }
    CHECK(max_abs(circuit_unitary(c), expected) <= 1e-14);
  }
}

TEST_CASE("angle helpers") {
  CHECK(damping_angle(0.0) == 0.0);
  CHECK(damping_angle(1.0) == doctest::Approx(kPi));
  CHECK(excitation_angle(0.0) == doctest::Approx(kPi));
  CHECK(dephasing_angle(1.0) == 0.0);
  CHECK(dephasing_angle(0.5) == doctest::Approx(kPi));
  CHECK_THROWS_AS(damping_angle(1.5), DomainError);
  CHECK_THROWS_AS(dephasing_angle(-0.5), DomainError);
}

TEST_CASE("AD circuit extracts the amplitude damping pair") {
  for (int rep = 0; rep < 10; ++rep) {
    const double g = uniform();
    CircuitAngles<double> a;
    a.alpha = 2 * std::asin(std::sqrt(g));
    const auto built = build_circuit(CircuitKind::AD, a);
    const auto ch = extract_kraus(built.circuit, built.env);
    REQUIRE(ch.size() == 2);
    Mat e0 = Mat::Zero(2, 2), e1 = Mat::Zero(2, 2);
    e0(0, 0) = 1;
    e0(1, 1) = std::sqrt(1 - g);
    e1(0, 1) = std::sqrt(g);
    CHECK(max_abs(ch[0], e0) <= 1e-15);
    CHECK(max_abs(ch[1], e1) <= 1e-15);
  }
}

TEST_CASE("EXCITE circuit: both angle conventions give the excitation channel") {
  for (int rep = 0; rep < 10; ++rep) {
    const double g = uniform();
    Mat e3 = Mat::Zero(2, 2), e4 = Mat::Zero(2, 2);
    e3(0, 0) = std::sqrt(1 - g);
    e3(1, 1) = 1;
    e4(1, 0) = std::sqrt(g);
    const Mat target = choi_of_ops({e3, e4}, 2);

    for (double beta : {2 * std::acos(std::sqrt(g)), 2 * std::asin(std::sqrt(g)) + kPi}) {
      CircuitAngles<double> a;
      a.beta = beta;
      const auto built = build_circuit(CircuitKind::EXCITE, a);
      CHECK(max_abs(choi(extract_kraus(built.circuit, built.env)).mat, target) <= 1e-10);
    }
  }
}

TEST_CASE("GAD, PD, GPD and BLOCH circuits match their Kraus sets") {
  for (int rep = 0; rep < 10; ++rep) {
    const double g = uniform(), p = uniform(), l = uniform();

    auto built = build_circuit(CircuitKind::GAD, gad_angles(g, p));
    CHECK(max_abs(choi(extract_kraus(built.circuit, built.env)).mat, choi_of_ops(gad_ops(g, p), 2)) <= 1e-10);

    CircuitAngles<double> a;
    a.theta = 2 * std::acos(2 * l - 1);
    built = build_circuit(CircuitKind::PD, a);
    CHECK(max_abs(choi(extract_kraus(built.circuit, built.env)).mat, choi_of_ops(pd_ops(l), 2)) <= 1e-10);

    built = build_circuit(CircuitKind::GPD, a);
    CHECK(max_abs(choi(extract_kraus(built.circuit, built.env)).mat, choi_of_ops(gpd_ops(l), 4)) <= 1e-10);

    a.alpha = damping_angle(g);
    a.beta = excitation_angle(g);
    a.p = p;
    built = build_circuit(CircuitKind::BLOCH, a);
    const Mat bloch = choi(extract_kraus(built.circuit, built.env)).mat;
    CHECK(max_abs(bloch, choi_of_ops(compose_ops(gad_ops(g, p), pd_ops(l)), 2)) <= 1e-10);
    CHECK(max_abs(bloch, choi_of_ops(compose_ops(pd_ops(l), gad_ops(g, p)), 2)) <= 1e-10);
  }
}

TEST_CASE("QUADRUPOLAR circuit layout and identity at t = 0") {
  const auto built = build_circuit(CircuitKind::QUADRUPOLAR, quadrupolar_angles(RelaxationParams<double>{}));
  CHECK(built.circuit.n_qubits() == 7);
  CHECK(built.env.system_qubit_count == 2);
  CHECK(built.env.env_qubit_count() == 5);
  for (int rep = 0; rep < 5; ++rep) {
    const auto rho = random_density(4);
    CHECK(max_abs(evolve_open(built.circuit, rho, built.env).matrix(), rho.matrix()) <= 1e-14);
  }
}

TEST_CASE("QUADRUPOLAR circuit equals the composite channel") {
  for (int rep = 0; rep < 10; ++rep) {
    RelaxationParams<double> p;
    p.gamma_a = uniform();
    p.gamma_b = uniform();
    p.lambda = uniform();
    p.p_a = uniform();
    p.p_b = uniform();
    const auto built = build_circuit(CircuitKind::QUADRUPOLAR, quadrupolar_angles(p));
    const auto ops =
        compose_ops(gpd_ops(p.lambda), tensor_ops(gad_ops(p.gamma_a, p.p_a), gad_ops(p.gamma_b, p.p_b)));
    CHECK(max_abs(choi(extract_kraus(built.circuit, built.env)).mat, choi_of_ops(ops, 4)) <= 1e-10);
  }
}

TEST_CASE("every built circuit is unitary and its Kraus set is complete") {
  for (auto kind : kAllKinds) {
    for (int rep = 0; rep < 50; ++rep) {
      const auto built = build_circuit(kind, random_angles());
      CHECK(unitarity_error(circuit_unitary(built.circuit)) <= 1e-11);
      CHECK(extract_kraus(built.circuit, built.env).completeness_error() <= 1e-11);
    }
  }
}

TEST_CASE("evolve_open equals the extracted Kraus map") {
  for (auto kind : kAllKinds) {
    const auto built = build_circuit(kind, random_angles());
    const auto ch = extract_kraus(built.circuit, built.env);
    for (int rep = 0; rep < 20; ++rep) {
      const auto rho = random_density(built.env.system_dim());
      CHECK(max_abs(evolve_open(built.circuit, rho, built.env).matrix(), apply_channel(ch, rho).matrix()) <=
            1e-12);
    }
  }
}

TEST_CASE("environment trace against a direct joint-state evaluation") {
  // U (rho (x) rho_env) U^dag with the joint matrix built explicitly, traced by index loops.
  const auto built = build_circuit(CircuitKind::QUADRUPOLAR, random_angles());
  const Mat u = circuit_unitary(built.circuit);
  Mat env = Mat::Ones(1, 1);
  for (const auto& s : built.env.env_qubit_states) env = kron_loops(env, s.projector());
  const auto ch = extract_kraus(built.circuit, built.env);
  for (int rep = 0; rep < 3; ++rep) {
    const auto rho = random_density(4);
    const Mat joint = u * kron_loops(rho.matrix(), env) * u.adjoint();
    Mat reduced = Mat::Zero(4, 4);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j)
        for (Index k = 0; k < 32; ++k) reduced(i, j) += joint(i * 32 + k, j * 32 + k);
    CHECK(max_abs(reduced, kraus_apply_loops(ch.operators(), rho.matrix())) <= 1e-12);
  }
}

TEST_CASE("evolve_open examples") {
  Circuit<double> id(2);
  const EnvironmentSpec<double> env{{PureState<double>::basis(2, 0)}, 1};
  const auto rho = random_density(2);
  CHECK(max_abs(evolve_open(id, rho, env).matrix(), rho.matrix()) <= 1e-16);

  for (int rep = 0; rep < 10; ++rep) {
    const double l = uniform();
    CircuitAngles<double> a;
    a.theta = 2 * std::acos(2 * l - 1);
    const auto built = build_circuit(CircuitKind::PD, a);
    const auto plus = DensityMatrix<double>(Mat::Constant(2, 2, 0.5));
    const auto out = evolve_open(built.circuit, plus, built.env);
    CHECK(std::abs(out(0, 1) - 0.5 * (2 * l - 1)) <= 1e-15);
    CHECK(std::abs(out(0, 0) - 0.5) <= 1e-15);
  }
}

TEST_CASE("BLOCH circuit reproduces the Bloch solution") {
  for (int rep = 0; rep < 10; ++rep) {
    BlochParams<double> bp;
    bp.t1 = uniform(0.1, 2);
    bp.t2 = uniform(0.01, 2 * bp.t1);
    bp.p_eq = uniform();
    const double t = uniform(0, 3);
    const double g = 1 - std::exp(-t / bp.t1);
    const double tau = 2 * bp.t1 * bp.t2 / (2 * bp.t1 - bp.t2);
    const double l = (1 + std::exp(-t / tau)) / 2;
    CircuitAngles<double> a;
    a.alpha = damping_angle(g);
    a.beta = excitation_angle(g);
    a.theta = dephasing_angle(l);
    a.p = bp.p_eq;
    const auto built = build_circuit(CircuitKind::BLOCH, a);
    for (int k = 0; k < 5; ++k) {
      const auto rho = random_density(2);
      const auto m0 = magnetization(rho);
      const auto m = magnetization(evolve_open(built.circuit, rho, built.env));
      const double decay = std::exp(-t / bp.t2);
      CHECK(std::abs(m(0) - m0(0) * decay) <= 1e-12);
      CHECK(std::abs(m(1) - m0(1) * decay) <= 1e-12);
      CHECK(std::abs(m(2) - (m0(2) * (1 - g) + g * (2 * bp.p_eq - 1))) <= 1e-12);
    }
  }
}

TEST_CASE("layout errors") {
  const auto built = build_circuit(CircuitKind::GAD, gad_angles(0.3, 0.4));
  CHECK_THROWS_AS(evolve_open(built.circuit, random_density(4), built.env), DimensionError);
  EnvironmentSpec<double> short_env{{PureState<double>::basis(2, 0)}, 1};
  CHECK_THROWS_AS(extract_kraus(built.circuit, short_env), DimensionError);
  EnvironmentSpec<double> wide{{PureState<double>::basis(4, 0), PureState<double>::basis(2, 0)}, 1};
  CHECK_THROWS_AS(evolve_open(built.circuit, random_density(2), wide), DimensionError);
}

TEST_CASE("builder errors") {
  CHECK_THROWS_AS(build_circuit(CircuitKind::GAD, CircuitAngles<double>{}), DomainError);
  CircuitAngles<double> a;
  a.theta = 1.0;
  CHECK_THROWS_WITH_AS(build_circuit(CircuitKind::QUADRUPOLAR, a), doctest::Contains("missing"), DomainError);
  CHECK_THROWS_AS(parse_circuit_kind("TOFFOLI"), DomainError);
  CHECK(parse_circuit_kind("quadrupolar") == CircuitKind::QUADRUPOLAR);
  for (auto kind : kAllKinds) CHECK(parse_circuit_kind(to_string(kind)) == kind);
}

TEST_CASE("format_gate") {
  CHECK(format_gate(Gate<double>::ry(1.5708, 2, {closed(0), open(6)})) ==
        "RY(theta=1.5708) target=2 controls=[(0,closed),(6,open)]");
  CHECK(format_gate(Gate<double>::swap(0, 3, {closed(5)})) == "SWAP target=0,3 controls=[(5,closed)]");
  CHECK(format_gate(Gate<double>::x(1)) == "X target=1 controls=[]");
}

TEST_CASE("golden circuit listings") {
  CircuitAngles<double> a;
  a.alpha = 0.5;
  a.beta = 2.5;
  a.theta = 1.25;
  a.alpha_a = 0.75;
  a.beta_a = 2.25;
  a.alpha_b = 1.5;
  a.beta_b = 1.75;
  a.p = a.p_a = a.p_b = 0.5;
  for (auto kind : kAllKinds) {
    std::string name(to_string(kind));
    std::transform(name.begin(), name.end(), name.begin(), ::tolower);
    const auto built = build_circuit(kind, a);
    CHECK_MESSAGE(dump(built.circuit) == read_file(std::string(RELAXSIM_GOLDEN_DIR) + "/" + name + ".txt"),
                  "listing of ", name);
  }
}
