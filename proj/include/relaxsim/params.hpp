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

#pragma once

#include <string>

#include "relaxsim/errors.hpp"

namespace relaxsim {

namespace detail {

template <typename Real>
void require_probability(Real value, const char* name) {
  if (!(value >= Real(0) && value <= Real(1))) {
    throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(value));
  }
}

}  // namespace detail

/// Quadrupolar spectral densities J0, J1, J2 (seconds) and coupling C (1/s^2).
template <typename Real = double>
struct SpectralDensities {
  Real j0;
  Real j1;
  Real j2;
  Real c;

  /// Values measured for 23Na in a lyotropic liquid crystal.
  static constexpr SpectralDensities measured() { return {14e-9, 3.4e-9, 3.7e-9, 1.2e10}; }

  void validate() const {
    if (!(j0 > 0 && j1 > 0 && j2 > 0 && c > 0)) {
      throw DomainError("SpectralDensities: J0, J1, J2 and C must be strictly positive");
    }
  }
};

/// Parameters of the composite channel GPD(lambda) o (GAD(gamma_a, p_a) x GAD(gamma_b, p_b)).
/// Qubit A is the outer (first) system qubit.
template <typename Real = double>
struct RelaxationParams {
  Real gamma_a = 0;
  Real gamma_b = 0;
  Real lambda = 1;
  Real p_a = Real(0.5);
  Real p_b = Real(0.5);
  Real t = 0;

  void validate() const {
    detail::require_probability(gamma_a, "gamma_a");
    detail::require_probability(gamma_b, "gamma_b");
    detail::require_probability(lambda, "lambda");
    detail::require_probability(p_a, "p_a");
    detail::require_probability(p_b, "p_b");
  }
};

/// Phenomenological single-spin relaxation: T1, T2 (seconds) and the
/// equilibrium ground-state population.
template <typename Real = double>
struct BlochParams {
  Real t1;
  Real t2;
  Real p_eq = Real(0.5);

  // 0 < T2 < 2 T1 keeps the dephasing time constant 2 T1 T2 / (2 T1 - T2) positive.
  void validate() const {
    if (!(t1 > 0)) throw DomainError("BlochParams: T1 must be positive");
    if (!(t2 > 0 && t2 < 2 * t1)) throw DomainError("BlochParams: require 0 < T2 < 2 T1");
    detail::require_probability(p_eq, "p_eq");
  }

  Real dephasing_time() const { return 2 * t1 * t2 / (2 * t1 - t2); }
};

}  // namespace relaxsim
