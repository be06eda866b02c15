// Copyright 2026 The NLA Gaussian Authors
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

#include "nla/gaussian_state.hpp"
#include "nla/nla_map.hpp"

namespace nla {

/// Stronger EPR plus modified channel reproducing the amplified Alice–Bob
/// state. T_eff > 1 is a legitimate output: it marks the point where no
/// beamsplitter channel can account for the amplifier.
struct EffectiveSingleSide {
  double chi_eff = 0.0;
  double t_eff = 0.0;
  double xi_eff = 0.0;
};

EffectiveSingleSide effective_single_side(double chi, double transmission,
                                          double xi, double gain);

// Mode order of the four-mode entangling-cloner state.
inline constexpr int kAlice = 0;
inline constexpr int kBob = 1;
inline constexpr int kEve1 = 2;
inline constexpr int kEve2 = 3;

/// Alice's EPR (V) on modes A,B and Eve's EPR (V_E) on E1,E2; B and E1 are
/// mixed on a beamsplitter of transmission T and B is amplified with gain g.
/// Closed-form entries; throws NonConvergentError when
/// N = V_B + 1 − g²(V_B − 1) <= 0.
CovarianceMatrix cloner_nla_cm(double v, double v_env, double transmission,
                               double gain);

/// The same four-mode state computed by beamsplitter + nla_transform.
NlaResult cloner_nla_pipeline(double v, double v_env, double transmission,
                              double gain);

/// Pre-amplifier entangling-cloner state.
GaussianState cloner_state(double v, double v_env, double transmission);

/// Two EPRs (V', V_E') with beamsplitters on both Alice's (T_A, with E2) and
/// Bob's (T_B, with E1) side. flipped_convention switches Alice's
/// beamsplitter to BeamsplitterConvention::Flipped, which is required when
/// V < V_E.
struct EquivalentCircuit {
  double v_prime = 1.0;
  double v_env_prime = 1.0;
  double t_alice = 1.0;
  double t_bob = 1.0;
  bool flipped_convention = false;
  /// max |Σ_reconstructed − Σ_NLA| for the returned parameters.
  double residual = 0.0;
};

constexpr double kDegenerateVarianceTol = 1e-8;

/// Solves the equivalent circuit for the amplified cloner state. The V'
/// root is chosen by sign(V − V_E); the other root is reconstructed too and
/// the sign rule is checked against the smaller residual.
EquivalentCircuit solve_equivalent_circuit(double v, double v_env,
                                           double transmission, double gain);

CovarianceMatrix reconstruct_equivalent_cm(const EquivalentCircuit& params);

}  // namespace nla
