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

#include <vector>

#include "nla/gaussian_state.hpp"

namespace nla {

/// Per-mode amplifier gains; g = 1 leaves a mode untouched, g < 1
/// de-amplifies.
class GainProfile {
 public:
  explicit GainProfile(std::vector<double> gains);
  /// Gain g on one mode of an N-mode system, unity elsewhere.
  static GainProfile single(int n_modes, int mode, double gain);
  static GainProfile uniform(int n_modes, double gain);

  int n_modes() const { return static_cast<int>(gains_.size()); }
  double operator[](int mode) const { return gains_[mode]; }
  const std::vector<double>& gains() const { return gains_; }

  /// ⊕ g_k I₂
  Matrix linear() const;
  /// ⊕ ln(g_k) I₂
  Matrix logarithmic() const;
  /// ⊕ ((g_k + 1)/(g_k - 1)) I₂; throws DomainError if some g_k = 1.
  Matrix inverse_kernel_width() const;

 private:
  std::vector<double> gains_;
};

struct NlaResult {
  GaussianState state;
  bool converged = false;
  /// cosh l − Σ sinh l has real spectrum with positive part above threshold.
  bool denominator_positive = false;
  bool physical = false;
  double min_denominator_eig = 0.0;
  double lambda_minus_out = 0.0;
};

/// Limiting state of g^{a†a} ρ g^{a†a} for Gaussian ρ, logarithmic-gain form:
///   Σ_out = (cosh l − Σ sinh l)^{-1} (Σ cosh l − sinh l)
///   d_out = (cosh l − Σ sinh l)^{-1} d
/// Non-convergent gains are reported through the flags, never thrown.
NlaResult nla_transform(const GaussianState& state, const GainProfile& gains,
                        double tol = kPhysicalityTol);

/// Linear-gain form of the same map; kept as an independent algebraic route.
/// Throws NonConvergentError when g²+1 − Σ(g²−1) is singular.
GaussianState nla_transform_linear_form(const GaussianState& state,
                                        const GainProfile& gains);

/// Gain at which the output variance of a V-variance input diverges,
/// √((V+1)/(V−1)). +∞ for V <= 1.
double max_gain_single_mode(double variance);

/// Closed-form single-mode result for a diagonal input CM diag(V_x, V_p).
struct SingleModeOutput {
  Eigen::Vector2d mean;
  double var_x = 0.0;
  double var_p = 0.0;
};
SingleModeOutput single_mode_nla(double var_x, double var_p,
                                 const Eigen::Vector2d& mean, double gain);

/// EPR(χ) → thermal-loss channel (T, V_E) on mode B → amplifier g on B.
struct EprChannelResult {
  StandardForm cm;
  /// N = V_B + 1 − g² (V_B − 1); the output exists only for N > 0.
  double denominator = 0.0;
  bool converged = false;
};
EprChannelResult epr_channel_nla(double chi, double transmission, double v_env,
                                 double gain);

/// The same quantity through make_epr → gaussian_channel → nla_transform.
NlaResult epr_channel_nla_pipeline(double chi, double transmission,
                                   double v_env, double gain);

/// Wigner symbol of g^{a†a}: exp(((g−1)/(g+1)) (x² + p²)).
double wigner_kernel(double gain, double x, double p);

}  // namespace nla
