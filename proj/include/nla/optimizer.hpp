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

namespace nla {

struct Bounds {
  double lo = 0.0;
  double hi = 1.0;
};

struct OptimizerConfig {
  bool optimize_gain = true;
  bool optimize_chi = true;
  Bounds gain{1.0, 10.0};
  Bounds chi{0.0, 0.99};
  /// Values used for variables that are not optimised.
  double fixed_gain = 1.0;
  double fixed_chi = 0.5;
  int grid_points = 40;
  int max_iterations = 200;
  /// Pattern search stops once every step is below this.
  double step_tol = 1e-9;
  double objective_tol = 1e-13;
};

struct FidelityOptimum {
  double chi = 0.0;
  double gain = 1.0;
  double fidelity = 0.0;
  double coarse_fidelity = 0.0;
  /// Best fidelity with the amplifier switched off (g = 1, χ optimised).
  double baseline_chi = 0.0;
  double baseline_fidelity = 0.0;
};

/// Fidelity between the amplified channel output of EPR(χ) and the pure
/// target EPR(χ_T), or a negative value where the gain is past the
/// convergence boundary.
double amplified_fidelity(double chi, double gain, double chi_target,
                          const ChannelSpec& channel);

/// Coarse grid over (χ, g) followed by a shrinking pattern search; the
/// convergence boundary is a hard constraint. Throws DomainError when no
/// grid point is feasible.
FidelityOptimum optimize_fidelity(double chi_target, const ChannelSpec& channel,
                                  const OptimizerConfig& config = {});

}  // namespace nla
