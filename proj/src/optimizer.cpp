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

#include "nla/optimizer.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "nla/errors.hpp"
#include "nla/nla_map.hpp"

namespace nla {

namespace {

struct Point {
  double chi = 0.0;
  double gain = 1.0;
  double value = -std::numeric_limits<double>::infinity();
};

std::vector<double> grid(const Bounds& b, int points) {
  if (points < 2) return {b.lo};
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    out[i] = b.lo + (b.hi - b.lo) * i / double(points - 1);
  }
  return out;
}

double clamp(double x, const Bounds& b) { return std::min(std::max(x, b.lo), b.hi); }

// Compass search with step halving; only strict improvements are accepted.
Point pattern_search(Point start, bool vary_chi, bool vary_gain,
                     const OptimizerConfig& cfg, double chi_target,
                     const ChannelSpec& channel) {
  const int n = std::max(cfg.grid_points - 1, 1);
  double step_chi = vary_chi ? (cfg.chi.hi - cfg.chi.lo) / n : 0.0;
  double step_gain = vary_gain ? (cfg.gain.hi - cfg.gain.lo) / n : 0.0;
  Point best = start;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (std::max(step_chi, step_gain) < cfg.step_tol) break;
    bool moved = false;
    const std::array<std::pair<double, double>, 4> moves{
        {{step_chi, 0.0}, {-step_chi, 0.0}, {0.0, step_gain}, {0.0, -step_gain}}};
    for (const auto& [dc, dg] : moves) {
      if (dc == 0.0 && dg == 0.0) continue;
      Point trial{clamp(best.chi + dc, cfg.chi), clamp(best.gain + dg, cfg.gain)};
      trial.value = amplified_fidelity(trial.chi, trial.gain, chi_target, channel);
      if (trial.value > best.value + cfg.objective_tol) {
        best = trial;
        moved = true;
      }
    }
    if (!moved) {
      step_chi *= 0.5;
      step_gain *= 0.5;
    }
  }
  return best;
}

void check_bounds(const OptimizerConfig& cfg) {
  if (!(cfg.chi.lo >= 0.0 && cfg.chi.hi < 1.0 && cfg.chi.lo <= cfg.chi.hi)) {
    throw DomainError("optimize_fidelity: chi bounds must lie in [0, 1)");
  }
  if (!(cfg.gain.lo > 0.0 && cfg.gain.lo <= cfg.gain.hi)) {
    throw DomainError("optimize_fidelity: invalid gain bounds");
  }
  if (cfg.grid_points < 2 || cfg.max_iterations < 0) {
    throw DomainError("optimize_fidelity: grid_points >= 2 required");
  }
}

}  // namespace

double amplified_fidelity(double chi, double gain, double chi_target,
                          const ChannelSpec& channel) {
  const EprChannelResult out =
      epr_channel_nla(chi, channel.transmission(), channel.v_env(), gain);
  if (!out.converged) return -1.0;
  const StandardForm target{epr_variance(chi_target), epr_variance(chi_target),
                            epr_correlation(chi_target)};
  try {
    return fidelity_two_mode(out.cm, target);
  } catch (const DomainError&) {
    return -1.0;
  }
}

FidelityOptimum optimize_fidelity(double chi_target, const ChannelSpec& channel,
                                  const OptimizerConfig& config) {
  if (!(chi_target >= 0.0 && chi_target < 1.0)) {
    throw DomainError("optimize_fidelity: chi_target must lie in [0, 1)");
  }
  check_bounds(config);

  const std::vector<double> chis =
      config.optimize_chi ? grid(config.chi, config.grid_points)
                          : std::vector<double>{config.fixed_chi};
  const std::vector<double> gains =
      config.optimize_gain ? grid(config.gain, config.grid_points)
                           : std::vector<double>{config.fixed_gain};

  Point coarse;
  for (double c : chis) {
    for (double g : gains) {
      const double f = amplified_fidelity(c, g, chi_target, channel);
      if (f > coarse.value) coarse = {c, g, f};
    }
  }

  // Baseline: amplifier off, only χ varies.
  Point base;
  for (double c : grid(config.chi, config.grid_points)) {
    const double f = amplified_fidelity(c, 1.0, chi_target, channel);
    if (f > base.value) base = {c, 1.0, f};
  }
  if (base.value >= 0.0) {
    base = pattern_search(base, true, false, config, chi_target, channel);
  }

  if (!(coarse.value >= 0.0)) {
    throw DomainError("optimize_fidelity: no feasible grid point");
  }

  Point seed = coarse;
  const bool baseline_admissible =
      config.optimize_gain && config.optimize_chi && config.gain.lo <= 1.0;
  if (baseline_admissible && base.value > seed.value) seed = base;
  const Point best = pattern_search(seed, config.optimize_chi,
                                    config.optimize_gain, config, chi_target,
                                    channel);

  FidelityOptimum out;
  out.chi = best.chi;
  out.gain = best.gain;
  out.fidelity = best.value;
  out.coarse_fidelity = coarse.value;
  out.baseline_chi = base.chi;
  out.baseline_fidelity = base.value;
  return out;
}

}  // namespace nla
