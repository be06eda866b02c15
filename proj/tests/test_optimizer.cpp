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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "nla/errors.hpp"
#include "nla/optimizer.hpp"

using namespace nla;
using Catch::Matchers::WithinAbs;

TEST_CASE("Lossless channel reaches the target") {
  const ChannelSpec ideal = ChannelSpec::identity();
  for (double chi_t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const FidelityOptimum o = optimize_fidelity(chi_t, ideal);
    CHECK(o.fidelity >= 0.999);
    CHECK_THAT(o.gain * o.chi, WithinAbs(chi_t, 1e-3));
    CHECK(o.fidelity >= o.coarse_fidelity);
  }
}

TEST_CASE("Vacuum target") {
  const FidelityOptimum o = optimize_fidelity(0.0, ChannelSpec::identity());
  CHECK_THAT(o.fidelity, WithinAbs(1.0, 1e-9));
  CHECK(o.chi == 0.0);
  const FidelityOptimum lossy = optimize_fidelity(0.0, ChannelSpec::from_environment(0.5, 1.01));
  CHECK(lossy.chi < 1e-3);
  CHECK(lossy.fidelity < 1.0);
}

TEST_CASE("Amplification never does worse than the baseline") {
  const ChannelSpec lossy = ChannelSpec::from_environment(0.5, 1.01);
  double gain_seen = 1.0;
  for (int k = 1; k <= 9; ++k) {
    const double chi_t = 0.1 * k;
    const FidelityOptimum o = optimize_fidelity(chi_t, lossy);
    CHECK(o.fidelity >= o.baseline_fidelity);
    CHECK(o.fidelity >= o.coarse_fidelity);
    CHECK(o.fidelity <= 1.0);
    gain_seen = std::max(gain_seen, o.gain);
  }
  CHECK(gain_seen > 1.0);
}

TEST_CASE("Returned optimum respects the convergence boundary") {
  const ChannelSpec ch = ChannelSpec::from_environment(0.8, 1.2);
  const FidelityOptimum o = optimize_fidelity(0.6, ch);
  CHECK(amplified_fidelity(o.chi, o.gain, 0.6, ch) == o.fidelity);
  CHECK(amplified_fidelity(0.9, 9.0, 0.6, ch) < 0.0);
}

TEST_CASE("Fixed variables") {
  OptimizerConfig cfg;
  cfg.optimize_gain = false;
  cfg.fixed_gain = 1.0;
  const ChannelSpec ch = ChannelSpec::from_environment(0.5, 1.01);
  const FidelityOptimum o = optimize_fidelity(0.5, ch, cfg);
  CHECK(o.gain == 1.0);
  CHECK_THAT(o.fidelity, WithinAbs(o.baseline_fidelity, 1e-9));

  cfg = OptimizerConfig{};
  cfg.optimize_chi = false;
  cfg.fixed_chi = 0.25;
  const FidelityOptimum p = optimize_fidelity(0.5, ChannelSpec::identity(), cfg);
  CHECK(p.chi == 0.25);
  // Pure-pair fidelity is flat to ~1e-8 around its maximum.
  CHECK_THAT(p.gain, WithinAbs(2.0, 1e-3));
}

TEST_CASE("Optimizer input validation") {
  CHECK_THROWS_AS(optimize_fidelity(1.0, ChannelSpec::identity()), DomainError);
  OptimizerConfig cfg;
  cfg.chi = {0.0, 1.0};
  CHECK_THROWS_AS(optimize_fidelity(0.5, ChannelSpec::identity(), cfg), DomainError);
  cfg = OptimizerConfig{};
  cfg.grid_points = 1;
  CHECK_THROWS_AS(optimize_fidelity(0.5, ChannelSpec::identity(), cfg), DomainError);
}
