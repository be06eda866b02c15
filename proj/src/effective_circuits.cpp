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

#include "nla/effective_circuits.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "nla/errors.hpp"

namespace nla {

namespace {

void check_cloner_inputs(double v, double v_env, double transmission,
                         double gain, const char* where) {
  if (!(v >= 1.0) || !(v_env >= 1.0)) {
    throw DomainError(std::string(where) + ": variances must be >= 1");
  }
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw DomainError(std::string(where) + ": transmission outside [0, 1]");
  }
  if (!(gain > 0.0)) {
    throw DomainError(std::string(where) + ": gain must be positive");
  }
}

// N = V_B + 1 − g²(V_B − 1) for the variance entering the amplifier.
double cloner_denominator(double v, double v_env, double transmission,
                          double gain) {
  const double vb = transmission * v + (1.0 - transmission) * v_env;
  return vb + 1.0 - gain * gain * (vb - 1.0);
}

const Eigen::Matrix2d kI = Eigen::Matrix2d::Identity();
const Eigen::Matrix2d kZ = (Eigen::Matrix2d() << 1, 0, 0, -1).finished();

void set_block(CovarianceMatrix& m, int i, int j, const Eigen::Matrix2d& b) {
  m.block<2, 2>(2 * i, 2 * j) = b;
  m.block<2, 2>(2 * j, 2 * i) = b.transpose();
}

struct Candidate {
  EquivalentCircuit params;
  bool admissible = false;
};

// (T_A, T_B, V_E') as functions of V' from equating the four variances.
Candidate parameters_for(double v, double v_env, double t, double gain,
                         double v_prime, bool flipped) {
  const double g2 = gain * gain;
  const double vp = v_prime;
  const double den_v = -1.0 - t * v + (t - 1.0) * v_env +
                       g2 * (-1.0 + t * (v - v_env) + v_env);
  const double den_t = (-1.0 - v) * (1.0 + v_env) +
                       2.0 * (1.0 + t * (v - v_env) + v_env) * vp +
                       g2 * ((v - 1.0) * (v_env - 1.0) -
                             2.0 * (-1.0 + t * (v - v_env) + v_env) * vp);
  const double num_a =
      (1.0 + v_env) * (vp - 1.0) +
      t * (1.0 - v * v_env + v * vp - v_env * vp) +
      g2 * ((1.0 - v_env) * (1.0 + vp) +
            t * (-1.0 + v * v_env - v * vp + v_env * vp));
  const double num_b =
      (-1.0 - g2) * t * v_env +
      (1.0 + g2 + (g2 - 1.0) * (t - 1.0) * v_env) * vp +
      v * (-1.0 + t - v_env + t * vp + g2 * (-1.0 + t + v_env - t * vp));
  const double num_e =
      (-1.0 - v) * (1.0 + v_env) + (1.0 + t * (v - v_env) + v_env) * vp +
      g2 * (1.0 + vp + v_env * (-1.0 + (t - 1.0) * vp) + v * (-1.0 + v_env - t * vp));

  Candidate c;
  c.params.v_prime = vp;
  c.params.v_env_prime = num_e / den_v;
  c.params.t_alice = num_a / den_t;
  c.params.t_bob = num_b / den_t;
  c.params.flipped_convention = flipped;

  constexpr double slack = 1e-12;
  auto clamp_unit = [](double& x) {
    if (x < 0.0 && x > -slack) x = 0.0;
    if (x > 1.0 && x < 1.0 + slack) x = 1.0;
  };
  clamp_unit(c.params.t_alice);
  clamp_unit(c.params.t_bob);
  c.admissible = std::isfinite(vp) && std::isfinite(c.params.v_env_prime) &&
                 std::isfinite(c.params.t_alice) &&
                 std::isfinite(c.params.t_bob) && vp >= 1.0 - slack &&
                 c.params.v_env_prime >= 1.0 - slack &&
                 c.params.t_alice >= 0.0 && c.params.t_alice <= 1.0 &&
                 c.params.t_bob >= 0.0 && c.params.t_bob <= 1.0;
  if (c.admissible) {
    c.params.v_prime = std::max(c.params.v_prime, 1.0);
    c.params.v_env_prime = std::max(c.params.v_env_prime, 1.0);
  }
  return c;
}

double residual_against(const EquivalentCircuit& params,
                        const CovarianceMatrix& target) {
  return (reconstruct_equivalent_cm(params) - target).cwiseAbs().maxCoeff();
}

}  // namespace

EffectiveSingleSide effective_single_side(double chi, double transmission,
                                          double xi, double gain) {
  if (!(chi >= 0.0 && chi < 1.0)) {
    throw DomainError("effective_single_side: chi must lie in [0, 1)");
  }
  if (!(gain > 0.0)) {
    throw DomainError("effective_single_side: gain must be positive");
  }
  const ChannelSpec spec = ChannelSpec::from_excess_noise(transmission, xi);
  const double t = spec.transmission();
  const double vb = t * epr_variance(chi) + (1.0 - t) * spec.v_env();
  if (!(vb + 1.0 - gain * gain * (vb - 1.0) > 0.0)) {
    throw NonConvergentError("effective_single_side: gain beyond g_max");
  }

  const double g2m = gain * gain - 1.0;
  const double d_noise = -2.0 + g2m * t * xi;
  const double d_loss = -2.0 + g2m * t * (xi - 2.0);
  if (d_noise == 0.0 || d_loss == 0.0) {
    throw DomainError("effective_single_side: vanishing denominator (d_noise=" +
                      std::to_string(d_noise) +
                      ", d_loss=" + std::to_string(d_loss) + ")");
  }
  const double radicand = 1.0 - 2.0 * t * g2m / d_noise;
  if (radicand < 0.0) {
    throw DomainError("effective_single_side: negative radicand for chi_eff (" +
                      std::to_string(radicand) + ")");
  }
  EffectiveSingleSide out;
  out.chi_eff = std::sqrt(radicand) * chi;
  out.t_eff = 4.0 * gain * gain * t / (d_loss * d_noise);
  out.xi_eff = -0.5 * d_loss * xi;
  return out;
}

GaussianState cloner_state(double v, double v_env, double transmission) {
  check_cloner_inputs(v, v_env, transmission, 1.0, "cloner_state");
  const GaussianState pairs =
      direct_sum(make_epr_from_variance(v), make_epr_from_variance(v_env));
  return apply_symplectic(pairs, beamsplitter(4, kBob, kEve1, transmission));
}

NlaResult cloner_nla_pipeline(double v, double v_env, double transmission,
                              double gain) {
  check_cloner_inputs(v, v_env, transmission, gain, "cloner_nla_pipeline");
  return nla_transform(cloner_state(v, v_env, transmission),
                       GainProfile::single(4, kBob, gain));
}

CovarianceMatrix cloner_nla_cm(double v, double v_env, double transmission,
                               double gain) {
  check_cloner_inputs(v, v_env, transmission, gain, "cloner_nla_cm");
  const double t = transmission;
  const double g2 = gain * gain;
  const double n = cloner_denominator(v, v_env, t, gain);
  if (!(n > 0.0)) {
    throw NonConvergentError("cloner_nla_cm: gain beyond g_max (N = " +
                             std::to_string(n) + ")");
  }
  const double vb0 = t * v + (1.0 - t) * v_env;
  const double cv = std::sqrt(v * v - 1.0);
  const double ce = std::sqrt(v_env * v_env - 1.0);

  const double va = (v + t + (1.0 - t) * v * v_env +
                     g2 * (v - t - (1.0 - t) * v * v_env)) / n;
  const double vb = (vb0 + 1.0 + g2 * (vb0 - 1.0)) / n;
  const double ve1 = ((1.0 - t) * v + t * v_env + v * v_env +
                      g2 * ((1.0 - t) * v + t * v_env - v * v_env)) / n;
  const double ve2 = (v_env + 1.0 + t * (v * v_env - 1.0) +
                      g2 * (v_env - 1.0 - t * (v * v_env - 1.0))) / n;
  const double c_ab = 2.0 * gain * std::sqrt(t) * cv / n;
  const double c_ae1 =
      -std::sqrt(1.0 - t) * cv * ((v_env + 1.0) - g2 * (v_env - 1.0)) / n;
  const double c_ae2 = (g2 - 1.0) * std::sqrt((1.0 - t) * t) * cv * ce / n;
  const double c_be1 = 2.0 * gain * std::sqrt((1.0 - t) * t) * (v_env - v) / n;
  const double c_be2 = 2.0 * gain * std::sqrt(1.0 - t) * ce / n;
  const double c_e1e2 = std::sqrt(t) * ce * ((v + 1.0) - g2 * (v - 1.0)) / n;

  CovarianceMatrix m = CovarianceMatrix::Zero(8, 8);
  set_block(m, kAlice, kAlice, va * kI);
  set_block(m, kBob, kBob, vb * kI);
  set_block(m, kEve1, kEve1, ve1 * kI);
  set_block(m, kEve2, kEve2, ve2 * kI);
  set_block(m, kAlice, kBob, c_ab * kZ);
  set_block(m, kAlice, kEve1, c_ae1 * kZ);
  set_block(m, kAlice, kEve2, c_ae2 * kI);
  set_block(m, kBob, kEve1, c_be1 * kI);
  set_block(m, kBob, kEve2, c_be2 * kZ);
  set_block(m, kEve1, kEve2, c_e1e2 * kZ);
  return m;
}

CovarianceMatrix reconstruct_equivalent_cm(const EquivalentCircuit& params) {
  const GaussianState pairs = direct_sum(make_epr_from_variance(params.v_prime),
                                         make_epr_from_variance(params.v_env_prime));
  const Matrix bob_side = beamsplitter(4, kBob, kEve1, params.t_bob);
  // Eve's mode is the first port of Alice's beamsplitter.
  const Matrix alice_side =
      beamsplitter(4, kEve2, kAlice, params.t_alice,
                   params.flipped_convention ? BeamsplitterConvention::Flipped
                                             : BeamsplitterConvention::Standard);
  return apply_symplectic(pairs, alice_side * bob_side).cov();
}

EquivalentCircuit solve_equivalent_circuit(double v, double v_env,
                                           double transmission, double gain) {
  check_cloner_inputs(v, v_env, transmission, gain, "solve_equivalent_circuit");
  if (std::abs(v - v_env) < kDegenerateVarianceTol) {
    throw DegenerateInputError(
        "solve_equivalent_circuit: V = V_E, the equivalent circuit is not "
        "unique");
  }
  const double t = transmission;
  const double n = cloner_denominator(v, v_env, t, gain);
  if (!(n > 0.0)) {
    throw NonConvergentError("solve_equivalent_circuit: gain beyond g_max");
  }
  const CovarianceMatrix target = cloner_nla_cm(v, v_env, t, gain);
  const bool flipped = v < v_env;

  if (gain == 1.0) {
    EquivalentCircuit exact{v, v_env, 1.0, t, flipped, 0.0};
    exact.residual = residual_against(exact, target);
    return exact;
  }

  const double g2 = gain * gain;
  const double den = -1.0 - t * v + (t - 1.0) * v_env +
                     g2 * (-1.0 + t * (v - v_env) + v_env);
  const double b = 1.0 + v + v_env + v * v_env +
                   g2 * (-1.0 + v + v_env - v * v_env);
  const double c = den * ((1.0 - g2) * t * v_env +
                          v * (1.0 - t + v_env + g2 * (-1.0 + t + v_env)));
  const double radicand = b * b + 4.0 * c;
  if (radicand < 0.0) {
    throw SolverError("solve_equivalent_circuit: B^2 + 4C = " +
                      std::to_string(radicand) + " < 0");
  }
  const double root = std::sqrt(radicand);
  const double base = g2 * (v - 1.0) * (v_env - 1.0) - (1.0 + v) * (1.0 + v_env);
  const double vp_rule = (base + (flipped ? root : -root)) / (2.0 * den);
  const double vp_other = (base + (flipped ? -root : root)) / (2.0 * den);

  Candidate chosen = parameters_for(v, v_env, t, gain, vp_rule, flipped);
  if (!chosen.admissible) {
    throw SolverError(
        "solve_equivalent_circuit: selected branch gives out-of-range "
        "parameters (V'=" + std::to_string(chosen.params.v_prime) +
        ", T_A=" + std::to_string(chosen.params.t_alice) +
        ", T_B=" + std::to_string(chosen.params.t_bob) + ")");
  }
  chosen.params.residual = residual_against(chosen.params, target);

  // Cross-check: neither the other root nor the other beamsplitter
  // convention may fit the target better than the sign rule's choice.
  double best_alternative = std::numeric_limits<double>::infinity();
  for (double vp : {vp_rule, vp_other}) {
    for (bool flip : {false, true}) {
      if (vp == vp_rule && flip == flipped) continue;
      const Candidate alt = parameters_for(v, v_env, t, gain, vp, flip);
      if (!alt.admissible) continue;
      best_alternative =
          std::min(best_alternative, residual_against(alt.params, target));
    }
  }
  if (best_alternative < chosen.params.residual) {
    throw SolverError(
        "solve_equivalent_circuit: branch rule sign(V - V_E) disagrees with "
        "residual minimisation");
  }
  return chosen.params;
}

}  // namespace nla
