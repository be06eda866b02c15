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

#include "nla/nla_map.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

#include "nla/errors.hpp"

namespace nla {

namespace {

constexpr double kDenominatorRelTol = 1e-10;

Vector per_quadrature(const std::vector<double>& gains, double (*f)(double)) {
  Vector out(2 * gains.size());
  for (std::size_t k = 0; k < gains.size(); ++k) {
    out(2 * k) = out(2 * k + 1) = f(gains[k]);
  }
  return out;
}

void check_gains(const GaussianState& state, const GainProfile& gains) {
  if (gains.n_modes() != state.n_modes()) {
    throw DomainError("gain profile has " + std::to_string(gains.n_modes()) +
                      " modes, state has " + std::to_string(state.n_modes()));
  }
}

}  // namespace

GainProfile::GainProfile(std::vector<double> gains) : gains_(std::move(gains)) {
  if (gains_.empty()) throw DomainError("GainProfile: no modes");
  for (double g : gains_) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw DomainError("GainProfile: gains must be positive and finite");
    }
  }
}

GainProfile GainProfile::single(int n_modes, int mode, double gain) {
  if (mode < 0 || mode >= n_modes) {
    throw DomainError("GainProfile::single: mode index out of range");
  }
  std::vector<double> g(n_modes, 1.0);
  g[mode] = gain;
  return GainProfile(std::move(g));
}

GainProfile GainProfile::uniform(int n_modes, double gain) {
  if (n_modes < 1) throw DomainError("GainProfile::uniform: n_modes < 1");
  return GainProfile(std::vector<double>(n_modes, gain));
}

Matrix GainProfile::linear() const {
  return per_quadrature(gains_, [](double g) { return g; }).asDiagonal();
}

Matrix GainProfile::logarithmic() const {
  return per_quadrature(gains_, [](double g) { return std::log(g); })
      .asDiagonal();
}

Matrix GainProfile::inverse_kernel_width() const {
  for (double g : gains_) {
    if (g == 1.0) {
      throw DomainError("GainProfile: (g+1)/(g-1) is undefined at unit gain");
    }
  }
  return per_quadrature(gains_, [](double g) { return (g + 1.0) / (g - 1.0); })
      .asDiagonal();
}

NlaResult nla_transform(const GaussianState& state, const GainProfile& gains,
                        double tol) {
  check_gains(state, gains);
  const Vector log_gain =
      per_quadrature(gains.gains(), [](double g) { return std::log(g); });
  const Vector ch = log_gain.array().cosh();
  const Vector sh = log_gain.array().sinh();
  const Matrix& sigma = state.cov();

  const Matrix denom = Matrix(ch.asDiagonal()) - sigma * sh.asDiagonal();
  const Matrix numer = sigma * ch.asDiagonal() - Matrix(sh.asDiagonal());

  NlaResult result{state};
  const double norm = denom.norm();
  Eigen::EigenSolver<Matrix> es(denom, /*computeEigenvectors=*/false);
  double min_real = std::numeric_limits<double>::infinity();
  double max_imag = 0.0;
  for (const auto& ev : es.eigenvalues()) {
    min_real = std::min(min_real, ev.real());
    max_imag = std::max(max_imag, std::abs(ev.imag()));
  }
  result.min_denominator_eig = min_real;
  result.denominator_positive =
      max_imag <= 1e-9 * norm && min_real > kDenominatorRelTol * norm;

  if (std::abs(min_real) <= kDenominatorRelTol * norm && max_imag <= 1e-9 * norm) {
    // Singular: the output would be garbage. Report the input untouched.
    result.lambda_minus_out = std::numeric_limits<double>::quiet_NaN();
    return result;
  }

  const Eigen::PartialPivLU<Matrix> lu(denom);
  Matrix cov = lu.solve(numer);
  cov = 0.5 * (cov + cov.transpose());
  Vector mean = lu.solve(state.mean());
  if (!cov.allFinite() || !mean.allFinite()) {
    result.lambda_minus_out = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  result.state = GaussianState(std::move(mean), std::move(cov));
  const PhysicalityReport phys = is_physical(result.state.cov(), tol);
  result.physical = phys.physical;
  result.lambda_minus_out = phys.lambda_min;
  result.converged = result.denominator_positive && result.physical;
  return result;
}

GaussianState nla_transform_linear_form(const GaussianState& state,
                                        const GainProfile& gains) {
  check_gains(state, gains);
  const Vector g = per_quadrature(gains.gains(), [](double x) { return x; });
  const Vector g2p = (g.array().square() + 1.0).matrix();
  const Vector g2m = (g.array().square() - 1.0).matrix();
  const Matrix& sigma = state.cov();

  const Matrix bracket = Matrix(g2p.asDiagonal()) - sigma * g2m.asDiagonal();
  const Eigen::FullPivLU<Matrix> lu(bracket);
  if (!lu.isInvertible()) {
    throw NonConvergentError("nla_transform_linear_form: g^2+1 - Sigma(g^2-1) "
                             "is singular");
  }
  const Matrix right = sigma * g2p.asDiagonal() - Matrix(g2m.asDiagonal());
  Matrix cov = g.asDiagonal() * lu.solve(right) *
               g.cwiseInverse().asDiagonal();
  cov = 0.5 * (cov + cov.transpose());
  Vector mean = 2.0 * (g.asDiagonal() * lu.solve(state.mean()));
  return GaussianState(std::move(mean), std::move(cov));
}

double max_gain_single_mode(double variance) {
  if (variance <= 1.0) return std::numeric_limits<double>::infinity();
  return std::sqrt((variance + 1.0) / (variance - 1.0));
}

SingleModeOutput single_mode_nla(double var_x, double var_p,
                                 const Eigen::Vector2d& mean, double gain) {
  if (!(gain > 0.0)) throw DomainError("single_mode_nla: gain must be positive");
  const double g2 = gain * gain;
  const double nx = var_x + 1.0 - g2 * (var_x - 1.0);
  const double np = var_p + 1.0 - g2 * (var_p - 1.0);
  SingleModeOutput out;
  out.mean = Eigen::Vector2d(2.0 * gain * mean(0) / nx, 2.0 * gain * mean(1) / np);
  out.var_x = (var_x + 1.0 + g2 * (var_x - 1.0)) / nx;
  out.var_p = (var_p + 1.0 + g2 * (var_p - 1.0)) / np;
  return out;
}

EprChannelResult epr_channel_nla(double chi, double transmission, double v_env,
                                 double gain) {
  const ChannelSpec spec = ChannelSpec::from_environment(transmission, v_env);
  if (!(gain > 0.0)) throw DomainError("epr_channel_nla: gain must be positive");
  const double va = epr_variance(chi);
  const double t = spec.transmission();
  const double vb = t * va + (1.0 - t) * spec.v_env();
  const double c = std::sqrt(t) * epr_correlation(chi);
  const double g2 = gain * gain;

  EprChannelResult out;
  out.denominator = vb + 1.0 - g2 * (vb - 1.0);
  const double n = out.denominator;
  const double cc = c * c;  // T (V_A² − 1)
  out.cm.a = (va * (vb + 1.0) - cc + g2 * (cc - va * (vb - 1.0))) / n;
  out.cm.b = (vb + 1.0 + g2 * (vb - 1.0)) / n;
  out.cm.c = 2.0 * gain * c / n;
  out.converged = n > kDenominatorRelTol * (vb + 1.0) &&
                  is_physical(out.cm.matrix()).physical;
  return out;
}

NlaResult epr_channel_nla_pipeline(double chi, double transmission,
                                   double v_env, double gain) {
  const GaussianState channel_out = gaussian_channel(
      make_epr(chi), 1, ChannelSpec::from_environment(transmission, v_env));
  return nla_transform(channel_out, GainProfile::single(2, 1, gain));
}

double wigner_kernel(double gain, double x, double p) {
  if (!(gain > 0.0)) throw DomainError("wigner_kernel: gain must be positive");
  return std::exp((gain - 1.0) / (gain + 1.0) * (x * x + p * p));
}

}  // namespace nla
