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

#include "nla/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nla/errors.hpp"

namespace nla {

namespace {

void check_mode(int mode, int n_modes, const char* where) {
  if (mode < 0 || mode >= n_modes) {
    throw DomainError(std::string(where) + ": mode index " +
                      std::to_string(mode) + " out of range for " +
                      std::to_string(n_modes) + " modes");
  }
}

const Eigen::Matrix2d kSigmaZ = (Eigen::Matrix2d() << 1, 0, 0, -1).finished();

}  // namespace

GaussianState::GaussianState(Vector mean, CovarianceMatrix cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0) {
    throw DomainError("GaussianState: mean must have even, non-zero length");
  }
  if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
    throw DomainError("GaussianState: covariance dimension does not match "
                      "mean length");
  }
  if (!cov_.allFinite() || !mean_.allFinite()) {
    throw DomainError("GaussianState: non-finite entries");
  }
  if (!is_symmetric(cov_, kSymmetryTol * std::max(1.0, cov_.cwiseAbs().maxCoeff()))) {
    throw DomainError("GaussianState: covariance matrix is not symmetric");
  }
}

GaussianState GaussianState::vacuum(int n_modes) {
  if (n_modes < 1) throw DomainError("vacuum: n_modes must be >= 1");
  return GaussianState(Vector::Zero(2 * n_modes),
                       Matrix::Identity(2 * n_modes, 2 * n_modes));
}

Eigen::Matrix2d GaussianState::block(int mode_i, int mode_j) const {
  check_mode(mode_i, n_modes(), "block");
  check_mode(mode_j, n_modes(), "block");
  return cov_.block<2, 2>(2 * mode_i, 2 * mode_j);
}

// ---------------------------------------------------------------------------
// Channels

double xi_to_ve(double transmission, double xi) {
  if (!(transmission > 0.0 && transmission <= 1.0)) {
    throw DomainError("xi_to_ve: transmission must lie in (0, 1]");
  }
  if (transmission == 1.0) {
    if (xi != 0.0) {
      throw DomainError("xi_to_ve: T = 1 admits only zero excess noise");
    }
    return 1.0;
  }
  return (1.0 - transmission + transmission * xi) / (1.0 - transmission);
}

double ve_to_xi(double transmission, double v_env) {
  if (!(transmission > 0.0 && transmission <= 1.0)) {
    throw DomainError("ve_to_xi: transmission must lie in (0, 1]");
  }
  if (transmission == 1.0) return 0.0;
  return (v_env * (1.0 - transmission) - 1.0 + transmission) / transmission;
}

ChannelSpec ChannelSpec::from_environment(double transmission, double v_env) {
  if (!(transmission > 0.0 && transmission <= 1.0)) {
    throw DomainError("ChannelSpec: transmission must lie in (0, 1]");
  }
  if (!(v_env >= 1.0)) {
    throw DomainError("ChannelSpec: environment variance must be >= 1");
  }
  return ChannelSpec(transmission, v_env, ve_to_xi(transmission, v_env));
}

ChannelSpec ChannelSpec::from_excess_noise(double transmission, double xi) {
  if (!(xi >= 0.0)) throw DomainError("ChannelSpec: excess noise must be >= 0");
  return ChannelSpec(transmission, xi_to_ve(transmission, xi), xi);
}

// ---------------------------------------------------------------------------
// Constructors

GaussianState make_coherent(const Eigen::Vector2d& mean) {
  return GaussianState(mean, Matrix::Identity(2, 2));
}

GaussianState make_thermal(double variance, const Eigen::Vector2d& mean) {
  if (!(variance >= 1.0)) throw DomainError("make_thermal: V must be >= 1");
  return GaussianState(mean, variance * Matrix::Identity(2, 2));
}

GaussianState make_squeezed(double variance, const Eigen::Vector2d& mean) {
  if (!(variance >= 1.0)) throw DomainError("make_squeezed: V must be >= 1");
  Matrix cov = Matrix::Zero(2, 2);
  cov(0, 0) = 1.0 / variance;
  cov(1, 1) = variance;
  return GaussianState(mean, cov);
}

double epr_variance(double chi) {
  if (!(chi >= 0.0 && chi < 1.0)) throw DomainError("EPR: chi must lie in [0, 1)");
  return (1.0 + chi * chi) / (1.0 - chi * chi);
}

double epr_correlation(double chi) {
  if (!(chi >= 0.0 && chi < 1.0)) throw DomainError("EPR: chi must lie in [0, 1)");
  return 2.0 * chi / (chi * chi - 1.0);
}

GaussianState make_epr(double chi) {
  const StandardForm sf{epr_variance(chi), epr_variance(chi),
                        epr_correlation(chi)};
  return GaussianState(Vector::Zero(4), sf.matrix());
}

GaussianState make_epr_from_variance(double variance) {
  if (!(variance >= 1.0)) {
    throw DomainError("make_epr_from_variance: V must be >= 1");
  }
  const StandardForm sf{variance, variance,
                        std::sqrt(variance * variance - 1.0)};
  return GaussianState(Vector::Zero(4), sf.matrix());
}

GaussianState direct_sum(const GaussianState& a, const GaussianState& b) {
  const auto na = a.mean().size();
  const auto nb = b.mean().size();
  Vector mean(na + nb);
  mean << a.mean(), b.mean();
  Matrix cov = Matrix::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState select_modes(const GaussianState& state,
                           std::span<const int> modes) {
  const int n = static_cast<int>(modes.size());
  if (n == 0) throw DomainError("select_modes: empty mode list");
  std::vector<int> idx;
  idx.reserve(2 * n);
  for (int m : modes) {
    check_mode(m, state.n_modes(), "select_modes");
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  Vector mean(2 * n);
  Matrix cov(2 * n, 2 * n);
  for (int r = 0; r < 2 * n; ++r) {
    mean(r) = state.mean()(idx[r]);
    for (int c = 0; c < 2 * n; ++c) cov(r, c) = state.cov()(idx[r], idx[c]);
  }
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState discard_modes(const GaussianState& state,
                            std::span<const int> modes) {
  for (int m : modes) check_mode(m, state.n_modes(), "discard_modes");
  std::vector<int> keep;
  for (int m = 0; m < state.n_modes(); ++m) {
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) {
      keep.push_back(m);
    }
  }
  if (keep.empty()) throw DomainError("discard_modes: cannot discard every mode");
  return select_modes(state, keep);
}

GaussianState apply_symplectic(const GaussianState& state, const Matrix& s) {
  if (s.rows() != state.cov().rows() || s.cols() != state.cov().cols()) {
    throw DomainError("apply_symplectic: dimension mismatch");
  }
  Matrix cov = s * state.cov() * s.transpose();
  cov = 0.5 * (cov + cov.transpose());
  return GaussianState(s * state.mean(), std::move(cov));
}

GaussianState gaussian_channel(const GaussianState& state, int mode,
                               const ChannelSpec& spec) {
  check_mode(mode, state.n_modes(), "gaussian_channel");
  const double t = spec.transmission();
  const double root_t = std::sqrt(t);
  const int k = 2 * mode;
  const auto dim = state.cov().rows();

  Matrix cov = state.cov();
  Vector mean = state.mean();
  cov.block(k, 0, 2, dim) *= root_t;
  cov.block(0, k, dim, 2) *= root_t;
  // The diagonal block has now been scaled by T; add the environment.
  cov.block<2, 2>(k, k) += (1.0 - t) * spec.v_env() * Eigen::Matrix2d::Identity();
  mean.segment<2>(k) *= root_t;
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState gaussian_channel_dilated(const GaussianState& state, int mode,
                                       const ChannelSpec& spec) {
  check_mode(mode, state.n_modes(), "gaussian_channel_dilated");
  const int n = state.n_modes();
  const GaussianState joint = direct_sum(state, make_thermal(spec.v_env()));
  const GaussianState mixed = apply_symplectic(
      joint, beamsplitter(n + 1, mode, n, spec.transmission()));
  const int ancilla[] = {n};
  return discard_modes(mixed, ancilla);
}

// ---------------------------------------------------------------------------
// Measures

double purity(const GaussianState& state, double tol) {
  const double det = state.cov().determinant();
  if (!(det >= 1.0 - tol)) {
    throw DomainError("purity: det(Sigma) = " + std::to_string(det) +
                      " < 1, covariance matrix is not physical");
  }
  return 1.0 / std::sqrt(det);
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& cov,
                                   std::span<const int> modes) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0) {
    throw DomainError("partial_transpose: expected a 2N x 2N matrix");
  }
  const int n = static_cast<int>(cov.rows() / 2);
  CovarianceMatrix out = cov;
  for (int m : modes) {
    check_mode(m, n, "partial_transpose");
    out.row(2 * m + 1) *= -1.0;
    out.col(2 * m + 1) *= -1.0;
  }
  return out;
}

CovarianceMatrix StandardForm::matrix() const {
  CovarianceMatrix m = CovarianceMatrix::Zero(4, 4);
  m.block<2, 2>(0, 0) = a * Eigen::Matrix2d::Identity();
  m.block<2, 2>(2, 2) = b * Eigen::Matrix2d::Identity();
  m.block<2, 2>(0, 2) = c * kSigmaZ;
  m.block<2, 2>(2, 0) = c * kSigmaZ;
  return m;
}

StandardForm StandardForm::from_matrix(const CovarianceMatrix& cov,
                                       double tol) {
  if (cov.rows() != 4 || cov.cols() != 4) {
    throw DomainError("StandardForm: expected a two-mode (4x4) matrix");
  }
  StandardForm sf{cov(0, 0), cov(2, 2), cov(0, 2)};
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((sf.matrix() - cov).cwiseAbs().maxCoeff() > tol * scale) {
    throw DomainError("StandardForm: matrix is not of the form "
                      "[[a I, c Z], [c Z, b I]]");
  }
  return sf;
}

std::pair<double, double> pt_eigs_two_mode(const StandardForm& cm, double tol) {
  const double delta = cm.a * cm.a + cm.b * cm.b + 2.0 * cm.c * cm.c;
  const double det_pt = std::pow(cm.a * cm.b - cm.c * cm.c, 2);
  double disc = delta * delta - 4.0 * det_pt;
  if (disc < -tol * delta * delta) {
    throw DomainError("pt_eigs_two_mode: negative discriminant");
  }
  disc = std::max(disc, 0.0);
  const double root = std::sqrt(disc);
  return {std::sqrt(std::max(0.0, (delta - root) / 2.0)),
          std::sqrt((delta + root) / 2.0)};
}

double log_negativity(const CovarianceMatrix& cov, LogBase base, double tol) {
  if (cov.rows() != 4 || cov.cols() != 4) {
    throw DomainError("log_negativity: expected a two-mode covariance matrix");
  }
  if (!is_physical(cov, tol).physical) {
    throw DomainError("log_negativity: covariance matrix is not physical");
  }
  const int bob[] = {1};
  const double lambda = symplectic_eigenvalues(partial_transpose(cov, bob)).front();
  const double e = std::max(0.0, -std::log(lambda));
  switch (base) {
    case LogBase::Two:
      return e / std::log(2.0);
    case LogBase::Ten:
      return e / std::log(10.0);
    case LogBase::Natural:
      break;
  }
  return e;
}

double fidelity_two_mode(const StandardForm& s1, const StandardForm& s2) {
  if (!is_physical(s1.matrix()).physical || !is_physical(s2.matrix()).physical) {
    throw DomainError("fidelity_two_mode: both states must be physical");
  }
  const double va = s1.a, vb = s1.b, c = s1.c;
  const double wa = s2.a, wb = s2.b, d = s2.c;

  const double gamma_root = 1.0 - 2.0 * c * d + va * (-vb * d * d + wa) +
                            vb * (1.0 + va * wa) * wb +
                            c * c * (d * d - wa * wb);
  const double gamma = gamma_root * gamma_root / 16.0;
  const double lambda1 =
      c * c * c * c + c * c * (2.0 - 2.0 * va * vb) + (va * va - 1.0) * (vb * vb - 1.0);
  const double lambda2 =
      d * d * d * d + d * d * (2.0 - 2.0 * wa * wb) + (wa * wa - 1.0) * (wb * wb - 1.0);
  // Each factor is det(Σ + iΩ) >= 0 and vanishes for pure states. Round-off
  // there would pass through two square roots, so it is snapped to zero.
  auto pure_snap = [](double lam, double a, double b) {
    return lam <= 1e-12 * std::max(1.0, a * a * b * b) ? 0.0 : lam;
  };
  const double lambda = pure_snap(lambda1, va, vb) * pure_snap(lambda2, wa, wb) / 16.0;
  const double theta_root = (c + d) * (c + d) - (va + wa) * (vb + wb);
  const double theta = theta_root * theta_root / 16.0;
  // With a pure partner Γ = Θ and the expression collapses to 1/√Θ.
  if (lambda == 0.0) return std::min(1.0, 1.0 / std::sqrt(theta));

  const double s = std::sqrt(gamma) + std::sqrt(lambda);
  double radicand = s * s - theta;
  if (radicand < -1e-9 * std::max(1.0, s * s)) {
    throw DomainError("fidelity_two_mode: negative radicand, invalid input pair");
  }
  radicand = std::max(0.0, radicand);
  const double f = 1.0 / (s - std::sqrt(radicand));
  if (!(f > 0.0) || f > 1.0 + 1e-6) {
    throw DomainError("fidelity_two_mode: result outside (0, 1]");
  }
  return std::min(f, 1.0);
}

}  // namespace nla
