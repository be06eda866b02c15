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

#include <span>
#include <utility>
#include <vector>

#include "nla/symplectic.hpp"

namespace nla {

/// Mean vector and covariance matrix of an N-mode Gaussian state (ħ = 2).
class GaussianState {
 public:
  /// Throws DomainError unless mean has length 2N, cov is 2N×2N and
  /// symmetric to kSymmetryTol.
  GaussianState(Vector mean, CovarianceMatrix cov);

  /// N-mode vacuum.
  static GaussianState vacuum(int n_modes);

  int n_modes() const { return static_cast<int>(mean_.size() / 2); }
  const Vector& mean() const { return mean_; }
  const CovarianceMatrix& cov() const { return cov_; }

  /// 2×2 block (mode_i, mode_j) of the covariance matrix.
  Eigen::Matrix2d block(int mode_i, int mode_j) const;

 private:
  Vector mean_;
  CovarianceMatrix cov_;
};

/// Thermal-loss channel, kept in both (T, V_E) and (T, ξ) form.
class ChannelSpec {
 public:
  static ChannelSpec from_environment(double transmission, double v_env);
  static ChannelSpec from_excess_noise(double transmission, double xi);
  static ChannelSpec identity() { return from_excess_noise(1.0, 0.0); }

  double transmission() const { return transmission_; }
  double v_env() const { return v_env_; }
  double excess_noise() const { return xi_; }

 private:
  ChannelSpec(double t, double v, double xi)
      : transmission_(t), v_env_(v), xi_(xi) {}
  double transmission_;
  double v_env_;
  double xi_;
};

/// V_E = (1 - T + Tξ) / (1 - T). T = 1 accepts only ξ = 0 and returns 1.
double xi_to_ve(double transmission, double xi);
/// ξ = (V_E (1 - T) - 1 + T) / T. Returns 0 at T = 1.
double ve_to_xi(double transmission, double v_env);

// Single-mode constructors. Thermal and squeezed accept an optional mean.
GaussianState make_coherent(const Eigen::Vector2d& mean);
GaussianState make_thermal(double variance,
                           const Eigen::Vector2d& mean = Eigen::Vector2d::Zero());
/// Σ = diag(1/V, V): x squeezed, p anti-squeezed.
GaussianState make_squeezed(double variance,
                            const Eigen::Vector2d& mean = Eigen::Vector2d::Zero());

/// Two-mode squeezed vacuum, V = (1+χ²)/(1-χ²), c = 2χ/(χ²-1).
GaussianState make_epr(double chi);
/// EPR pair given by its local variance, correlation +√(V²-1) (the
/// entangling-cloner convention).
GaussianState make_epr_from_variance(double variance);

double epr_variance(double chi);
double epr_correlation(double chi);

/// Direct sum of two states (modes of b appended after those of a).
GaussianState direct_sum(const GaussianState& a, const GaussianState& b);

/// Gaussian partial trace: drop rows/columns of the listed modes.
GaussianState discard_modes(const GaussianState& state,
                            std::span<const int> modes);
/// Keep only the listed modes, in the given order.
GaussianState select_modes(const GaussianState& state,
                           std::span<const int> modes);

/// Σ → SΣSᵀ, d → S d.
GaussianState apply_symplectic(const GaussianState& state, const Matrix& s);

/// Thermal-loss channel on one mode in closed form.
GaussianState gaussian_channel(const GaussianState& state, int mode,
                               const ChannelSpec& spec);

/// Same channel built explicitly: append a thermal ancilla, mix it on a
/// beamsplitter, trace it out.
GaussianState gaussian_channel_dilated(const GaussianState& state, int mode,
                                       const ChannelSpec& spec);

/// 1/√det Σ. Throws DomainError when det Σ < 1 - tol.
double purity(const GaussianState& state, double tol = kPhysicalityTol);

/// Flip the sign of the p rows/columns of the listed modes.
CovarianceMatrix partial_transpose(const CovarianceMatrix& cov,
                                   std::span<const int> modes);

/// Two-mode CM with diagonal blocks a·I, b·I and correlation block c·σ_z.
struct StandardForm {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;

  CovarianceMatrix matrix() const;
  /// Throws DomainError if cov is not of this shape within tol.
  static StandardForm from_matrix(const CovarianceMatrix& cov,
                                  double tol = 1e-10);
};

/// Closed-form symplectic eigenvalues (λ̃₋, λ̃₊) of the partially transposed
/// standard-form CM, Δ = a² + b² + 2c², det Σ̃ = (ab - c²)².
std::pair<double, double> pt_eigs_two_mode(const StandardForm& cm,
                                           double tol = 1e-10);

enum class LogBase { Natural, Two, Ten };

/// max{0, -log λ̃₋} from the general eigensolve of the partial transpose.
double log_negativity(const CovarianceMatrix& cov,
                      LogBase base = LogBase::Natural,
                      double tol = kPhysicalityTol);

/// Fidelity between two zero-mean standard-form two-mode states (vacuum = 1
/// normalisation of the Γ, Λ, Θ invariants).
double fidelity_two_mode(const StandardForm& s1, const StandardForm& s2);

}  // namespace nla
