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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "nla/gaussian_state.hpp"

namespace nla::fock {

using Complex = std::complex<double>;
using Ket = Eigen::VectorXcd;

/// Truncated multimode Fock-space state, ρ = Σ_k w_k |ψ_k⟩⟨ψ_k| with each
/// |ψ_k⟩ of dimension (cutoff+1)^M. Basis index is mode-major:
/// idx = Σ_m n_m (cutoff+1)^(M-1-m).
class FockState {
 public:
  FockState(int cutoff, int n_modes, std::vector<double> weights,
            std::vector<Ket> kets, double leaked_weight = 0.0);

  int cutoff() const { return cutoff_; }
  int n_modes() const { return n_modes_; }
  long dimension() const { return dimension_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Ket>& kets() const { return kets_; }
  /// Probability lost to truncation before renormalisation (accumulated).
  double leaked_weight() const { return leaked_weight_; }
  bool truncation_warning() const { return leaked_weight_ > 1e-6; }

  /// Dense ρ; only for dimension <= 4096.
  Eigen::MatrixXcd density_matrix() const;

  /// Photon number of `mode` in basis state `index`.
  int occupation(long index, int mode) const;
  long stride(int mode) const { return strides_[mode]; }

 private:
  int cutoff_;
  int n_modes_;
  long dimension_;
  std::vector<long> strides_;
  std::vector<double> weights_;
  std::vector<Ket> kets_;
  double leaked_weight_;
};

/// √(1−χ²) Σ (−χ)ⁿ |n,n⟩ so the moments match make_epr(χ).
FockState fock_epr(double chi, int cutoff);
/// √(1−r²) Σ rⁿ |n,n⟩ for a signed ratio |r| < 1.
FockState fock_two_mode_squeezed(double ratio, int cutoff);
FockState fock_thermal(double variance, int cutoff);
/// Coherent state with mean d = (2 Re α, 2 Im α).
FockState fock_coherent(Complex alpha, int cutoff);
/// Squeezed vacuum with Σ = diag(1/V, V).
FockState fock_squeezed(double variance, int cutoff);

FockState tensor(const FockState& a, const FockState& b);

/// Conjugation by g^{n} on one mode, then renormalisation. Throws
/// OverflowGuardError when cutoff·|ln g| exceeds the double range.
FockState apply_nla_fock(const FockState& state, int mode, double gain);

/// Beamsplitter unitary whose Heisenberg action on (x, p) is
/// nla::beamsplitter(M, i, j, T, convention).
FockState beamsplitter_fock(const FockState& state, int mode_i, int mode_j,
                            double transmission,
                            BeamsplitterConvention convention =
                                BeamsplitterConvention::Standard);

/// First moments and symmetrised second central moments, ħ = 2.
GaussianState cm_from_fock(const FockState& state);

/// ⟨(Δr_k)³⟩ for every quadrature r_k; zero for Gaussian states.
Vector third_central_moments(const FockState& state);

/// Photon-number distribution of one mode.
Vector photon_marginal(const FockState& state, int mode);

}  // namespace nla::fock
