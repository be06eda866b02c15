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

#include "nla/fock_oracle.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "nla/errors.hpp"

namespace nla::fock {

namespace {

// Only weights that underflow are dropped: amplification can lift any tail.
constexpr double kPruneWeight = 1e-300;

void check_cutoff(int cutoff) {
  if (cutoff < 1) throw DomainError("fock: cutoff must be >= 1");
}

Ket basis_ket(long dim, long index) {
  Ket k = Ket::Zero(dim);
  k(index) = 1.0;
  return k;
}

// Single pure ket with amplitudes `amp`; the probability outside the
// truncation is recorded as leaked.
FockState pure_state(int cutoff, int n_modes, Ket amp) {
  const double norm2 = amp.squaredNorm();
  if (!(norm2 > 0.0)) throw DomainError("fock: state vanishes after truncation");
  const double leaked = std::max(0.0, 1.0 - norm2);
  amp /= std::sqrt(norm2);
  return FockState(cutoff, n_modes, {1.0}, {std::move(amp)}, leaked);
}

// a_mode |ψ⟩ within the truncated space.
Ket lower(const FockState& s, const Ket& psi, int mode) {
  Ket out = Ket::Zero(psi.size());
  const long st = s.stride(mode);
  for (long idx = 0; idx < psi.size(); ++idx) {
    const int n = s.occupation(idx, mode);
    if (n < s.cutoff()) out(idx) = std::sqrt(double(n + 1)) * psi(idx + st);
  }
  return out;
}

// Quadrature coefficient u with r = u a + ū a†: 1 for x, −i for p.
Complex quadrature_u(int k) { return (k % 2 == 0) ? Complex(1.0, 0.0) : Complex(0.0, -1.0); }

// Orthogonal matrix exp(θ G) on the N-photon block of modes (i, j) spanned by
// |k, N−k⟩, k ∈ [k_lo, k_hi].
Eigen::MatrixXd block_unitary(int total, int k_lo, int k_hi, double theta) {
  const int m = k_hi - k_lo + 1;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
  for (int r = 0; r + 1 < m; ++r) {
    const int k = k_lo + r;
    const double amp = std::sqrt(double(k + 1)) * std::sqrt(double(total - k));
    g(r + 1, r) = amp;
    g(r, r + 1) = -amp;
  }
  return (theta * g).exp();
}

}  // namespace

FockState::FockState(int cutoff, int n_modes, std::vector<double> weights,
                     std::vector<Ket> kets, double leaked_weight)
    : cutoff_(cutoff),
      n_modes_(n_modes),
      dimension_(1),
      weights_(std::move(weights)),
      kets_(std::move(kets)),
      leaked_weight_(leaked_weight) {
  check_cutoff(cutoff);
  if (n_modes < 1) throw DomainError("FockState: need at least one mode");
  if (weights_.size() != kets_.size() || kets_.empty()) {
    throw DomainError("FockState: weights and kets must be non-empty and match");
  }
  strides_.assign(n_modes, 1);
  for (int m = n_modes - 1; m >= 0; --m) {
    strides_[m] = dimension_;
    dimension_ *= (cutoff + 1);
  }
  for (const Ket& k : kets_) {
    if (k.size() != dimension_) {
      throw DomainError("FockState: ket dimension " + std::to_string(k.size()) +
                        " != " + std::to_string(dimension_));
    }
  }
}

Eigen::MatrixXcd FockState::density_matrix() const {
  if (dimension_ > 4096) {
    throw DomainError("FockState::density_matrix: dimension too large");
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dimension_, dimension_);
  for (std::size_t k = 0; k < kets_.size(); ++k) {
    rho += weights_[k] * kets_[k] * kets_[k].adjoint();
  }
  return rho;
}

int FockState::occupation(long index, int mode) const {
  return static_cast<int>((index / strides_[mode]) % (cutoff_ + 1));
}

FockState fock_two_mode_squeezed(double ratio, int cutoff) {
  check_cutoff(cutoff);
  if (!(std::abs(ratio) < 1.0)) {
    throw DomainError("fock_two_mode_squeezed: |ratio| must be < 1");
  }
  const long dim = long(cutoff + 1) * (cutoff + 1);
  Ket amp = Ket::Zero(dim);
  const double norm = std::sqrt(1.0 - ratio * ratio);
  for (int n = 0; n <= cutoff; ++n) {
    amp(long(n) * (cutoff + 1) + n) = norm * std::pow(ratio, n);
  }
  return pure_state(cutoff, 2, std::move(amp));
}

FockState fock_epr(double chi, int cutoff) {
  if (!(chi >= 0.0 && chi < 1.0)) throw DomainError("fock_epr: chi in [0, 1)");
  return fock_two_mode_squeezed(-chi, cutoff);
}

FockState fock_thermal(double variance, int cutoff) {
  check_cutoff(cutoff);
  if (!(variance >= 1.0)) throw DomainError("fock_thermal: variance must be >= 1");
  const double nbar = 0.5 * (variance - 1.0);
  std::vector<double> weights;
  std::vector<Ket> kets;
  double kept = 0.0;
  for (int n = 0; n <= cutoff; ++n) {
    const double p = std::pow(nbar, n) / std::pow(nbar + 1.0, n + 1);
    if (p < kPruneWeight) continue;
    weights.push_back(p);
    kets.push_back(basis_ket(cutoff + 1, n));
    kept += p;
  }
  for (double& w : weights) w /= kept;
  return FockState(cutoff, 1, std::move(weights), std::move(kets),
                   std::max(0.0, 1.0 - kept));
}

FockState fock_coherent(Complex alpha, int cutoff) {
  check_cutoff(cutoff);
  Ket amp(cutoff + 1);
  Complex term = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n <= cutoff; ++n) {
    amp(n) = term;
    term *= alpha / std::sqrt(double(n + 1));
  }
  return pure_state(cutoff, 1, std::move(amp));
}

FockState fock_squeezed(double variance, int cutoff) {
  check_cutoff(cutoff);
  if (!(variance > 0.0)) throw DomainError("fock_squeezed: variance must be > 0");
  const double tanh_r = (variance - 1.0) / (variance + 1.0);
  const double cosh_r = 1.0 / std::sqrt(1.0 - tanh_r * tanh_r);
  Ket amp = Ket::Zero(cutoff + 1);
  // c_{2n} = (−tanh r)^n √((2n)!) / (2^n n!) / √cosh r, built recursively.
  double c = 1.0 / std::sqrt(cosh_r);
  for (int n = 0; 2 * n <= cutoff; ++n) {
    amp(2 * n) = c;
    c *= -tanh_r * std::sqrt(double((2 * n + 1) * (2 * n + 2))) / (2.0 * (n + 1));
  }
  return pure_state(cutoff, 1, std::move(amp));
}

FockState tensor(const FockState& a, const FockState& b) {
  if (a.cutoff() != b.cutoff()) throw DomainError("tensor: cutoffs differ");
  std::vector<double> weights;
  std::vector<Ket> kets;
  for (std::size_t i = 0; i < a.kets().size(); ++i) {
    for (std::size_t j = 0; j < b.kets().size(); ++j) {
      const double w = a.weights()[i] * b.weights()[j];
      if (w < kPruneWeight) continue;
      Ket k(a.dimension() * b.dimension());
      for (long r = 0; r < a.dimension(); ++r) {
        k.segment(r * b.dimension(), b.dimension()) = a.kets()[i](r) * b.kets()[j];
      }
      weights.push_back(w);
      kets.push_back(std::move(k));
    }
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  const double leaked = 1.0 - (1.0 - a.leaked_weight()) * (1.0 - b.leaked_weight());
  return FockState(a.cutoff(), a.n_modes() + b.n_modes(), std::move(weights),
                   std::move(kets), leaked);
}

FockState apply_nla_fock(const FockState& state, int mode, double gain) {
  if (mode < 0 || mode >= state.n_modes()) throw DomainError("apply_nla_fock: bad mode");
  if (!(gain > 0.0)) throw DomainError("apply_nla_fock: gain must be positive");
  const double log_g = std::log(gain);
  if (state.cutoff() * std::abs(log_g) > 709.0) {
    throw OverflowGuardError("apply_nla_fock: g^cutoff overflows a double");
  }
  // Scale by g^(n - cutoff) when g > 1 so that factors stay <= 1.
  const int shift = gain > 1.0 ? state.cutoff() : 0;
  std::vector<double> factor(state.cutoff() + 1);
  for (int n = 0; n <= state.cutoff(); ++n) factor[n] = std::exp((n - shift) * log_g);

  std::vector<double> weights;
  std::vector<Ket> kets;
  for (std::size_t k = 0; k < state.kets().size(); ++k) {
    Ket psi = state.kets()[k];
    for (long idx = 0; idx < psi.size(); ++idx) psi(idx) *= factor[state.occupation(idx, mode)];
    const double n2 = psi.squaredNorm();
    if (!(n2 > 0.0)) continue;
    weights.push_back(state.weights()[k] * n2);
    kets.push_back(psi / std::sqrt(n2));
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw NonConvergentError("apply_nla_fock: state annihilated");
  std::vector<double> pruned_w;
  std::vector<Ket> pruned_k;
  double dropped = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double w = weights[k] / total;
    if (w < kPruneWeight) {
      dropped += w;
      continue;
    }
    pruned_w.push_back(w);
    pruned_k.push_back(std::move(kets[k]));
  }
  for (double& w : pruned_w) w /= (1.0 - dropped);
  return FockState(state.cutoff(), state.n_modes(), std::move(pruned_w),
                   std::move(pruned_k), state.leaked_weight() + dropped);
}

FockState beamsplitter_fock(const FockState& state, int mode_i, int mode_j,
                            double transmission,
                            BeamsplitterConvention convention) {
  const int m = state.n_modes();
  if (mode_i < 0 || mode_j < 0 || mode_i >= m || mode_j >= m || mode_i == mode_j) {
    throw DomainError("beamsplitter_fock: invalid mode pair");
  }
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw DomainError("beamsplitter_fock: transmission outside [0, 1]");
  }
  const int c = state.cutoff();
  double theta = std::acos(std::sqrt(transmission));
  if (convention == BeamsplitterConvention::Flipped) theta = -theta;

  std::vector<Eigen::MatrixXd> blocks(2 * c + 1);
  for (int total = 0; total <= 2 * c; ++total) {
    blocks[total] = block_unitary(total, std::max(0, total - c), std::min(total, c), theta);
  }
  std::vector<long> rest;
  for (long idx = 0; idx < state.dimension(); ++idx) {
    if (state.occupation(idx, mode_i) == 0 && state.occupation(idx, mode_j) == 0) rest.push_back(idx);
  }
  const long si = state.stride(mode_i);
  const long sj = state.stride(mode_j);

  std::vector<Ket> kets;
  kets.reserve(state.kets().size());
  Eigen::VectorXcd slice;
  for (const Ket& psi : state.kets()) {
    Ket out(psi.size());
    for (long base : rest) {
      for (int total = 0; total <= 2 * c; ++total) {
        const int k_lo = std::max(0, total - c);
        const int k_hi = std::min(total, c);
        slice.resize(k_hi - k_lo + 1);
        for (int k = k_lo; k <= k_hi; ++k) slice(k - k_lo) = psi(base + k * si + (total - k) * sj);
        slice = blocks[total] * slice;
        for (int k = k_lo; k <= k_hi; ++k) out(base + k * si + (total - k) * sj) = slice(k - k_lo);
      }
    }
    kets.push_back(std::move(out));
  }
  return FockState(c, m, state.weights(), std::move(kets), state.leaked_weight());
}

GaussianState cm_from_fock(const FockState& state) {
  const int m = state.n_modes();
  Eigen::VectorXcd first = Eigen::VectorXcd::Zero(m);
  Eigen::MatrixXcd nmat = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd amat = Eigen::MatrixXcd::Zero(m, m);
  for (std::size_t k = 0; k < state.kets().size(); ++k) {
    const double w = state.weights()[k];
    const Ket& psi = state.kets()[k];
    std::vector<Ket> low(m);
    for (int i = 0; i < m; ++i) low[i] = lower(state, psi, i);
    for (int i = 0; i < m; ++i) {
      first(i) += w * psi.dot(low[i]);
      for (int j = 0; j < m; ++j) {
        nmat(i, j) += w * low[i].dot(low[j]);
        amat(i, j) += w * psi.dot(lower(state, low[j], i));
      }
    }
  }
  Vector mean(2 * m);
  for (int k = 0; k < 2 * m; ++k) mean(k) = 2.0 * (quadrature_u(k) * first(k / 2)).real();
  CovarianceMatrix cov(2 * m, 2 * m);
  for (int k = 0; k < 2 * m; ++k) {
    for (int l = 0; l < 2 * m; ++l) {
      const int a = k / 2;
      const int b = l / 2;
      const Complex uk = quadrature_u(k);
      const Complex ul = quadrature_u(l);
      const Complex rr = uk * ul * amat(a, b) +
                         uk * std::conj(ul) * (nmat(b, a) + (a == b ? 1.0 : 0.0)) +
                         std::conj(uk) * ul * nmat(a, b) +
                         std::conj(uk) * std::conj(ul) * std::conj(amat(a, b));
      cov(k, l) = rr.real() - mean(k) * mean(l);
    }
  }
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(std::move(mean), std::move(cov));
}

Vector third_central_moments(const FockState& state) {
  const int m = state.n_modes();
  Eigen::VectorXcd a1 = Eigen::VectorXcd::Zero(m), a2 = a1, a3 = a1, ada2 = a1;
  Eigen::VectorXd n1 = Eigen::VectorXd::Zero(m);
  for (std::size_t k = 0; k < state.kets().size(); ++k) {
    const double w = state.weights()[k];
    const Ket& psi = state.kets()[k];
    for (int i = 0; i < m; ++i) {
      const Ket l1 = lower(state, psi, i);
      const Ket l2 = lower(state, l1, i);
      const Ket l3 = lower(state, l2, i);
      a1(i) += w * psi.dot(l1);
      a2(i) += w * psi.dot(l2);
      a3(i) += w * psi.dot(l3);
      ada2(i) += w * l1.dot(l2);
      n1(i) += w * l1.squaredNorm();
    }
  }
  Vector out(2 * m);
  for (int k = 0; k < 2 * m; ++k) {
    const int i = k / 2;
    const Complex u = quadrature_u(k);
    const double x1 = 2.0 * (u * a1(i)).real();
    const double x2 = 2.0 * (u * u * a2(i)).real() + 2.0 * n1(i) + 1.0;
    const double x3 = 2.0 * (u * u * u * a3(i)).real() + 6.0 * (u * ada2(i)).real() + 3.0 * x1;
    out(k) = x3 - 3.0 * x1 * x2 + 2.0 * x1 * x1 * x1;
  }
  return out;
}

Vector photon_marginal(const FockState& state, int mode) {
  if (mode < 0 || mode >= state.n_modes()) throw DomainError("photon_marginal: bad mode");
  Vector p = Vector::Zero(state.cutoff() + 1);
  for (std::size_t k = 0; k < state.kets().size(); ++k) {
    const Ket& psi = state.kets()[k];
    for (long idx = 0; idx < psi.size(); ++idx) {
      p(state.occupation(idx, mode)) += state.weights()[k] * std::norm(psi(idx));
    }
  }
  return p;
}

}  // namespace nla::fock
