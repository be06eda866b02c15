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

#include "nla/effective_circuits.hpp"
#include "nla/errors.hpp"
#include "nla/fock_oracle.hpp"
#include "nla/nla_map.hpp"

using namespace nla;
using namespace nla::fock;
using Catch::Matchers::WithinAbs;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// EPR(chi) on modes 0,1 with a thermal environment on mode 2 mixed into mode 1.
FockState lossy_epr(double chi, double t, double v_env, int cutoff) {
  return beamsplitter_fock(tensor(fock_epr(chi, cutoff), fock_thermal(v_env, cutoff)), 1, 2, t);
}

// ⟨ψ|ρ_AB|ψ⟩ for a two-mode target ket and a three-mode ensemble whose last
// mode is traced out.
double overlap_with_target(const FockState& rho, const Ket& target) {
  const long d = rho.cutoff() + 1;
  double f = 0.0;
  for (std::size_t k = 0; k < rho.kets().size(); ++k) {
    const Ket& psi = rho.kets()[k];
    for (long e = 0; e < d; ++e) {
      Complex amp = 0.0;
      for (long ab = 0; ab < d * d; ++ab) amp += std::conj(target(ab)) * psi(ab * d + e);
      f += rho.weights()[k] * std::norm(amp);
    }
  }
  return f;
}

}  // namespace

TEST_CASE("Fock constructors reproduce Gaussian moments") {
  SECTION("vacuum") {
    const GaussianState s = cm_from_fock(fock_thermal(1.0, 10));
    CHECK(max_abs(s.cov() - Matrix::Identity(2, 2)) < 1e-15);
    CHECK(s.mean().isZero());
  }
  SECTION("coherent") {
    const GaussianState s = cm_from_fock(fock_coherent(Complex(0.5, 0.5), 40));
    CHECK_THAT(s.mean()(0), WithinAbs(1.0, 1e-8));
    CHECK_THAT(s.mean()(1), WithinAbs(1.0, 1e-8));
    CHECK(max_abs(s.cov() - Matrix::Identity(2, 2)) < 1e-8);
  }
  SECTION("thermal") {
    const FockState th = fock_thermal(1.5, 60);
    CHECK(max_abs(cm_from_fock(th).cov() - 1.5 * Matrix::Identity(2, 2)) < 1e-10);
    CHECK_FALSE(th.truncation_warning());
    CHECK(fock_thermal(5.0, 5).truncation_warning());
  }
  SECTION("squeezed") {
    const GaussianState s = cm_from_fock(fock_squeezed(1.5, 60));
    CHECK(max_abs(s.cov() - make_squeezed(1.5).cov()) < 1e-7);
  }
  SECTION("EPR") {
    const GaussianState s = cm_from_fock(fock_epr(0.4, 40));
    CHECK(max_abs(s.cov() - make_epr(0.4).cov()) < 1e-8);
  }
  SECTION("Gaussian states have vanishing third moments") {
    CHECK(third_central_moments(fock_coherent(Complex(0.7, -0.2), 40)).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(third_central_moments(fock_squeezed(2.0, 60)).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(third_central_moments(fock_epr(0.5, 40)).cwiseAbs().maxCoeff() < 1e-6);
    const Ket one = Ket::Unit(11, 1);
    const FockState photon(10, 1, {1.0}, {one});
    CHECK(cm_from_fock(photon).cov()(0, 0) == 3.0);
  }
}

TEST_CASE("Density matrix view") {
  const FockState th = fock_thermal(2.0, 8);
  const Eigen::MatrixXcd rho = th.density_matrix();
  CHECK_THAT(rho.trace().real(), WithinAbs(1.0, 1e-14));
  CHECK((rho - rho.adjoint()).norm() < 1e-15);
  const Vector p = photon_marginal(th, 0);
  CHECK_THAT(p.sum(), WithinAbs(1.0, 1e-14));
  CHECK_THAT(p(1) / p(0), WithinAbs(0.5 / 1.5, 1e-12));
  CHECK_THROWS_AS(fock_epr(0.3, 64).density_matrix(), DomainError);
}

TEST_CASE("Fock amplifier") {
  SECTION("unit gain is the identity") {
    const FockState s = fock_epr(0.4, 20);
    const FockState r = apply_nla_fock(s, 1, 1.0);
    CHECK((r.kets()[0] - s.kets()[0]).norm() < 1e-15);
  }
  SECTION("EPR(chi) becomes EPR(g chi)") {
    const FockState r = apply_nla_fock(fock_epr(0.5, 60), 1, 1.5);
    const FockState ref = fock_epr(0.75, 60);
    CHECK(std::abs(std::abs(r.kets()[0].dot(ref.kets()[0])) - 1.0) < 1e-8);
  }
  SECTION("thermal variance converges to the analytic value with cutoff") {
    double prev = 1e300;
    for (int cutoff : {40, 60, 80}) {
      const double var = cm_from_fock(apply_nla_fock(fock_thermal(1.5, cutoff), 0, 2.0)).cov()(0, 0);
      const double res = std::abs(var - 9.0);
      CHECK(res < prev);
      prev = res;
    }
    CHECK(prev < 1e-5);
  }
  SECTION("past the boundary the variance keeps growing") {
    double prev = 0.0;
    for (int cutoff : {20, 40, 80}) {
      const double var = cm_from_fock(apply_nla_fock(fock_thermal(1.5, cutoff), 0, 3.0)).cov()(0, 0);
      CHECK(var > 1.5 * prev);
      prev = var;
    }
  }
  SECTION("overflow guard") {
    CHECK_THROWS_AS(apply_nla_fock(fock_thermal(1.5, 700), 0, 3.0), OverflowGuardError);
    CHECK_THROWS_AS(apply_nla_fock(fock_thermal(1.5, 10), 0, 0.0), DomainError);
    CHECK_THROWS_AS(apply_nla_fock(fock_thermal(1.5, 10), 1, 1.5), DomainError);
  }
}

TEST_CASE("Fock beamsplitter") {
  SECTION("unit transmission is the identity") {
    const FockState s = tensor(fock_coherent(Complex(0.3, 0.1), 10), fock_squeezed(1.4, 10));
    const FockState r = beamsplitter_fock(s, 0, 1, 1.0);
    CHECK((r.kets()[0] - s.kets()[0]).norm() < 1e-14);
  }
  SECTION("a single photon splits evenly") {
    const int c = 4;
    const FockState one(c, 1, {1.0}, {Ket::Unit(c + 1, 1)});
    const FockState r = beamsplitter_fock(tensor(one, fock_thermal(1.0, c)), 0, 1, 0.5);
    CHECK_THAT(photon_marginal(r, 0)(1), WithinAbs(0.5, 1e-14));
    CHECK_THAT(photon_marginal(r, 1)(1), WithinAbs(0.5, 1e-14));
  }
  SECTION("Gaussian sector matches the symplectic matrix") {
    const int c = 30;
    const FockState in = tensor(fock_coherent(Complex(0.4, -0.3), c), fock_squeezed(1.6, c));
    const GaussianState g_in = cm_from_fock(in);
    for (auto conv : {BeamsplitterConvention::Standard, BeamsplitterConvention::Flipped}) {
      const GaussianState out = cm_from_fock(beamsplitter_fock(in, 0, 1, 0.3, conv));
      const GaussianState ref = apply_symplectic(g_in, beamsplitter(2, 0, 1, 0.3, conv));
      CHECK(max_abs(out.cov() - ref.cov()) < 1e-7);
      CHECK(max_abs(out.mean() - ref.mean()) < 1e-7);
    }
  }
  CHECK_THROWS_AS(beamsplitter_fock(fock_epr(0.2, 4), 0, 0, 0.5), DomainError);
  CHECK_THROWS_AS(beamsplitter_fock(fock_epr(0.2, 4), 0, 1, 1.5), DomainError);
}

TEST_CASE("Oracle agrees with the analytic EPR channel") {
  const FockState amp = apply_nla_fock(lossy_epr(0.4, 0.8, 1.1, 60), 1, 1.5);
  const int keep[] = {0, 1};
  const GaussianState oracle = select_modes(cm_from_fock(amp), keep);
  const EprChannelResult ana = epr_channel_nla(0.4, 0.8, 1.1, 1.5);
  CHECK(max_abs(oracle.cov() - ana.cm.matrix()) < 1e-5);
  CHECK(third_central_moments(amp).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("Oracle fidelity against a pure EPR target") {
  const int c = 30;
  for (double g : {1.0, 1.3, 1.8}) {
    const FockState amp = apply_nla_fock(lossy_epr(0.3, 0.7, 1.05, c), 1, g);
    for (double chi_t : {0.2, 0.45}) {
      const double f_fock = overlap_with_target(amp, fock_epr(chi_t, c).kets()[0]);
      const StandardForm target{epr_variance(chi_t), epr_variance(chi_t), epr_correlation(chi_t)};
      const double f = fidelity_two_mode(epr_channel_nla(0.3, 0.7, 1.05, g).cm, target);
      CHECK_THAT(f, WithinAbs(f_fock, 1e-6));
    }
  }
}

TEST_CASE("Oracle agrees with the four-mode cloner") {
  const int c = 12;
  const double chi = 0.3, ve = 1.1, t = 0.5, g = 1.3;
  const double v = epr_variance(chi);
  const double ratio_e = std::sqrt((ve - 1.0) / (ve + 1.0));
  FockState s = tensor(fock_two_mode_squeezed(chi, c), fock_two_mode_squeezed(ratio_e, c));
  s = apply_nla_fock(beamsplitter_fock(s, kBob, kEve1, t), kBob, g);
  const GaussianState oracle = cm_from_fock(s);
  CHECK(max_abs(oracle.cov() - cloner_nla_cm(v, ve, t, g)) < 1e-4);
}
