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
#include <complex>
#include <random>

#include "nla/errors.hpp"
#include "nla/gaussian_state.hpp"
#include "nla/state_io.hpp"

using namespace nla;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Fidelity through determinant invariants of the full matrices.
double fidelity_by_determinants(const CovarianceMatrix& s1, const CovarianceMatrix& s2) {
  const int n = static_cast<int>(s1.rows());
  const Matrix w = omega(n / 2);
  const Eigen::MatrixXcd iw = std::complex<double>(0.0, 1.0) * w.cast<std::complex<double>>();
  const double gamma = (w * s1 * w * s2 - Matrix::Identity(n, n)).determinant() / 16.0;
  const double lambda = ((s1.cast<std::complex<double>>() + iw).determinant() *
                         (s2.cast<std::complex<double>>() + iw).determinant()).real() / 16.0;
  const double theta = (s1 + s2).determinant() / 16.0;
  const double s = std::sqrt(gamma) + std::sqrt(std::max(0.0, lambda));
  return 1.0 / (s - std::sqrt(std::max(0.0, s * s - theta)));
}

StandardForm random_physical_form(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double chi = 0.8 * u(rng);
  const double t = 0.2 + 0.8 * u(rng);
  const double ve = 1.0 + 2.0 * u(rng);
  const double va = epr_variance(chi);
  return {va, t * va + (1.0 - t) * ve, std::sqrt(t) * epr_correlation(chi)};
}

}  // namespace

TEST_CASE("GaussianState validates its inputs") {
  CHECK_NOTHROW(GaussianState(Vector::Zero(2), Matrix::Identity(2, 2)));
  CHECK_THROWS_AS(GaussianState(Vector::Zero(3), Matrix::Identity(3, 3)), DomainError);
  CHECK_THROWS_AS(GaussianState(Vector::Zero(2), Matrix::Identity(4, 4)), DomainError);
  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(GaussianState(Vector::Zero(2), asym), DomainError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(GaussianState(Vector::Zero(2), bad), DomainError);

  const GaussianState vac = GaussianState::vacuum(3);
  CHECK(vac.n_modes() == 3);
  CHECK(vac.cov().isIdentity());
}

TEST_CASE("Excess noise and environment variance are inverse maps") {
  for (double t : {0.1, 0.5, 0.8, 0.99}) {
    for (double xi : {0.0, 0.01, 0.1, 0.5}) {
      CHECK_THAT(ve_to_xi(t, xi_to_ve(t, xi)), WithinAbs(xi, 1e-12));
    }
  }
  CHECK_THAT(xi_to_ve(0.5, 0.1), WithinAbs(1.1, 1e-14));
  CHECK(xi_to_ve(1.0, 0.0) == 1.0);
  CHECK_THROWS_AS(xi_to_ve(1.0, 0.1), DomainError);
  CHECK_THROWS_AS(xi_to_ve(0.0, 0.1), DomainError);
  CHECK_THROWS_AS(ChannelSpec::from_environment(0.5, 0.9), DomainError);
  CHECK_THROWS_AS(ChannelSpec::from_excess_noise(0.5, -0.1), DomainError);
  const ChannelSpec spec = ChannelSpec::from_excess_noise(0.5, 0.1);
  CHECK_THAT(spec.v_env(), WithinAbs(1.1, 1e-14));
}

TEST_CASE("EPR state entries") {
  const GaussianState epr = make_epr(0.4);
  CHECK_THAT(epr.cov()(0, 0), WithinAbs(1.16 / 0.84, 1e-14));
  CHECK_THAT(epr.cov()(0, 2), WithinAbs(0.8 / -0.84, 1e-14));
  CHECK_THAT(epr.cov()(1, 3), WithinAbs(-0.8 / -0.84, 1e-14));
  CHECK(make_epr(0.0).cov().isIdentity(1e-15));
  CHECK_THROWS_AS(make_epr(1.0), DomainError);
  CHECK_THROWS_AS(make_epr(-0.1), DomainError);

  const GaussianState cl = make_epr_from_variance(2.0);
  CHECK_THAT(cl.cov()(0, 2), WithinAbs(std::sqrt(3.0), 1e-14));
  for (double v : symplectic_eigenvalues(epr.cov())) CHECK_THAT(v, WithinAbs(1.0, 1e-12));
}

TEST_CASE("Thermal-loss channel: closed form equals dilation") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    const double chi = 0.9 * u(rng);
    const double t = 0.05 + 0.95 * u(rng);
    const double ve = 1.0 + 3.0 * u(rng);
    GaussianState in = make_epr(chi);
    in = GaussianState(Vector::Random(4), in.cov());
    const ChannelSpec spec = ChannelSpec::from_environment(t, ve);
    const GaussianState a = gaussian_channel(in, 1, spec);
    const GaussianState b = gaussian_channel_dilated(in, 1, spec);
    CHECK((a.cov() - b.cov()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.mean() - b.mean()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(is_physical(a.cov()).physical);
  }
  const GaussianState epr = make_epr(0.4);
  const GaussianState same = gaussian_channel(epr, 1, ChannelSpec::identity());
  CHECK((same.cov() - epr.cov()).norm() < 1e-15);
  CHECK_THROWS_AS(gaussian_channel(epr, 2, ChannelSpec::identity()), DomainError);
}

TEST_CASE("Mode selection and direct sums") {
  const GaussianState s = direct_sum(make_thermal(2.0), make_epr(0.3));
  CHECK(s.n_modes() == 3);
  const int drop[] = {0};
  const GaussianState rest = discard_modes(s, drop);
  CHECK((rest.cov() - make_epr(0.3).cov()).norm() < 1e-15);
  const int order[] = {2, 0};
  const GaussianState sel = select_modes(s, order);
  CHECK_THAT(sel.cov()(2, 2), WithinAbs(2.0, 1e-15));
  CHECK_THAT(sel.cov()(0, 0), WithinAbs(epr_variance(0.3), 1e-15));
}

TEST_CASE("Purity") {
  CHECK_THAT(purity(GaussianState::vacuum(2)), WithinAbs(1.0, 1e-14));
  CHECK_THAT(purity(make_thermal(1.5)), WithinAbs(1.0 / 1.5, 1e-14));
  CHECK_THAT(purity(make_epr(0.7)), WithinAbs(1.0, 1e-10));
  CHECK_THAT(purity(make_squeezed(3.0)), WithinAbs(1.0, 1e-14));
  const GaussianState lossy = gaussian_channel(make_epr(0.4), 1,
                                               ChannelSpec::from_environment(0.5, 1.1));
  CHECK(purity(lossy) < 1.0);
  CHECK_THROWS_AS(purity(GaussianState(Vector::Zero(2), 0.5 * Matrix::Identity(2, 2))),
                  DomainError);
}

TEST_CASE("Partial transpose and log negativity") {
  const double chi = 0.4;
  const GaussianState epr = make_epr(chi);
  const int bob[] = {1};
  const CovarianceMatrix pt = partial_transpose(epr.cov(), bob);
  CHECK(pt(3, 3) == epr.cov()(3, 3));
  CHECK(pt(1, 3) == -epr.cov()(1, 3));
  CHECK_THAT(log_negativity(epr.cov()), WithinAbs(std::log(7.0 / 3.0), 1e-12));
  CHECK_THAT(log_negativity(epr.cov(), LogBase::Two), WithinAbs(std::log2(7.0 / 3.0), 1e-12));
  CHECK_THAT(log_negativity(epr.cov(), LogBase::Ten), WithinAbs(std::log10(7.0 / 3.0), 1e-12));
  CHECK(log_negativity(Matrix::Identity(4, 4)) == 0.0);
  // Separable: heavily loss-degraded with a hot environment.
  const GaussianState sep = gaussian_channel(epr, 1, ChannelSpec::from_environment(0.2, 3.0));
  CHECK(log_negativity(sep.cov()) == 0.0);
  CHECK_THROWS_AS(log_negativity(Matrix::Identity(2, 2)), DomainError);
  CHECK_THROWS_AS(log_negativity(0.5 * Matrix::Identity(4, 4)), DomainError);
}

TEST_CASE("Closed-form PT eigenvalues agree with the eigensolver") {
  std::mt19937 rng(5);
  const int bob[] = {1};
  for (int k = 0; k < 40; ++k) {
    const StandardForm sf = random_physical_form(rng);
    const auto [lm, lp] = pt_eigs_two_mode(sf);
    const auto ev = symplectic_eigenvalues(partial_transpose(sf.matrix(), bob));
    CHECK_THAT(lm, WithinAbs(ev[0], 1e-10));
    CHECK_THAT(lp, WithinAbs(ev[1], 1e-10));
  }
}

TEST_CASE("Standard form round trip") {
  const StandardForm sf{1.7, 1.3, -0.9};
  const StandardForm back = StandardForm::from_matrix(sf.matrix());
  CHECK(back.a == sf.a);
  CHECK(back.b == sf.b);
  CHECK(back.c == sf.c);
  Matrix m = sf.matrix();
  m(0, 1) = m(1, 0) = 0.2;
  CHECK_THROWS_AS(StandardForm::from_matrix(m), DomainError);
}

TEST_CASE("Two-mode fidelity") {
  const auto epr = [](double x) {
    return StandardForm{epr_variance(x), epr_variance(x), epr_correlation(x)};
  };
  SECTION("identical states") {
    CHECK_THAT(fidelity_two_mode(epr(0.5), epr(0.5)), WithinAbs(1.0, 1e-7));
    const StandardForm mixed{2.0, 1.8, -1.2};
    CHECK_THAT(fidelity_two_mode(mixed, mixed), WithinAbs(1.0, 1e-10));
  }
  SECTION("pure pair overlap") {
    const double x = 0.3, y = 0.5;
    const double overlap = std::sqrt((1 - x * x) * (1 - y * y)) / (1 - x * y);
    CHECK_THAT(fidelity_two_mode(epr(x), epr(y)), WithinAbs(overlap * overlap, 1e-7));
    CHECK_THAT(overlap * overlap, WithinAbs(0.9446366782, 1e-9));
  }
  SECTION("vacuum target") {
    const double x = 0.6;
    CHECK_THAT(fidelity_two_mode(epr(x), epr(0.0)), WithinAbs(1 - x * x, 1e-7));
  }
  SECTION("determinant invariants on random mixed pairs") {
    std::mt19937 rng(99);
    for (int k = 0; k < 40; ++k) {
      const StandardForm s1 = random_physical_form(rng);
      const StandardForm s2 = random_physical_form(rng);
      const double f = fidelity_two_mode(s1, s2);
      CHECK(f > 0.0);
      CHECK(f <= 1.0);
      CHECK_THAT(f, WithinAbs(fidelity_by_determinants(s1.matrix(), s2.matrix()), 1e-9));
      CHECK_THAT(f, WithinAbs(fidelity_two_mode(s2, s1), 1e-12));
    }
  }
  CHECK_THROWS_AS(fidelity_two_mode(StandardForm{0.5, 0.5, 0.0}, epr(0.2)), DomainError);
}

TEST_CASE("State JSON round trip") {
  const GaussianState s(Vector::LinSpaced(4, -1.0, 2.0), make_epr(0.35).cov());
  const GaussianState back = state_from_json(state_to_json(s));
  CHECK(back.mean() == s.mean());
  CHECK(back.cov() == s.cov());
  CHECK(state_to_json(s).at("n_modes") == 2);
  CHECK_THROWS_AS(state_from_json(nlohmann::json::parse(R"({"n_modes": 1, "mean": [0]})")),
                  DomainError);
  CHECK_THROWS_AS(state_from_json(nlohmann::json::parse(
                      R"({"n_modes": 1, "mean": [0, 0], "cov": [[1, 0.5], [0, 1]]})")),
                  DomainError);
}
