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

#include "nla/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "nla/errors.hpp"

namespace nla {

Matrix omega(int n_modes) {
  if (n_modes < 1) throw DomainError("omega: n_modes must be >= 1");
  Matrix om = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    om(2 * k, 2 * k + 1) = 1.0;
    om(2 * k + 1, 2 * k) = -1.0;
  }
  return om;
}

Matrix beamsplitter(int n_modes, int mode_i, int mode_j, double transmission,
                    BeamsplitterConvention convention) {
  if (mode_i == mode_j || mode_i < 0 || mode_j < 0 || mode_i >= n_modes ||
      mode_j >= n_modes) {
    throw DomainError("beamsplitter: invalid mode pair (" +
                      std::to_string(mode_i) + ", " + std::to_string(mode_j) +
                      ")");
  }
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw DomainError("beamsplitter: transmission outside [0, 1]");
  }
  const double t = std::sqrt(transmission);
  const double r = std::sqrt(1.0 - transmission);
  const double sign_ij =
      convention == BeamsplitterConvention::Standard ? 1.0 : -1.0;

  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  const auto i2 = Eigen::Matrix2d::Identity();
  s.block<2, 2>(2 * mode_i, 2 * mode_i) = t * i2;
  s.block<2, 2>(2 * mode_j, 2 * mode_j) = t * i2;
  s.block<2, 2>(2 * mode_i, 2 * mode_j) = sign_ij * r * i2;
  s.block<2, 2>(2 * mode_j, 2 * mode_i) = -sign_ij * r * i2;
  return s;
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cov) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 || cov.rows() == 0) {
    throw DomainError("symplectic_eigenvalues: expected a non-empty square "
                      "matrix of even dimension");
  }
  const int n = static_cast<int>(cov.rows() / 2);
  const Matrix om_sigma = omega(n) * cov;
  Eigen::EigenSolver<Matrix> solver(om_sigma, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw SolverError("symplectic_eigenvalues: eigensolver failed");
  }
  // For Σ > 0 the spectrum of ΩΣ is {±iλ_k}. Indefinite inputs can have
  // real eigenvalues, which contribute |Im| = 0 and so read as unphysical.
  std::vector<double> moduli;
  moduli.reserve(2 * n);
  for (const auto& ev : solver.eigenvalues()) {
    moduli.push_back(std::abs(ev.imag()));
  }
  std::sort(moduli.begin(), moduli.end());

  std::vector<double> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    out.push_back(0.5 * (moduli[2 * k] + moduli[2 * k + 1]));
  }
  return out;
}

PhysicalityReport is_physical(const CovarianceMatrix& cov, double tol) {
  PhysicalityReport report;
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 || cov.rows() == 0) {
    return report;
  }
  const Matrix sym = 0.5 * (cov + cov.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  report.positive_definite = es.eigenvalues().minCoeff() > 0.0;
  const auto eigs = symplectic_eigenvalues(sym);
  report.lambda_min = eigs.front();
  report.physical = report.positive_definite && report.lambda_min >= 1.0 - tol;
  return report;
}

}  // namespace nla
