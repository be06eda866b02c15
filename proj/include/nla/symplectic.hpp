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
#include <vector>

namespace nla {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Real symmetric 2N×2N matrix of symmetrised second moments, ordered
/// (x1, p1, ..., xN, pN), vacuum = identity. Physicality is checked by
/// is_physical() rather than enforced: partial transposes and over-gained
/// amplifier outputs are legitimate non-physical values.
using CovarianceMatrix = Eigen::MatrixXd;

constexpr double kSymmetryTol = 1e-12;
constexpr double kPhysicalityTol = 1e-9;

/// Block-diagonal symplectic form, N copies of [[0,1],[-1,0]].
Matrix omega(int n_modes);

/// Where the minus sign of the mode-coupling blocks sits.
///
/// Standard: x_i' = √T x_i + √(1-T) x_j,  x_j' = -√(1-T) x_i + √T x_j.
/// Flipped:  the minus sign moves onto the (i, j) block.
enum class BeamsplitterConvention { Standard, Flipped };

/// 2N×2N symplectic matrix mixing modes i and j with transmission T,
/// identity on all other modes.
Matrix beamsplitter(int n_modes, int mode_i, int mode_j, double transmission,
                    BeamsplitterConvention convention =
                        BeamsplitterConvention::Standard);

bool is_symmetric(const Matrix& m, double tol = kSymmetryTol);

/// Moduli of the eigenvalues of ΩΣ, one per ±iλ pair, ascending.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cov);

struct PhysicalityReport {
  bool physical = false;
  bool positive_definite = false;
  double lambda_min = 0.0;
};

/// Σ > 0 and smallest symplectic eigenvalue >= 1 - tol.
PhysicalityReport is_physical(const CovarianceMatrix& cov,
                              double tol = kPhysicalityTol);

}  // namespace nla
