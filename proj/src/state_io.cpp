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

#include "nla/state_io.hpp"

#include "nla/errors.hpp"

namespace nla {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json state_to_json(const GaussianState& state) {
  nlohmann::json mean = nlohmann::json::array();
  for (Eigen::Index k = 0; k < state.mean().size(); ++k) {
    mean.push_back(state.mean()(k));
  }
  return {{"n_modes", state.n_modes()},
          {"mean", std::move(mean)},
          {"cov", matrix_to_json(state.cov())}};
}

GaussianState state_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n_modes").get<int>();
    if (n < 1) throw DomainError("state JSON: n_modes must be >= 1");
    const auto& mean_j = j.at("mean");
    const auto& cov_j = j.at("cov");
    if (!mean_j.is_array() || mean_j.size() != static_cast<std::size_t>(2 * n)) {
      throw DomainError("state JSON: mean must hold 2*n_modes numbers");
    }
    if (!cov_j.is_array() || cov_j.size() != static_cast<std::size_t>(2 * n)) {
      throw DomainError("state JSON: cov must have 2*n_modes rows");
    }
    Vector mean(2 * n);
    Matrix cov(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r) {
      mean(r) = mean_j[r].get<double>();
      if (!cov_j[r].is_array() ||
          cov_j[r].size() != static_cast<std::size_t>(2 * n)) {
        throw DomainError("state JSON: cov row " + std::to_string(r) +
                          " has the wrong length");
      }
      for (int c = 0; c < 2 * n; ++c) cov(r, c) = cov_j[r][c].get<double>();
    }
    return GaussianState(std::move(mean), std::move(cov));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("state JSON: ") + e.what());
  }
}

}  // namespace nla
