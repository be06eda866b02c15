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

#include <json.hpp>
#include <map>
#include <string>

#include "nla/gaussian_state.hpp"

namespace nla {

/// Scenarios: "coherent", "thermal", "squeezed" (single mode; V, dx, dp, g),
/// "epr-channel" (chi, T, V_E, g) and "cloner" (chi, V_E, T, g; four modes).
struct OracleCheckRequest {
  std::string scenario = "epr-channel";
  std::map<std::string, double> parameters;
  int cutoff = 40;
  double tolerance = 1e-6;
};

struct OracleReport {
  std::string scenario;
  int cutoff = 0;
  bool analytic_converged = false;
  /// Analytic route past the gain boundary; the oracle variance is then
  /// compared between cutoff/2 and cutoff to show it keeps growing.
  bool diverged = false;
  double max_cm_residual = 0.0;
  double max_mean_residual = 0.0;
  double max_third_moment = 0.0;
  double leaked_weight = 0.0;
  /// Estimated covariance error from the amplified tail beyond the cutoff;
  /// residuals are accepted up to max(tolerance, truncation_bound).
  double truncation_bound = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double oracle_trace_half_cutoff = 0.0;
  double oracle_trace_full_cutoff = 0.0;
  CovarianceMatrix analytic_cov;
  CovarianceMatrix oracle_cov;

  nlohmann::json to_json() const;
};

OracleReport oracle_check(const OracleCheckRequest& request);

}  // namespace nla
