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

#include "nla/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nla/effective_circuits.hpp"
#include "nla/errors.hpp"
#include "nla/fock_oracle.hpp"
#include "nla/nla_map.hpp"
#include "nla/state_io.hpp"

namespace nla {

namespace {

using ParamMap = std::map<std::string, double>;

double param(const ParamMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

struct Analytic {
  bool converged = false;
  GaussianState state = GaussianState::vacuum(1);
};

Analytic analytic_route(const OracleCheckRequest& r) {
  const ParamMap& p = r.parameters;
  const double g = param(p, "g", 1.0);
  if (r.scenario == "coherent" || r.scenario == "thermal" || r.scenario == "squeezed") {
    const Eigen::Vector2d d(param(p, "dx", 0.0), param(p, "dp", 0.0));
    const double v = param(p, "V", 1.5);
    GaussianState in = r.scenario == "coherent" ? make_coherent(d)
                       : r.scenario == "thermal" ? make_thermal(v, d)
                                                 : make_squeezed(v, d);
    const NlaResult out = nla_transform(in, GainProfile::single(1, 0, g));
    return {out.converged, out.state};
  }
  if (r.scenario == "epr-channel") {
    const NlaResult out = epr_channel_nla_pipeline(
        param(p, "chi", 0.4), param(p, "T", 1.0), param(p, "V_E", 1.0), g);
    return {out.converged, out.state};
  }
  if (r.scenario == "cloner") {
    const NlaResult out = cloner_nla_pipeline(epr_variance(param(p, "chi", 0.4)),
                                              param(p, "V_E", 1.1),
                                              param(p, "T", 0.5), g);
    return {out.converged, out.state};
  }
  throw DomainError("oracle_check: unknown scenario '" + r.scenario + "'");
}

double ratio_for_variance(double v) { return std::sqrt((v - 1.0) / (v + 1.0)); }

// Fock route; returns the reconstructed state on the modes of interest.
struct OracleRun {
  GaussianState state = GaussianState::vacuum(1);
  double third_moment = 0.0;
  double leaked = 0.0;
  double tail = 0.0;
};

// Missing second moment if each marginal continues geometrically past the
// cutoff, with the ratio read off the top two levels.
double tail_estimate(const fock::FockState& s) {
  double worst = 0.0;
  for (int k = 0; k < s.n_modes(); ++k) {
    const auto pn = fock::photon_marginal(s, k);
    const int n = static_cast<int>(pn.size()) - 1;
    const double top = pn(n);
    if (top <= 0.0) continue;
    const double r = pn(n - 1) > 0.0 ? top / pn(n - 1) : 0.0;
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    const double q = r / (1.0 - r);
    worst = std::max(worst, top * ((2.0 * n + 1.0) * q + 2.0 * q / (1.0 - r)));
  }
  return worst;
}

OracleRun oracle_route(const OracleCheckRequest& r, int cutoff) {
  using namespace nla::fock;
  const ParamMap& p = r.parameters;
  const double g = param(p, "g", 1.0);
  FockState s = fock_thermal(1.0, cutoff);
  int amplified = 0;
  std::vector<int> keep;
  if (r.scenario == "coherent") {
    s = fock_coherent(Complex(param(p, "dx", 0.0), param(p, "dp", 0.0)) / 2.0, cutoff);
  } else if (r.scenario == "thermal") {
    if (param(p, "dx", 0.0) != 0.0 || param(p, "dp", 0.0) != 0.0) {
      throw DomainError("oracle_check: displaced thermal input not supported");
    }
    s = fock_thermal(param(p, "V", 1.5), cutoff);
  } else if (r.scenario == "squeezed") {
    if (param(p, "dx", 0.0) != 0.0 || param(p, "dp", 0.0) != 0.0) {
      throw DomainError("oracle_check: displaced squeezed input not supported");
    }
    s = fock_squeezed(param(p, "V", 1.5), cutoff);
  } else if (r.scenario == "epr-channel") {
    const double t = param(p, "T", 1.0);
    s = fock_epr(param(p, "chi", 0.4), cutoff);
    if (t < 1.0) {
      s = beamsplitter_fock(tensor(s, fock_thermal(param(p, "V_E", 1.0), cutoff)), 1, 2, t);
      keep = {0, 1};
    }
    amplified = 1;
  } else if (r.scenario == "cloner") {
    s = tensor(fock_two_mode_squeezed(ratio_for_variance(epr_variance(param(p, "chi", 0.4))), cutoff),
               fock_two_mode_squeezed(ratio_for_variance(param(p, "V_E", 1.1)), cutoff));
    s = beamsplitter_fock(s, kBob, kEve1, param(p, "T", 0.5));
    amplified = kBob;
  } else {
    throw DomainError("oracle_check: unknown scenario '" + r.scenario + "'");
  }
  s = apply_nla_fock(s, amplified, g);

  OracleRun out;
  const GaussianState full = cm_from_fock(s);
  out.state = keep.empty() ? full : select_modes(full, keep);
  out.third_moment = third_central_moments(s).cwiseAbs().maxCoeff();
  out.leaked = s.leaked_weight();
  out.tail = tail_estimate(s);
  return out;
}

}  // namespace

OracleReport oracle_check(const OracleCheckRequest& request) {
  if (request.cutoff < 2) throw DomainError("oracle_check: cutoff must be >= 2");
  if (!(request.tolerance > 0.0)) throw DomainError("oracle_check: tolerance must be positive");
  OracleReport rep;
  rep.scenario = request.scenario;
  rep.cutoff = request.cutoff;
  rep.tolerance = request.tolerance;

  const Analytic a = analytic_route(request);
  rep.analytic_converged = a.converged;
  rep.diverged = !a.converged;

  const OracleRun full = oracle_route(request, request.cutoff);
  rep.oracle_cov = full.state.cov();
  rep.max_third_moment = full.third_moment;
  rep.leaked_weight = full.leaked;
  rep.truncation_bound = full.tail;
  rep.oracle_trace_full_cutoff = full.state.cov().trace();

  if (rep.diverged) {
    rep.oracle_trace_half_cutoff = oracle_route(request, request.cutoff / 2).state.cov().trace();
    rep.passed = false;
    return rep;
  }
  rep.analytic_cov = a.state.cov();
  rep.max_cm_residual = (full.state.cov() - a.state.cov()).cwiseAbs().maxCoeff();
  rep.max_mean_residual = (full.state.mean() - a.state.mean()).cwiseAbs().maxCoeff();
  const double tol = std::max(rep.tolerance, rep.truncation_bound);
  rep.passed = rep.max_cm_residual <= tol && rep.max_mean_residual <= tol;
  return rep;
}

nlohmann::json OracleReport::to_json() const {
  nlohmann::json j;
  j["scenario"] = scenario;
  j["cutoff"] = cutoff;
  j["analytic_converged"] = analytic_converged;
  j["diverged"] = diverged;
  j["max_cm_residual"] = max_cm_residual;
  j["max_mean_residual"] = max_mean_residual;
  j["max_third_moment"] = max_third_moment;
  j["leaked_weight"] = leaked_weight;
  j["truncation_bound"] = truncation_bound;
  j["truncation_warning"] = leaked_weight > 1e-6 || truncation_bound > 1e-6;
  j["tolerance"] = tolerance;
  j["passed"] = passed;
  if (diverged) {
    j["oracle_cov_trace_half_cutoff"] = oracle_trace_half_cutoff;
    j["oracle_cov_trace_full_cutoff"] = oracle_trace_full_cutoff;
  } else {
    j["analytic_cov"] = matrix_to_json(analytic_cov);
  }
  j["oracle_cov"] = matrix_to_json(oracle_cov);
  return j;
}

}  // namespace nla
