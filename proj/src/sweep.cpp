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

#include "nla/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <thread>

#include "nla/effective_circuits.hpp"
#include "nla/errors.hpp"
#include "nla/nla_map.hpp"
#include "nla/optimizer.hpp"

namespace nla {

namespace {

using ParamMap = std::map<std::string, double>;
using Cells = std::vector<std::string>;

struct PointResult {
  bool converged = false;
  Cells cells;  // observables; empty strings when not available
};

struct ScenarioInfo {
  std::vector<std::string> columns;
  std::set<std::string> sweepable;
  std::function<PointResult(const ParamMap&, LogBase)> evaluate;
};

double get(const ParamMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

double require(const ParamMap& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end()) throw DomainError("sweep: missing parameter '" + key + "'");
  return it->second;
}

std::string cell(double v) { return format_number(v); }
std::string cell(bool v) { return v ? "true" : "false"; }

// V_E from either "V_E" or "xi" (with "T").
double environment_variance(const ParamMap& p) {
  if (p.count("V_E")) return p.at("V_E");
  if (p.count("xi")) return xi_to_ve(require(p, "T"), p.at("xi"));
  return 1.0;
}

// Variance of the mode the amplifier acts on, used for g_max fractions.
double amplified_variance(Scenario s, const ParamMap& p) {
  if (s == Scenario::SingleMode) return get(p, "V", 1.5);
  const double t = require(p, "T");
  const double v = p.count("chi") ? epr_variance(p.at("chi")) : require(p, "V");
  return t * v + (1.0 - t) * environment_variance(p);
}

PointResult eval_single_mode(const ParamMap& p, LogBase) {
  const double v = get(p, "V", 1.5);
  const double g = require(p, "g");
  const Eigen::Vector2d d(get(p, "dx", 1.0), get(p, "dp", 1.0));
  const GainProfile gains = GainProfile::single(1, 0, g);
  const NlaResult coh = nla_transform(make_coherent(d), gains);
  const NlaResult th = nla_transform(make_thermal(v, d), gains);
  const NlaResult sq = nla_transform(make_squeezed(v, d), gains);

  PointResult r;
  r.converged = coh.converged && th.converged && sq.converged;
  auto emit = [&r](const NlaResult& res, bool both_variances) {
    r.cells.push_back(cell(res.converged));
    const int n = both_variances ? 4 : 3;
    if (!res.converged) {
      r.cells.insert(r.cells.end(), n, "");
      return;
    }
    r.cells.push_back(cell(res.state.mean()(0)));
    r.cells.push_back(cell(res.state.mean()(1)));
    r.cells.push_back(cell(res.state.cov()(0, 0)));
    if (both_variances) r.cells.push_back(cell(res.state.cov()(1, 1)));
  };
  emit(coh, false);
  emit(th, false);
  emit(sq, true);
  return r;
}

PointResult eval_epr_channel(const ParamMap& p, LogBase base) {
  const EprChannelResult out = epr_channel_nla(
      require(p, "chi"), require(p, "T"), environment_variance(p), require(p, "g"));
  PointResult r;
  r.converged = out.converged;
  if (!out.converged) {
    r.cells.assign(6, "");
    return r;
  }
  const CovarianceMatrix m = out.cm.matrix();
  r.cells = {cell(out.cm.a), cell(out.cm.b), cell(out.cm.c),
             cell(log_negativity(m, base)),
             cell(purity(GaussianState(Vector::Zero(4), m))),
             cell(out.denominator)};
  return r;
}

PointResult eval_effective(const ParamMap& p, LogBase) {
  const double t = require(p, "T");
  const double xi = p.count("xi") ? p.at("xi") : ve_to_xi(t, environment_variance(p));
  PointResult r;
  try {
    const EffectiveSingleSide e = effective_single_side(require(p, "chi"), t, xi, require(p, "g"));
    r.converged = true;
    r.cells = {cell(e.chi_eff), cell(e.t_eff), cell(e.xi_eff), cell(e.t_eff > 1.0)};
  } catch (const NonConvergentError&) {
    r.cells.assign(4, "");
  } catch (const DomainError&) {
    r.cells.assign(4, "");
  }
  return r;
}

PointResult eval_equivalent(const ParamMap& p, LogBase) {
  const double v = p.count("chi") ? epr_variance(p.at("chi")) : require(p, "V");
  const double ve = environment_variance(p);
  const double t = require(p, "T");
  const double g = require(p, "g");
  PointResult r;
  try {
    const EquivalentCircuit c = solve_equivalent_circuit(v, ve, t, g);
    const CovarianceMatrix m = cloner_nla_cm(v, ve, t, g);
    r.converged = true;
    r.cells = {cell(c.t_alice), cell(c.t_bob), cell(c.v_prime),
               cell(c.v_env_prime), cell(c.flipped_convention),
               cell(m(2 * kAlice, 2 * kEve2)), cell(c.residual)};
  } catch (const NonConvergentError&) {
    r.cells.assign(7, "");
  } catch (const SolverError&) {
    r.cells.assign(7, "");
  }
  return r;
}

PointResult eval_fidelity(const ParamMap& p, LogBase) {
  const ChannelSpec channel =
      ChannelSpec::from_environment(require(p, "T"), environment_variance(p));
  OptimizerConfig cfg;
  cfg.grid_points = static_cast<int>(get(p, "grid_points", cfg.grid_points));
  cfg.gain.hi = get(p, "g_max", cfg.gain.hi);
  PointResult r;
  try {
    const FidelityOptimum o = optimize_fidelity(require(p, "chi_T"), channel, cfg);
    r.converged = true;
    r.cells = {cell(o.chi), cell(o.gain), cell(o.fidelity),
               cell(o.baseline_chi), cell(o.baseline_fidelity)};
  } catch (const DomainError&) {
    r.cells.assign(5, "");
  }
  return r;
}

const ScenarioInfo& info(Scenario s) {
  static const ScenarioInfo single{
      {"coherent_converged", "coherent_dx", "coherent_dp", "coherent_v",
       "thermal_converged", "thermal_dx", "thermal_dp", "thermal_v",
       "squeezed_converged", "squeezed_dx", "squeezed_dp", "squeezed_vx",
       "squeezed_vp"},
      {"g", "V"},
      eval_single_mode};
  static const ScenarioInfo epr{
      {"V_A", "V_B", "c", "log_negativity", "purity", "denominator"},
      {"g", "chi", "T", "V_E"},
      eval_epr_channel};
  static const ScenarioInfo effective{
      {"chi_eff", "T_eff", "xi_eff", "T_eff_exceeds_1"},
      {"g", "chi", "T", "xi"},
      eval_effective};
  static const ScenarioInfo equivalent{
      {"T_A", "T_B", "V_prime", "V_E_prime", "flipped", "c_AE2", "residual"},
      {"g", "chi", "T", "V_E"},
      eval_equivalent};
  static const ScenarioInfo fidelity{
      {"chi", "g", "fidelity", "baseline_chi", "baseline_fidelity"},
      {"chi_T"},
      eval_fidelity};
  switch (s) {
    case Scenario::SingleMode: return single;
    case Scenario::EprChannel: return epr;
    case Scenario::EffectiveSingleSide: return effective;
    case Scenario::EquivalentCircuit: return equivalent;
    case Scenario::FidelityOptimize: return fidelity;
  }
  throw DomainError("sweep: unknown scenario");
}

std::vector<double> sweep_values(const SweepSpec& spec, const ParamMap& base) {
  const SweepRange& r = spec.sweep;
  double stop = r.stop;
  if (r.stop_is_gmax_fraction) {
    const double vb = amplified_variance(spec.scenario, base);
    const double g_max = max_gain_single_mode(vb);
    if (!std::isfinite(g_max)) throw DomainError("sweep: g_max is unbounded for this input");
    stop = r.stop * g_max;
  }
  std::vector<double> out(r.points);
  for (int i = 0; i < r.points; ++i) {
    out[i] = r.start + (stop - r.start) * i / double(r.points - 1);
  }
  return out;
}

}  // namespace

Scenario scenario_from_string(const std::string& name) {
  if (name == "single-mode") return Scenario::SingleMode;
  if (name == "epr-channel") return Scenario::EprChannel;
  if (name == "effective-single-side" || name == "effective") return Scenario::EffectiveSingleSide;
  if (name == "equivalent-circuit") return Scenario::EquivalentCircuit;
  if (name == "fidelity-optimize") return Scenario::FidelityOptimize;
  throw DomainError("unknown scenario '" + name + "'");
}

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::SingleMode: return "single-mode";
    case Scenario::EprChannel: return "epr-channel";
    case Scenario::EffectiveSingleSide: return "effective-single-side";
    case Scenario::EquivalentCircuit: return "equivalent-circuit";
    case Scenario::FidelityOptimize: return "fidelity-optimize";
  }
  return "unknown";
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

LogBase log_base_from_string(const std::string& name) {
  if (name == "e" || name == "natural") return LogBase::Natural;
  if (name == "2") return LogBase::Two;
  if (name == "10") return LogBase::Ten;
  throw DomainError("log base must be one of 2, e, 10");
}

unsigned sweep_thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NLA_NUM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

CsvTable run_sweep(const SweepSpec& spec) {
  const ScenarioInfo& si = info(spec.scenario);
  if (spec.sweep.points < 2) throw DomainError("sweep: points must be >= 2");
  if (!si.sweepable.count(spec.sweep.parameter)) {
    throw DomainError("sweep: parameter '" + spec.sweep.parameter +
                      "' cannot be swept in scenario " + to_string(spec.scenario));
  }
  if (spec.sweep.stop_is_gmax_fraction && spec.sweep.parameter != "g") {
    throw DomainError("sweep: g_max fractions apply to the gain only");
  }
  if (spec.series_parameter && spec.series_values.empty()) {
    throw DomainError("sweep: series parameter without values");
  }

  std::vector<ParamMap> points;
  const std::vector<double> series =
      spec.series_parameter ? spec.series_values : std::vector<double>{0.0};
  for (double s : series) {
    ParamMap base = spec.parameters;
    if (spec.series_parameter) base[*spec.series_parameter] = s;
    for (double x : sweep_values(spec, base)) {
      ParamMap p = base;
      p[spec.sweep.parameter] = x;
      points.push_back(std::move(p));
    }
  }

  std::vector<PointResult> results(points.size());
  std::vector<std::string> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = si.evaluate(points[i], spec.log_base);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned n_threads =
      std::min<unsigned>(sweep_thread_count(), static_cast<unsigned>(points.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const std::string& e : errors) {
    if (!e.empty()) throw DomainError("sweep: " + e);
  }

  CsvTable table;
  if (spec.series_parameter) table.header.push_back(*spec.series_parameter);
  table.header.push_back(spec.sweep.parameter);
  table.header.push_back("converged");
  table.header.insert(table.header.end(), si.columns.begin(), si.columns.end());

  bool any = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Cells row;
    if (spec.series_parameter) row.push_back(cell(points[i].at(*spec.series_parameter)));
    row.push_back(cell(points[i].at(spec.sweep.parameter)));
    row.push_back(cell(results[i].converged));
    row.insert(row.end(), results[i].cells.begin(), results[i].cells.end());
    table.rows.push_back(std::move(row));
    any = any || results[i].converged;
  }
  if (!any) throw NonConvergentError("sweep: no point in the range converges");
  return table;
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
}

SweepSpec preset(const std::string& name) {
  SweepSpec s;
  if (name == "fig1" || name == "fig2") {
    s.scenario = Scenario::SingleMode;
    s.parameters = {{"V", 1.5}, {"dx", 1.0}, {"dp", 1.0}};
    s.sweep = {"g", 1.0, 4.975, 160, false};
  } else if (name == "fig3" || name == "fig4") {
    s.scenario = Scenario::EprChannel;
    s.parameters = {{"chi", 0.4}, {"V_E", 1.1}};
    s.sweep = {"g", 1.0, 0.999, 200, true};
    s.series_parameter = "T";
    s.series_values = {1.0, 0.8, 0.5};
  } else if (name == "fig5") {
    s.scenario = Scenario::FidelityOptimize;
    s.parameters = {{"V_E", 1.01}};
    s.sweep = {"chi_T", 0.05, 0.95, 19, false};
    s.series_parameter = "T";
    s.series_values = {1.0, 0.9, 0.5};
  } else if (name == "fig6") {
    s.scenario = Scenario::EffectiveSingleSide;
    s.parameters = {{"chi", 0.4}, {"V_E", 1.1}, {"T", 0.5}};
    s.sweep = {"g", 1.0, 0.999, 200, true};
  } else if (name == "fig7" || name == "fig8" || name == "fig9") {
    s.scenario = Scenario::EquivalentCircuit;
    s.parameters = {{"chi", 0.4}, {"V_E", 1.1}, {"T", 0.5}};
    s.sweep = {"g", 1.0, 0.999, 200, true};
  } else {
    throw DomainError("unknown preset '" + name + "'");
  }
  s.output_path = name + ".csv";
  return s;
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  try {
    SweepSpec s;
    if (j.contains("preset")) s = preset(j.at("preset").get<std::string>());
    if (j.contains("scenario")) s.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    if (j.contains("parameters")) {
      for (const auto& [k, v] : j.at("parameters").items()) s.parameters[k] = v.get<double>();
    }
    if (j.contains("sweep")) {
      const auto& w = j.at("sweep");
      s.sweep.parameter = w.value("parameter", s.sweep.parameter);
      s.sweep.start = w.value("start", s.sweep.start);
      s.sweep.stop = w.value("stop", s.sweep.stop);
      s.sweep.points = w.value("points", s.sweep.points);
      s.sweep.stop_is_gmax_fraction = w.value("stop_is_gmax_fraction", s.sweep.stop_is_gmax_fraction);
    }
    if (j.contains("series")) {
      const auto& w = j.at("series");
      s.series_parameter = w.at("parameter").get<std::string>();
      s.series_values = w.at("values").get<std::vector<double>>();
    }
    if (j.contains("log_base")) s.log_base = log_base_from_string(j.at("log_base").get<std::string>());
    if (j.contains("output")) s.output_path = j.at("output").get<std::string>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("sweep spec: ") + e.what());
  }
}

}  // namespace nla
