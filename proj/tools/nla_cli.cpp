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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "nla/effective_circuits.hpp"
#include "nla/errors.hpp"
#include "nla/nla_map.hpp"
#include "nla/optimizer.hpp"
#include "nla/oracle_check.hpp"
#include "nla/state_io.hpp"
#include "nla/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNonConvergent = 3;

using nlohmann::json;

json read_json(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw nla::DomainError("cannot open '" + path + "'");
    return json::parse(in);
  } catch (const json::exception& e) {
    throw nla::DomainError(path + ": " + e.what());
  }
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

double environment(double t, double v_env, double xi) {
  return xi >= 0.0 ? nla::xi_to_ve(t, xi) : v_env;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noiseless linear amplifier on Gaussian states"};
  app.require_subcommand(1);
  std::string log_base = "e";

  // amplify
  auto* amp = app.add_subcommand("amplify", "Apply the amplifier to a state (JSON in, JSON out)");
  std::string state_path = "-";
  std::vector<double> gains;
  int amp_mode = -1;
  amp->add_option("-s,--state", state_path, "State JSON file ('-' for stdin)");
  amp->add_option("-g,--gain", gains, "Gain per mode, or a single gain with --mode")->required();
  amp->add_option("-m,--mode", amp_mode, "Amplified mode when one gain is given");

  // epr-channel
  double chi = 0.4, t = 1.0, v_env = 1.0, xi = -1.0, g = 1.0;
  auto* epr = app.add_subcommand("epr-channel", "EPR state through a thermal-loss channel and the amplifier");
  for (auto* sc : {epr, app.add_subcommand("effective", "Effective single-side parameters")}) {
    sc->add_option("--chi", chi, "EPR parameter")->capture_default_str();
    sc->add_option("-T,--transmission", t, "Channel transmission")->capture_default_str();
    sc->add_option("--v-env", v_env, "Environment variance V_E")->capture_default_str();
    sc->add_option("--xi", xi, "Excess noise (overrides --v-env)");
    sc->add_option("-g,--gain", g, "Amplifier gain")->capture_default_str();
  }
  epr->add_option("--log-base", log_base, "2 | e | 10")->capture_default_str();
  auto* eff = app.get_subcommand("effective");

  // equivalent-circuit
  double v = 0.0;
  auto* eqc = app.add_subcommand("equivalent-circuit", "Solve the two-beamsplitter equivalent circuit");
  eqc->add_option("--chi", chi, "EPR parameter of Alice's pair")->capture_default_str();
  eqc->add_option("-V,--variance", v, "Alice's EPR variance (overrides --chi)");
  eqc->add_option("--v-env", v_env, "Eve's EPR variance V_E")->capture_default_str();
  eqc->add_option("-T,--transmission", t, "Channel transmission")->capture_default_str();
  eqc->add_option("-g,--gain", g, "Amplifier gain")->capture_default_str();

  // sweep
  auto* sw = app.add_subcommand("sweep", "Parameter sweep to CSV");
  std::string preset_name, spec_path, out_path;
  auto* preset_opt = sw->add_option("--preset", preset_name, "Built-in figure preset (fig1 ... fig9)");
  auto* spec_opt = sw->add_option("--spec", spec_path, "JSON sweep specification");
  preset_opt->excludes(spec_opt);
  sw->add_option("-o,--out", out_path, "Output CSV ('-' for stdout)");
  auto* sw_base = sw->add_option("--log-base", log_base, "2 | e | 10");

  // optimize-fidelity
  auto* opt = app.add_subcommand("optimize-fidelity", "Maximise fidelity to a target EPR state");
  double chi_target = 0.5;
  nla::OptimizerConfig cfg;
  bool fix_gain = false, fix_chi = false;
  opt->add_option("--chi-target", chi_target, "Target EPR parameter")->required();
  opt->add_option("-T,--transmission", t, "Channel transmission")->capture_default_str();
  opt->add_option("--v-env", v_env, "Environment variance V_E")->capture_default_str();
  opt->add_option("--xi", xi, "Excess noise (overrides --v-env)");
  opt->add_option("--grid", cfg.grid_points, "Coarse grid points per variable")->capture_default_str();
  opt->add_option("--max-gain", cfg.gain.hi, "Upper gain bound")->capture_default_str();
  opt->add_option("--max-iterations", cfg.max_iterations, "Pattern-search iterations")->capture_default_str();
  opt->add_flag("--fix-gain", fix_gain, "Keep the gain at --gain");
  opt->add_flag("--fix-chi", fix_chi, "Keep chi at --chi");
  opt->add_option("-g,--gain", cfg.fixed_gain, "Gain used with --fix-gain");
  opt->add_option("--chi", cfg.fixed_chi, "Chi used with --fix-chi");

  // oracle-check
  auto* orc = app.add_subcommand("oracle-check", "Compare analytic and truncated Fock routes");
  nla::OracleCheckRequest req;
  std::vector<std::string> kv;
  orc->add_option("--scenario", req.scenario, "coherent | thermal | squeezed | epr-channel | cloner")
      ->capture_default_str();
  orc->add_option("-p,--param", kv, "Parameter as key=value (V, dx, dp, chi, T, V_E, g)");
  orc->add_option("--cutoff", req.cutoff, "Photon-number cutoff per mode")->capture_default_str();
  orc->add_option("--tol", req.tolerance, "Residual tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*amp) {
      const nla::GaussianState in = nla::state_from_json(read_json(state_path));
      nla::GainProfile profile =
          amp_mode >= 0 ? (gains.size() == 1 ? nla::GainProfile::single(in.n_modes(), amp_mode, gains[0])
                                             : throw nla::DomainError("--mode needs exactly one gain"))
          : gains.size() == 1 ? nla::GainProfile::uniform(in.n_modes(), gains[0])
                              : nla::GainProfile(gains);
      const nla::NlaResult r = nla::nla_transform(in, profile);
      json j;
      j["converged"] = r.converged;
      j["denominator_positive"] = r.denominator_positive;
      j["physical"] = r.physical;
      j["min_denominator_eig"] = r.min_denominator_eig;
      if (r.converged) {
        j["state"] = nla::state_to_json(r.state);
        j["lambda_minus"] = r.lambda_minus_out;
      }
      print(j);
      return r.converged ? kExitOk : kExitNonConvergent;
    }
    if (*epr) {
      const nla::LogBase base = nla::log_base_from_string(log_base);
      const double ve = environment(t, v_env, xi);
      const nla::EprChannelResult r = nla::epr_channel_nla(chi, t, ve, g);
      json j;
      j["converged"] = r.converged;
      j["denominator"] = r.denominator;
      j["g_max"] = nla::max_gain_single_mode(t * nla::epr_variance(chi) + (1.0 - t) * ve);
      if (r.converged) {
        const nla::CovarianceMatrix m = r.cm.matrix();
        j["a"] = r.cm.a;
        j["b"] = r.cm.b;
        j["c"] = r.cm.c;
        j["log_negativity"] = nla::log_negativity(m, base);
        j["purity"] = nla::purity(nla::GaussianState(nla::Vector::Zero(4), m));
      }
      print(j);
      return r.converged ? kExitOk : kExitNonConvergent;
    }
    if (*eff) {
      const double x = xi >= 0.0 ? xi : nla::ve_to_xi(t, v_env);
      const nla::EffectiveSingleSide r = nla::effective_single_side(chi, t, x, g);
      print({{"chi_eff", r.chi_eff}, {"T_eff", r.t_eff}, {"xi_eff", r.xi_eff},
             {"T_eff_exceeds_1", r.t_eff > 1.0}});
      return kExitOk;
    }
    if (*eqc) {
      const double va = v > 0.0 ? v : nla::epr_variance(chi);
      const nla::EquivalentCircuit r = nla::solve_equivalent_circuit(va, v_env, t, g);
      print({{"V_prime", r.v_prime}, {"V_E_prime", r.v_env_prime}, {"T_A", r.t_alice},
             {"T_B", r.t_bob}, {"flipped_convention", r.flipped_convention},
             {"residual", r.residual}});
      return kExitOk;
    }
    if (*sw) {
      nla::SweepSpec spec;
      if (!preset_name.empty()) {
        spec = nla::preset(preset_name);
      } else if (!spec_path.empty()) {
        spec = nla::sweep_spec_from_json(read_json(spec_path));
      } else {
        throw nla::DomainError("sweep needs --preset or --spec");
      }
      if (sw_base->count()) spec.log_base = nla::log_base_from_string(log_base);
      if (!out_path.empty()) spec.output_path = out_path;
      const nla::CsvTable table = nla::run_sweep(spec);
      if (spec.output_path.empty() || spec.output_path == "-") {
        table.write(std::cout);
      } else {
        std::ofstream out(spec.output_path);
        if (!out) throw nla::DomainError("cannot write '" + spec.output_path + "'");
        table.write(out);
        std::cerr << "wrote " << table.rows.size() << " rows to " << spec.output_path << '\n';
      }
      return kExitOk;
    }
    if (*opt) {
      cfg.optimize_gain = !fix_gain;
      cfg.optimize_chi = !fix_chi;
      const auto channel = nla::ChannelSpec::from_environment(t, environment(t, v_env, xi));
      const nla::FidelityOptimum r = nla::optimize_fidelity(chi_target, channel, cfg);
      print({{"chi", r.chi}, {"gain", r.gain}, {"fidelity", r.fidelity},
             {"coarse_fidelity", r.coarse_fidelity}, {"baseline_chi", r.baseline_chi},
             {"baseline_fidelity", r.baseline_fidelity}});
      return kExitOk;
    }
    if (*orc) {
      for (const std::string& item : kv) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw nla::DomainError("expected key=value, got '" + item + "'");
        try {
          req.parameters[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::logic_error&) {
          throw nla::DomainError("bad number in '" + item + "'");
        }
      }
      const nla::OracleReport r = nla::oracle_check(req);
      print(r.to_json());
      if (r.diverged) return kExitNonConvergent;
      return r.passed ? kExitOk : kExitFailed;
    }
  } catch (const nla::NonConvergentError& e) {
    std::cerr << "non-convergent: " << e.what() << '\n';
    return kExitNonConvergent;
  } catch (const nla::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const nla::OverflowGuardError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitOk;
}
