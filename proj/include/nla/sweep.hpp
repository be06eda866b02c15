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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nla/gaussian_state.hpp"

namespace nla {

enum class Scenario {
  SingleMode,
  EprChannel,
  EffectiveSingleSide,
  EquivalentCircuit,
  FidelityOptimize,
};

Scenario scenario_from_string(const std::string& name);
std::string to_string(Scenario scenario);

struct SweepRange {
  std::string parameter = "g";
  double start = 1.0;
  double stop = 2.0;
  int points = 2;
  /// Only for parameter "g": stop is a fraction of the mode-B g_max of each
  /// series point, e.g. 0.999.
  bool stop_is_gmax_fraction = false;
};

struct SweepSpec {
  Scenario scenario = Scenario::SingleMode;
  std::map<std::string, double> parameters;
  SweepRange sweep;
  /// Optional outer loop, e.g. T over {1, 0.8, 0.5}.
  std::optional<std::string> series_parameter;
  std::vector<double> series_values;
  LogBase log_base = LogBase::Natural;
  std::string output_path;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
};

/// Every sweep point evaluated independently (up to NLA_NUM_THREADS
/// workers); rows ordered by sweep index. Non-convergent points keep their
/// parameter cells and leave observables empty. Throws DomainError for an
/// invalid spec and NonConvergentError when no point converges.
CsvTable run_sweep(const SweepSpec& spec);

/// fig1 ... fig9 with the parameters of the corresponding figure captions.
SweepSpec preset(const std::string& name);
std::vector<std::string> preset_names();

SweepSpec sweep_spec_from_json(const nlohmann::json& j);

/// "%.12g"
std::string format_number(double value);

LogBase log_base_from_string(const std::string& name);

/// Worker count from NLA_NUM_THREADS (default: hardware concurrency).
unsigned sweep_thread_count();

}  // namespace nla
