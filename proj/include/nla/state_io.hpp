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

#include "nla/gaussian_state.hpp"

namespace nla {

/// {"n_modes": N, "mean": [2N], "cov": [[2N x 2N]]}
nlohmann::json state_to_json(const GaussianState& state);
GaussianState state_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace nla
