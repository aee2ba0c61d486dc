/*
   Copyright 2026 The fpclab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "analytic/network.hpp"
#include "fading/fading.hpp"
#include "optimize/optimize.hpp"

namespace fpclab::app {

enum class Command { Analytic, Simulate, Sweep, Optimize, LossCurve, Reproduce };

std::string to_string(Command command);

struct RunConfig {
    Command command = Command::Analytic;
    analytic::NetworkParams params;
    double s = 0.5;
    fading::FadingModel fading = fading::FadingModel::rayleigh();
    optimize::SimSettings sim;
    double epsilon = 0.05;
    std::optional<double> spectral_efficiency;  // bits/s/Hz; log2(1 + beta) when unset
    optimize::ObjectiveSpec objective;
    bool objective_given = false;
    optimize::SweepKind sweep_kind = optimize::SweepKind::VsS;
    std::vector<double> sweep_values;
    std::vector<double> s_grid;
    bool sweep_simulate = true;
    std::string target;  // reproduce: fig1 .. fig10
    std::string out_dir = "fpclab_out";
    bool svg = false;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Syntax check only; errors report line and column.
nlohmann::json parse_json(const std::string& text);

/// Builds a fully defaulted, validated RunConfig. Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& document);
RunConfig parse_config(const std::string& text);

/// Canonical JSON of a resolved config; parse_config(to_json(c)) reproduces c.
std::string to_json(const RunConfig& config);

}  // namespace fpclab::app
