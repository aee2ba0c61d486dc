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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fpclab/fpclab.h"

namespace {

int report(fpc_status status) {
    std::cerr << "fpclab: error: " << fpc_last_error() << "\n";
    return fpc_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage and transmission capacity of Poisson networks under fractional power control"};
    app.set_version_flag("--version", std::string(fpc_version()));

    std::string command;
    std::string target;
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    double s = 0.0;
    bool svg = false;
    bool print_config = false;

    app.add_option("command", command, "analytic | simulate | sweep | optimize | loss-curve | reproduce")
        ->required()
        ->check(CLI::IsMember({"analytic", "simulate", "sweep", "optimize", "loss-curve", "reproduce"}));
    std::string figure;
    app.add_option("figure", figure, "reproduce target, fig1 .. fig10 (same as --target)");
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed, "master seed");
    auto* out_opt = app.add_option("--out", out_dir, "output directory");
    auto* trials_opt = app.add_option("--trials", trials, "Monte-Carlo trials per point")->check(CLI::PositiveNumber);
    app.add_option("--target", target, "reproduce target, fig1 .. fig10");
    auto* s_opt = app.add_option("--s", s, "power control exponent");
    app.add_flag("--svg", svg, "also write SVG plots");
    app.add_flag("--print-config", print_config, "print the resolved configuration and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (target.empty()) target = figure;

    std::string text = "{}";
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::cerr << "fpclab: error: cannot read " << config_path << "\n";
            return 1;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    fpc_config cfg = nullptr;
    fpc_status st = fpc_config_parse(text.c_str(), &cfg);
    if (st != FPC_OK) return report(st);

    st = fpc_config_set_command(cfg, command.c_str());
    if (st == FPC_OK && *seed_opt) st = fpc_config_set_seed(cfg, seed);
    if (st == FPC_OK && *trials_opt) st = fpc_config_set_trials(cfg, trials);
    if (st == FPC_OK && *out_opt) st = fpc_config_set_out_dir(cfg, out_dir.c_str());
    if (st == FPC_OK && svg) st = fpc_config_set_svg(cfg, 1);
    if (st == FPC_OK && !target.empty()) st = fpc_config_set_target(cfg, target.c_str());
    if (st == FPC_OK && *s_opt) st = fpc_config_set_s(cfg, s);

    if (st == FPC_OK && print_config) {
        const char* json = nullptr;
        st = fpc_config_resolved_json(cfg, &json);
        if (st == FPC_OK) std::cout << json << "\n";
        fpc_config_destroy(cfg);
        return st == FPC_OK ? 0 : report(st);
    }

    const char* summary = nullptr;
    size_t warnings = 0;
    if (st == FPC_OK) st = fpc_run(cfg, &summary, &warnings);
    if (st == FPC_OK) {
        std::cout << summary << "\n";
        if (warnings) std::cerr << "fpclab: warning: " << warnings << " cell(s) failed; see the error column\n";
    }
    fpc_config_destroy(cfg);
    return st == FPC_OK ? 0 : report(st);
}
