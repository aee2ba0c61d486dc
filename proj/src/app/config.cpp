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

#include "app/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "common/errors.hpp"

namespace fpclab::app {

namespace {

using nlohmann::json;

// Walks one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) throw ConfigError(where() + "expected an object");
    }

    const json* get(const std::string& key) {
        seen_.insert(key);
        const auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void number(const std::string& key, double& out) {
        if (const json* v = get(key)) {
            if (!v->is_number()) throw ConfigError(field(key) + ": expected a number");
            out = v->get<double>();
        }
    }

    void integer(const std::string& key, std::uint64_t& out) {
        if (const json* v = get(key)) {
            if (!v->is_number_unsigned()) throw ConfigError(field(key) + ": expected a non-negative integer");
            out = v->get<std::uint64_t>();
        }
    }

    void boolean(const std::string& key, bool& out) {
        if (const json* v = get(key)) {
            if (!v->is_boolean()) throw ConfigError(field(key) + ": expected true or false");
            out = v->get<bool>();
        }
    }

    void string(const std::string& key, std::string& out) {
        if (const json* v = get(key)) {
            if (!v->is_string()) throw ConfigError(field(key) + ": expected a string");
            out = v->get<std::string>();
        }
    }

    void numbers(const std::string& key, std::vector<double>& out) {
        if (const json* v = get(key)) {
            if (!v->is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
            out.clear();
            for (const auto& x : *v) {
                if (!x.is_number()) throw ConfigError(field(key) + ": expected an array of numbers");
                out.push_back(x.get<double>());
            }
        }
    }

    void finish() const {
        for (const auto& [key, value] : node_.items()) {
            if (!seen_.count(key)) throw ConfigError("unknown key '" + field(key) + "'");
        }
    }

private:
    std::string where() const { return path_.empty() ? "" : path_ + ": "; }

    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

Command command_from_string(const std::string& name) {
    for (auto c : {Command::Analytic, Command::Simulate, Command::Sweep, Command::Optimize, Command::LossCurve,
                   Command::Reproduce}) {
        if (to_string(c) == name) return c;
    }
    throw ConfigError("command: unknown command '" + name +
                      "' (expected analytic, simulate, sweep, optimize, loss-curve or reproduce)");
}

fading::FadingModel parse_fading(const json& v) {
    if (v.is_string()) {
        const auto name = v.get<std::string>();
        if (name == "rayleigh") return fading::FadingModel::rayleigh();
        if (name == "none") return fading::FadingModel::deterministic();
        if (name == "clamped_rayleigh") return fading::FadingModel::clamped_rayleigh();
        throw ConfigError("policy.fading: unknown model '" + name + "' (expected none, rayleigh or clamped_rayleigh)");
    }
    if (v.is_object()) {
        Section outer(v, "policy.fading");
        const json* inner = outer.get("clamped_rayleigh");
        outer.finish();
        if (!inner) throw ConfigError("policy.fading: expected {\"clamped_rayleigh\": {\"h_min\": x}}");
        Section c(*inner, "policy.fading.clamped_rayleigh");
        double h_min = fading::kDefaultClampFloor;
        c.number("h_min", h_min);
        c.finish();
        try {
            return fading::FadingModel::clamped_rayleigh(h_min);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("policy.fading.clamped_rayleigh.h_min: ") + e.what());
        }
    }
    throw ConfigError("policy.fading: expected a model name or object");
}

json fading_to_json(const fading::FadingModel& f) {
    switch (f.kind()) {
        case fading::FadingKind::Deterministic: return "none";
        case fading::FadingKind::Rayleigh: return "rayleigh";
        case fading::FadingKind::ClampedRayleigh: return {{"clamped_rayleigh", {{"h_min", f.h_min()}}}};
    }
    return "rayleigh";
}

std::vector<double> linspace_step(double lo, double hi, double step) {
    std::vector<double> v;
    const auto n = static_cast<int>(std::lround((hi - lo) / step));
    for (int k = 0; k <= n; ++k) v.push_back(std::round((lo + k * step) * 1e9) / 1e9);
    return v;
}

std::vector<double> default_values(optimize::SweepKind kind) {
    using optimize::SweepKind;
    switch (kind) {
        case SweepKind::VsS: return linspace_step(0.0, 0.95, 0.05);
        case SweepKind::VsAlpha: return {2.2, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
        case SweepKind::VsSnr: return {5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
        case SweepKind::VsBeta: return {-10.0, -5.0, 0.0, 5.0, 10.0};
        case SweepKind::VsLambda: return {1e-5, 3e-5, 1e-4, 3e-4, 1e-3};
        case SweepKind::LossCurve: return {2.1, 3.0, 4.0};
    }
    return {};
}

std::string position_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string to_string(Command command) {
    switch (command) {
        case Command::Analytic: return "analytic";
        case Command::Simulate: return "simulate";
        case Command::Sweep: return "sweep";
        case Command::Optimize: return "optimize";
        case Command::LossCurve: return "loss-curve";
        case Command::Reproduce: return "reproduce";
    }
    return "unknown";
}

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    if (!std::isfinite(s) || s < analytic::kMinExponent || s > analytic::kMaxExponent) {
        throw ConfigError("policy.s: s must lie in [-0.5, 1]");
    }
    if (command == Command::Analytic || command == Command::Simulate) {
        try {
            analytic::PowerControlPolicy(s, fading);
        } catch (const DivergenceError&) {
            throw ConfigError("policy.s: s = 1 with " + fading.name() +
                              " fading has an infinite power normalizer E[H^-1]; use clamped_rayleigh");
        }
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon: must lie in (0, 1)");
    if (spectral_efficiency && !(*spectral_efficiency > 0.0 && std::isfinite(*spectral_efficiency))) {
        throw ConfigError("spectral_efficiency: must be positive");
    }
    if (sim.n_trials < 1) throw ConfigError("sim.n_trials: must be at least 1");
    if (!(sim.truncation_rel_tol > 0.0 && sim.truncation_rel_tol <= 0.1)) {
        throw ConfigError("sim.truncation_rel_tol: must lie in (0, 0.1]");
    }
    if (!(sim.min_radius_factor > 0.0 && std::isfinite(sim.min_radius_factor))) {
        throw ConfigError("sim.min_radius_factor: must be positive");
    }
    try {
        objective.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("objective: ") + e.what());
    }
    if (sweep_values.empty()) throw ConfigError("sweep.values: must not be empty");
    for (double v : sweep_values) {
        if (!std::isfinite(v)) throw ConfigError("sweep.values: must be finite");
    }
    if (s_grid.empty()) throw ConfigError("sweep.s_grid: must not be empty");
    if (command == Command::Reproduce) {
        bool known = false;
        for (int k = 1; k <= 10; ++k) known = known || target == "fig" + std::to_string(k);
        if (!known) throw ConfigError("reproduce.target: expected fig1 .. fig10, got '" + target + "'");
    }
    if (out_dir.empty()) throw ConfigError("output.dir: must not be empty");
}

nlohmann::json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("JSON syntax error at " + position_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                          e.what());
    }
}

RunConfig parse_config(const std::string& text) { return parse_config(parse_json(text)); }

RunConfig parse_config(const nlohmann::json& root) {
    RunConfig c;
    Section top(root, "");

    std::string command = to_string(c.command);
    top.string("command", command);
    c.command = command_from_string(command);

    if (const json* v = top.get("params")) {
        Section p(*v, "params");
        p.number("alpha", c.params.alpha);
        p.number("beta", c.params.beta);
        p.number("d", c.params.d);
        p.number("p", c.params.p);
        p.number("lambda", c.params.lambda);
        const json* eta = p.get("eta");
        const json* snr_db = p.get("snr_db");
        if (eta && snr_db) throw ConfigError("params: give either eta or snr_db, not both");
        if (eta) p.number("eta", c.params.eta);
        p.finish();
        try {
            c.params.validate();
            if (snr_db) {
                double db = 0.0;
                if (!snr_db->is_number()) throw ConfigError("params.snr_db: expected a number");
                db = snr_db->get<double>();
                c.params.set_snr(std::pow(10.0, db / 10.0));
            } else if (!eta) {
                c.params.set_snr(100.0);
            }
        } catch (const DomainError& e) {
            throw ConfigError(std::string("params: ") + e.what());
        }
    }

    if (const json* v = top.get("policy")) {
        Section p(*v, "policy");
        p.number("s", c.s);
        if (const json* f = p.get("fading")) c.fading = parse_fading(*f);
        p.finish();
    }

    if (const json* v = top.get("sim")) {
        Section p(*v, "sim");
        p.integer("n_trials", c.sim.n_trials);
        p.integer("seed", c.sim.seed);
        p.number("truncation_rel_tol", c.sim.truncation_rel_tol);
        p.number("min_radius_factor", c.sim.min_radius_factor);
        p.finish();
    }

    top.number("epsilon", c.epsilon);
    if (const json* v = top.get("spectral_efficiency")) {
        if (!v->is_null()) {
            if (!v->is_number()) throw ConfigError("spectral_efficiency: expected a number or null");
            c.spectral_efficiency = v->get<double>();
        }
    }

    if (const json* v = top.get("objective")) {
        c.objective_given = true;
        Section p(*v, "objective");
        std::string method = optimize::to_string(c.objective.method);
        p.string("method", method);
        try {
            c.objective.method = optimize::method_from_string(method);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("objective.method: ") + e.what());
        }
        std::vector<double> range{c.objective.s_lo, c.objective.s_hi};
        p.numbers("s_range", range);
        if (range.size() != 2) throw ConfigError("objective.s_range: expected [lo, hi]");
        c.objective.s_lo = range[0];
        c.objective.s_hi = range[1];
        p.number("grid_step", c.objective.grid_step);
        p.number("refine_tol", c.objective.refine_tol);
        p.finish();
    }

    bool values_given = false;
    if (const json* v = top.get("sweep")) {
        Section p(*v, "sweep");
        std::string kind = optimize::to_string(c.sweep_kind);
        p.string("kind", kind);
        try {
            c.sweep_kind = optimize::sweep_kind_from_string(kind);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("sweep.kind: ") + e.what());
        }
        values_given = p.get("values") != nullptr;
        p.numbers("values", c.sweep_values);
        p.numbers("s_grid", c.s_grid);
        p.boolean("simulate", c.sweep_simulate);
        p.finish();
    }
    if (c.command == Command::LossCurve) c.sweep_kind = optimize::SweepKind::LossCurve;
    if (!values_given) c.sweep_values = default_values(c.sweep_kind);
    if (c.s_grid.empty()) c.s_grid = linspace_step(0.0, 1.0, 0.01);

    if (const json* v = top.get("reproduce")) {
        Section p(*v, "reproduce");
        p.string("target", c.target);
        p.finish();
    }

    if (const json* v = top.get("output")) {
        Section p(*v, "output");
        p.string("dir", c.out_dir);
        p.boolean("svg", c.svg);
        p.finish();
    }
    top.finish();

    c.validate();
    return c;
}

std::string to_json(const RunConfig& c) {
    json j;
    j["command"] = to_string(c.command);
    j["params"] = {{"alpha", c.params.alpha}, {"beta", c.params.beta}, {"d", c.params.d},
                   {"p", c.params.p},         {"eta", c.params.eta},   {"lambda", c.params.lambda}};
    j["policy"] = {{"s", c.s}, {"fading", fading_to_json(c.fading)}};
    j["sim"] = {{"n_trials", c.sim.n_trials},
                {"seed", c.sim.seed},
                {"truncation_rel_tol", c.sim.truncation_rel_tol},
                {"min_radius_factor", c.sim.min_radius_factor}};
    j["epsilon"] = c.epsilon;
    j["spectral_efficiency"] = c.spectral_efficiency ? json(*c.spectral_efficiency) : json(nullptr);
    j["objective"] = {{"method", optimize::to_string(c.objective.method)},
                      {"s_range", {c.objective.s_lo, c.objective.s_hi}},
                      {"grid_step", c.objective.grid_step},
                      {"refine_tol", c.objective.refine_tol}};
    j["sweep"] = {{"kind", optimize::to_string(c.sweep_kind)},
                  {"values", c.sweep_values},
                  {"s_grid", c.s_grid},
                  {"simulate", c.sweep_simulate}};
    j["reproduce"] = {{"target", c.target}};
    j["output"] = {{"dir", c.out_dir}, {"svg", c.svg}};
    return j.dump();
}

}  // namespace fpclab::app
