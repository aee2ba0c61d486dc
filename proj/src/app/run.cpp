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

#include "app/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>

#include "analytic/bounds.hpp"
#include "app/csv.hpp"
#include "app/svg.hpp"
#include "common/errors.hpp"
#include "optimize/optimize.hpp"
#include "simulate/simulate.hpp"

namespace fpclab::app {

namespace {

using optimize::SweepKind;
using optimize::SweepResult;

std::string g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string flag(bool b) { return b ? "1" : "0"; }

class Writer {
public:
    Writer(const RunConfig& config) : config_(config), json_(to_json(config)) {}

    void csv(const std::string& name, const CsvTable& table) {
        const auto path = (std::filesystem::path(config_.out_dir) / (name + ".csv")).string();
        write_file(path, table.render(json_));
        files.push_back(path);
    }

    void svg(const std::string& name, const PlotSpec& spec, const std::vector<Series>& series) {
        if (!config_.svg) return;
        const auto path = (std::filesystem::path(config_.out_dir) / (name + ".svg")).string();
        write_file(path, render_svg(spec, series));
        files.push_back(path);
    }

    std::vector<std::string> files;

private:
    const RunConfig& config_;
    std::string json_;
};

optimize::SweepRequest make_request(const RunConfig& c, SweepKind kind, std::vector<double> values) {
    optimize::SweepRequest req;
    req.kind = kind;
    req.base = c.params;
    req.fading = c.fading;
    req.values = std::move(values);
    req.s_grid = c.s_grid;
    req.simulate = c.sweep_simulate;
    req.objective = c.objective;
    req.objective.sim = c.sim;
    return req;
}

CsvTable sweep_table(const SweepResult& r) {
    switch (r.kind) {
        case SweepKind::VsS: {
            CsvTable t({"s", "q_sim", "std_err", "q_lb", "q_jensen", "error"});
            for (const auto& row : r.rows) {
                t.add_row({csv_number(row.s), csv_number(row.q_sim), csv_number(row.std_err), csv_number(row.q_lb),
                           csv_number(row.q_jensen), row.error});
            }
            return t;
        }
        case SweepKind::LossCurve: {
            CsvTable t({"alpha", "s", "loss_factor", "error"});
            for (const auto& row : r.rows) {
                t.add_row({csv_number(row.param_value), csv_number(row.s), csv_number(row.loss_factor), row.error});
            }
            return t;
        }
        default: {
            CsvTable t({r.param_name, "s_star", "s_lo1", "s_hi1", "s_lo10", "s_hi10", "q_star", "q_lb", "q_jensen",
                        "q_sim", "std_err", "flat", "clipped", "error"});
            for (const auto& row : r.rows) {
                t.add_row({csv_number(row.param_value), csv_number(row.s), csv_number(row.s_lo1),
                           csv_number(row.s_hi1), csv_number(row.s_lo10), csv_number(row.s_hi10),
                           csv_number(row.q_star), csv_number(row.q_lb), csv_number(row.q_jensen),
                           csv_number(row.q_sim), csv_number(row.std_err), flag(row.flat), flag(row.clipped),
                           row.error});
            }
            return t;
        }
    }
}

void sweep_plot(Writer& w, const std::string& name, const std::string& title, const SweepResult& r) {
    std::vector<Series> series;
    PlotSpec spec;
    spec.title = title;
    switch (r.kind) {
        case SweepKind::VsS: {
            Series sim{"simulated", {}, {}}, lb{"lower bound", {}, {}}, jen{"Jensen approx.", {}, {}};
            for (const auto& row : r.rows) {
                for (auto* s : {&sim, &lb, &jen}) s->x.push_back(row.s);
                sim.y.push_back(row.q_sim);
                lb.y.push_back(row.q_lb);
                jen.y.push_back(row.q_jensen);
            }
            series = {sim, lb, jen};
            spec.x_label = "FPC exponent s";
            spec.y_label = "outage probability";
            spec.log_y = true;
            break;
        }
        case SweepKind::LossCurve: {
            for (const auto& row : r.rows) {
                const std::string label = "alpha=" + g(row.param_value);
                if (series.empty() || series.back().name != label) series.push_back({label, {}, {}});
                series.back().x.push_back(row.s);
                series.back().y.push_back(row.loss_factor);
            }
            spec.x_label = "FPC exponent s";
            spec.y_label = "loss factor L";
            break;
        }
        default: {
            Series star{"s*", {}, {}}, lo1{"s_l(1%)", {}, {}}, hi1{"s_u(1%)", {}, {}}, lo10{"s_l(10%)", {}, {}},
                hi10{"s_u(10%)", {}, {}};
            for (const auto& row : r.rows) {
                for (auto* s : {&star, &lo1, &hi1, &lo10, &hi10}) s->x.push_back(row.param_value);
                star.y.push_back(row.s);
                lo1.y.push_back(row.s_lo1);
                hi1.y.push_back(row.s_hi1);
                lo10.y.push_back(row.s_lo10);
                hi10.y.push_back(row.s_hi10);
            }
            series = {star, lo1, hi1, lo10, hi10};
            spec.x_label = r.param_name + (r.unit.empty() ? "" : " (" + r.unit + ")");
            spec.y_label = "FPC exponent s";
            spec.log_x = r.kind == SweepKind::VsLambda;
            break;
        }
    }
    w.svg(name, spec, series);
}

std::size_t run_sweep(Writer& w, const RunConfig& c, SweepKind kind, const std::vector<double>& values,
                      const std::string& name, const std::string& title) {
    const auto result = optimize::sweep(make_request(c, kind, values));
    w.csv(name, sweep_table(result));
    sweep_plot(w, name, title, result);
    return result.error_count();
}

RunOutcome run_analytic(const RunConfig& c, Writer& w) {
    const analytic::PowerControlPolicy policy(c.s, c.fading);
    RunOutcome out;
    std::string error;
    auto attempt = [&error](const char* what, auto fn) {
        try {
            return fn();
        } catch (const DivergenceError& e) {
            error += std::string(error.empty() ? "" : "; ") + what + ": " + e.what();
        } catch (const InfeasibleError& e) {
            error += std::string(error.empty() ? "" : "; ") + what + ": " + e.what();
        } catch (const DomainError& e) {
            error += std::string(error.empty() ? "" : "; ") + what + ": " + e.what();
        }
        return optimize::kMissing;
    };
    const double kap = attempt("kappa", [&] { return analytic::kappa(policy, c.params); });
    const auto lb = analytic::outage_lb_fpc(policy, c.params);
    const auto jen = analytic::outage_jensen_fpc(policy, c.params);
    const double density = attempt("density", [&] { return analytic::density_fpc(policy, c.params, c.epsilon); });
    const double b = c.spectral_efficiency ? *c.spectral_efficiency : analytic::spectral_efficiency(c.params.beta);
    const double capacity =
        std::isnan(density) ? optimize::kMissing
                            : analytic::transmission_capacity(c.params, c.epsilon, density, c.spectral_efficiency);

    CsvTable t({"s", "fading", "alpha", "beta", "d", "p", "eta", "lambda", "kappa", "q_lb", "q_lb_quad_err",
                "q_jensen", "q_jensen_quad_err", "epsilon", "density", "spectral_efficiency",
                "transmission_capacity", "error"});
    t.add_row({csv_number(c.s), c.fading.name(), csv_number(c.params.alpha), csv_number(c.params.beta),
               csv_number(c.params.d), csv_number(c.params.p), csv_number(c.params.eta), csv_number(c.params.lambda),
               csv_number(kap), csv_number(lb.value), csv_number(lb.quadrature_error), csv_number(jen.value),
               csv_number(jen.quadrature_error), csv_number(c.epsilon), csv_number(density), csv_number(b),
               csv_number(capacity), error});
    w.csv("analytic", t);
    out.warnings = error.empty() ? 0 : 1;
    out.summary = "analytic: s=" + g(c.s) + " q_lb=" + g(lb.value) + " q_jensen=" + g(jen.value) +
                  " density=" + (std::isnan(density) ? std::string("n/a") : g(density));
    return out;
}

RunOutcome run_simulate(const RunConfig& c, Writer& w) {
    const analytic::PowerControlPolicy policy(c.s, c.fading);
    sim::SimConfig cfg(c.params, policy);
    cfg.n_trials = c.sim.n_trials;
    cfg.master_seed = c.sim.seed;
    cfg.truncation_rel_tol = c.sim.truncation_rel_tol;
    cfg.min_radius_factor = c.sim.min_radius_factor;
    const auto est = sim::estimate_outage(cfg);
    const double radius = sim::truncation_radius(cfg);
    const auto lb = analytic::outage_lb_fpc(policy, c.params);
    const auto jen = analytic::outage_jensen_fpc(policy, c.params);

    CsvTable t({"s", "fading", "n_trials", "seed", "truncation_radius", "p_hat", "std_err", "ci95_lo", "ci95_hi",
                "q_lb", "q_jensen"});
    t.add_row({csv_number(c.s), c.fading.name(), std::to_string(est.n_trials), std::to_string(est.seed),
               csv_number(radius), csv_number(est.p_hat), csv_number(est.std_err), csv_number(est.ci95_lo),
               csv_number(est.ci95_hi), csv_number(lb.value), csv_number(jen.value)});
    w.csv("simulate", t);
    RunOutcome out;
    out.summary = "simulate: s=" + g(c.s) + " p_hat=" + g(est.p_hat) + " std_err=" + g(est.std_err) +
                  " q_lb=" + g(lb.value) + " trials=" + std::to_string(est.n_trials);
    return out;
}

RunOutcome run_optimize(const RunConfig& c, Writer& w) {
    auto spec = c.objective;
    spec.sim = c.sim;
    const auto opt = optimize::optimal_exponent(spec, c.params, c.fading);
    const auto b1 = optimize::robustness_band(spec, c.params, c.fading, opt, 1.0);
    const auto b10 = optimize::robustness_band(spec, c.params, c.fading, opt, 10.0);

    CsvTable t({"method", "s_star", "q_star", "flat", "range_lo", "range_hi", "clipped_lo", "clipped_hi", "s_lo1",
                "s_hi1", "s_lo10", "s_hi10"});
    t.add_row({optimize::to_string(spec.method), csv_number(opt.s_star), csv_number(opt.q_star), flag(opt.flat),
               csv_number(opt.range_lo), csv_number(opt.range_hi), flag(opt.clipped_lo), flag(opt.clipped_hi),
               csv_number(b1.s_lo), csv_number(b1.s_hi), csv_number(b10.s_lo), csv_number(b10.s_hi)});
    w.csv("optimize", t);

    CsvTable grid({"s", "q", "noise"});
    Series curve{optimize::to_string(spec.method), {}, {}};
    for (const auto& e : opt.grid) {
        grid.add_row({csv_number(e.s), csv_number(e.q), csv_number(e.noise)});
        curve.x.push_back(e.s);
        curve.y.push_back(e.q);
    }
    w.csv("optimize_grid", grid);
    w.svg("optimize_grid", {"objective vs s", "FPC exponent s", "outage probability", false, true}, {curve});

    RunOutcome out;
    out.summary = "optimize: method=" + optimize::to_string(spec.method) + " s*=" + g(opt.s_star) +
                  " q*=" + g(opt.q_star) + (opt.flat ? " (flat objective)" : "") +
                  (opt.clipped_lo || opt.clipped_hi ? " (range clipped)" : "");
    return out;
}

struct Panel {
    std::string suffix;
    std::string title;
    std::function<void(analytic::NetworkParams&)> adjust;
};

RunOutcome run_reproduce(const RunConfig& c, Writer& w) {
    RunOutcome out;
    const std::string& t = c.target;
    auto vs_s_panels = [&](const std::vector<Panel>& panels) {
        for (const auto& p : panels) {
            RunConfig pc = c;
            p.adjust(pc.params);
            pc.params.validate();
            out.warnings += run_sweep(w, pc, SweepKind::VsS, pc.sweep_values, t + p.suffix, p.title);
        }
    };
    const double held_snr = c.params.snr();
    if (t == "fig1") {
        out.warnings += run_sweep(w, c, SweepKind::LossCurve, c.sweep_values, t, "loss factor vs s");
    } else if (t == "fig2") {
        vs_s_panels({{"", "outage vs s, default parameters", [](analytic::NetworkParams&) {}}});
    } else if (t == "fig3") {
        vs_s_panels({{"_left", "outage vs s, alpha = 2.2",
                      [held_snr](analytic::NetworkParams& p) {
                          p.alpha = 2.2;
                          p.set_snr(held_snr);
                      }},
                     {"_right", "outage vs s, alpha = 5", [held_snr](analytic::NetworkParams& p) {
                          p.alpha = 5.0;
                          p.set_snr(held_snr);
                      }}});
    } else if (t == "fig4") {
        vs_s_panels({{"_left", "outage vs s, SNR = 10 dB", [](analytic::NetworkParams& p) { p.set_snr(10.0); }},
                     {"_right", "outage vs s, SNR = 30 dB", [](analytic::NetworkParams& p) { p.set_snr(1000.0); }}});
    } else if (t == "fig5") {
        vs_s_panels({{"_left", "outage vs s, beta = -10 dB", [](analytic::NetworkParams& p) { p.beta = 0.1; }},
                     {"_right", "outage vs s, beta = 10 dB", [](analytic::NetworkParams& p) { p.beta = 10.0; }}});
    } else if (t == "fig6") {
        vs_s_panels({{"_left", "outage vs s, lambda = 1e-5", [](analytic::NetworkParams& p) { p.lambda = 1e-5; }},
                     {"_right", "outage vs s, lambda = 1e-3", [](analytic::NetworkParams& p) { p.lambda = 1e-3; }}});
    } else {
        out.warnings += run_sweep(w, c, c.sweep_kind, c.sweep_values, t,
                                  "optimal s vs " + optimize::to_string(c.sweep_kind).substr(3));
    }
    out.summary = "reproduce: " + t;
    return out;
}

std::vector<double> kind_defaults(SweepKind kind) {
    RunConfig tmp = parse_config("{\"sweep\": {\"kind\": \"" + optimize::to_string(kind) + "\"}}");
    return tmp.sweep_values;
}

}  // namespace

RunConfig effective_config(const RunConfig& config) {
    RunConfig c = config;
    if (c.command == Command::Reproduce) {
        const std::string& t = c.target;
        const bool optimal = t == "fig7" || t == "fig8" || t == "fig9" || t == "fig10";
        if (optimal && !c.objective_given) {
            c.objective.method = optimize::Method::Simulated;
            c.objective.grid_step = 0.05;
            c.objective_given = true;
        }
        const SweepKind kind = t == "fig1"   ? SweepKind::LossCurve
                               : t == "fig7" ? SweepKind::VsAlpha
                               : t == "fig8" ? SweepKind::VsSnr
                               : t == "fig9" ? SweepKind::VsBeta
                               : t == "fig10" ? SweepKind::VsLambda
                                              : SweepKind::VsS;
        if (kind != c.sweep_kind) {
            c.sweep_kind = kind;
            c.sweep_values = kind_defaults(kind);
        }
        if (kind == SweepKind::LossCurve) c.sweep_values = {2.1, 3.0, 4.0};
    }
    return c;
}

RunOutcome run(const RunConfig& config) {
    config.validate();
    const RunConfig c = effective_config(config);
    Writer w(c);
    RunOutcome out;
    switch (c.command) {
        case Command::Analytic: out = run_analytic(c, w); break;
        case Command::Simulate: out = run_simulate(c, w); break;
        case Command::Optimize: out = run_optimize(c, w); break;
        case Command::Sweep:
            out.warnings = run_sweep(w, c, c.sweep_kind, c.sweep_values, "sweep_" + optimize::to_string(c.sweep_kind),
                                     optimize::to_string(c.sweep_kind));
            out.summary = "sweep: " + optimize::to_string(c.sweep_kind) + " rows=" + std::to_string(c.sweep_values.size());
            break;
        case Command::LossCurve:
            out.warnings = run_sweep(w, c, SweepKind::LossCurve, c.sweep_values, "loss_curve", "loss factor vs s");
            out.summary = "loss-curve: " + std::to_string(c.sweep_values.size()) + " curves";
            break;
        case Command::Reproduce: out = run_reproduce(c, w); break;
    }
    out.files = w.files;
    if (out.warnings) out.summary += " warnings=" + std::to_string(out.warnings);
    if (!out.files.empty()) out.summary += " -> " + out.files.front();
    return out;
}

}  // namespace fpclab::app
