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

#include "optimize/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "analytic/bounds.hpp"
#include "common/errors.hpp"
#include "common/threads.hpp"
#include "numerics/roots.hpp"
#include "simulate/simulate.hpp"

namespace fpclab::optimize {

namespace {

using analytic::PowerControlPolicy;

double analytic_noise(double q, double quad_err) {
    return std::max(quad_err, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(q));
}

std::vector<double> make_grid(double lo, double hi, double step) {
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-9));
    std::vector<double> grid;
    grid.reserve(n + 1);
    for (std::size_t k = 0; k < n; ++k) grid.push_back(lo + static_cast<double>(k) * step);
    grid.push_back(hi);
    return grid;
}

// Runs fn(i) for i in [0, n); in parallel when allowed. Each index writes
// only its own slot, so the outcome does not depend on scheduling.
void for_each_index(std::size_t n, bool parallel, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = parallel ? static_cast<unsigned>(std::min<std::size_t>(worker_count(), n)) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Interpolation point between `inside` (q <= target) and `outside`
// (q > target) where q crosses target.
double crossing(const std::function<double(double)>& q, double inside, double outside, double target,
                double tol) {
    const double span = outside - inside;
    auto g = [&](double t) { return q(inside + t * span) - target; };
    const double t = numerics::find_root_increasing(g, 0.0, 1.0, tol / std::abs(span));
    return inside + t * span;
}

}  // namespace

std::string to_string(Method method) {
    switch (method) {
        case Method::Simulated: return "simulated";
        case Method::LowerBound: return "lower_bound";
        case Method::Jensen: return "jensen";
    }
    return "unknown";
}

Method method_from_string(const std::string& name) {
    if (name == "simulated") return Method::Simulated;
    if (name == "lower_bound") return Method::LowerBound;
    if (name == "jensen") return Method::Jensen;
    throw DomainError("unknown objective method '" + name + "' (expected simulated, lower_bound or jensen)");
}

void ObjectiveSpec::validate() const {
    if (!(s_lo >= analytic::kMinExponent && s_hi <= analytic::kMaxExponent && s_lo < s_hi)) {
        throw DomainError("s_range must satisfy -0.5 <= lo < hi <= 1");
    }
    if (!(grid_step > 0.0) || !std::isfinite(grid_step)) throw DomainError("grid_step must be positive");
    if (!(refine_tol > 0.0) || !std::isfinite(refine_tol)) throw DomainError("refine_tol must be positive");
    if (sim.n_trials < 1) throw DomainError("n_trials must be at least 1");
}

Evaluation evaluate_objective(const ObjectiveSpec& spec, const NetworkParams& params,
                              const fading::FadingModel& fading, double s) {
    const PowerControlPolicy policy(s, fading);
    switch (spec.method) {
        case Method::Simulated: {
            sim::SimConfig cfg(params, policy);
            cfg.n_trials = spec.sim.n_trials;
            cfg.master_seed = spec.sim.seed;
            cfg.truncation_rel_tol = spec.sim.truncation_rel_tol;
            cfg.min_radius_factor = spec.sim.min_radius_factor;
            const auto est = sim::estimate_outage(cfg);
            return {s, est.p_hat, est.std_err};
        }
        case Method::LowerBound: {
            const auto r = analytic::outage_lb_fpc(policy, params);
            return {s, r.value, analytic_noise(r.value, r.quadrature_error)};
        }
        case Method::Jensen: {
            const auto r = analytic::outage_jensen_fpc(policy, params);
            return {s, r.value, analytic_noise(r.value, r.quadrature_error)};
        }
    }
    throw DomainError("unknown objective method");
}

Optimum optimal_exponent(const ObjectiveSpec& spec, const NetworkParams& params, const fading::FadingModel& fading) {
    spec.validate();
    params.validate();
    const auto grid = make_grid(spec.s_lo, spec.s_hi, spec.grid_step);

    std::vector<Evaluation> evals(grid.size());
    std::vector<char> ok(grid.size(), 0);
    std::string first_error;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            evals[i] = evaluate_objective(spec, params, fading, grid[i]);
            ok[i] = 1;
        } catch (const DivergenceError& e) {
            if (first_error.empty()) first_error = e.what();
        } catch (const InfeasibleError& e) {
            if (first_error.empty()) first_error = e.what();
        }
    }

    // keep the longest run of evaluable grid points
    std::size_t best_begin = 0, best_len = 0;
    for (std::size_t i = 0; i < grid.size();) {
        if (!ok[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < grid.size() && ok[j]) ++j;
        if (j - i > best_len) {
            best_begin = i;
            best_len = j - i;
        }
        i = j;
    }
    if (best_len == 0) throw DivergenceError("objective not evaluable anywhere on the s range: " + first_error);

    Optimum opt;
    opt.grid.assign(evals.begin() + static_cast<std::ptrdiff_t>(best_begin),
                    evals.begin() + static_cast<std::ptrdiff_t>(best_begin + best_len));
    opt.range_lo = opt.grid.front().s;
    opt.range_hi = opt.grid.back().s;
    opt.clipped_lo = best_begin > 0;
    opt.clipped_hi = best_begin + best_len < grid.size();

    double q_min = opt.grid.front().q, q_max = q_min, noise = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < opt.grid.size(); ++i) {
        const auto& e = opt.grid[i];
        if (e.q < q_min) {
            q_min = e.q;
            arg = i;
        }
        q_max = std::max(q_max, e.q);
        noise = std::max(noise, e.noise);
    }

    if (q_max - q_min < 2.0 * noise) {
        opt.flat = true;
        opt.s_star = 0.5 * (opt.range_lo + opt.range_hi);
        opt.q_star = evaluate_objective(spec, params, fading, opt.s_star).q;
        return opt;
    }

    opt.s_star = opt.grid[arg].s;
    opt.q_star = q_min;
    if (spec.method != Method::Simulated && opt.grid.size() > 1) {
        const double a = opt.grid[arg == 0 ? 0 : arg - 1].s;
        const double b = opt.grid[std::min(arg + 1, opt.grid.size() - 1)].s;
        auto q = [&](double s) { return evaluate_objective(spec, params, fading, s).q; };
        const auto m = numerics::minimize_unimodal(q, a, b, spec.refine_tol);
        if (m.fx <= opt.q_star) {
            opt.s_star = m.x;
            opt.q_star = m.fx;
        }
    }
    return opt;
}

RobustnessBand robustness_band(const ObjectiveSpec& spec, const NetworkParams& params,
                               const fading::FadingModel& fading, double delta_pct) {
    return robustness_band(spec, params, fading, optimal_exponent(spec, params, fading), delta_pct);
}

RobustnessBand robustness_band(const ObjectiveSpec& spec, const NetworkParams& params,
                               const fading::FadingModel& fading, const Optimum& optimum, double delta_pct) {
    if (!(delta_pct >= 0.0) || !std::isfinite(delta_pct)) throw DomainError("delta_pct must be non-negative");
    RobustnessBand band;
    band.s_star = optimum.s_star;
    band.q_star = optimum.q_star;
    band.s_lo = optimum.s_star;
    band.s_hi = optimum.s_star;
    band.delta_pct = delta_pct;
    if (delta_pct == 0.0) return band;

    const double target = (1.0 + delta_pct / 100.0) * optimum.q_star;
    const double tol = spec.method == Method::Simulated ? spec.grid_step / 8.0 : spec.refine_tol;
    auto q = [&](double s) { return evaluate_objective(spec, params, fading, s).q; };
    const auto& grid = optimum.grid;

    // upward
    double inside = optimum.s_star;
    band.s_hi = optimum.range_hi;
    band.clipped_hi = true;
    for (const auto& e : grid) {
        if (e.s <= optimum.s_star) continue;
        if (e.q > target) {
            band.s_hi = crossing(q, inside, e.s, target, tol);
            band.clipped_hi = false;
            break;
        }
        inside = e.s;
    }
    // downward
    inside = optimum.s_star;
    band.s_lo = optimum.range_lo;
    band.clipped_lo = true;
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
        if (it->s >= optimum.s_star) continue;
        if (it->q > target) {
            band.s_lo = crossing(q, inside, it->s, target, tol);
            band.clipped_lo = false;
            break;
        }
        inside = it->s;
    }
    return band;
}

double h_function(const fading::FadingModel& fading, double delta, double s) {
    return fading.fractional_moment(-s * delta) * fading.fractional_moment((s - 1.0) * delta);
}

ConvexityReport convexity_witness(const fading::FadingModel& fading, double delta, std::vector<double> grid,
                                  double tol) {
    ConvexityReport report;
    report.s = sorted_unique(std::move(grid));
    for (double s : report.s) report.h.push_back(h_function(fading, delta, s));
    double scale = 0.0;
    for (double h : report.h) scale = std::max(scale, std::abs(h));
    const double slack = tol * std::max(1.0, scale);

    for (std::size_t i = 0; i < report.s.size(); ++i) {
        for (std::size_t j = i + 1; j < report.s.size(); ++j) {
            const double mid = h_function(fading, delta, 0.5 * (report.s[i] + report.s[j]));
            if (mid > 0.5 * (report.h[i] + report.h[j]) + slack) ++report.midpoint_violations;
        }
        report.symmetry_residual =
            std::max(report.symmetry_residual, std::abs(report.h[i] - h_function(fading, delta, 1.0 - report.s[i])));
    }
    const double step = 1e-4;
    report.derivative_at_half =
        (h_function(fading, delta, 0.5 + step) - h_function(fading, delta, 0.5 - step)) / (2.0 * step);
    return report;
}

std::string to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::VsS: return "vs_s";
        case SweepKind::VsAlpha: return "vs_alpha";
        case SweepKind::VsSnr: return "vs_snr";
        case SweepKind::VsBeta: return "vs_beta";
        case SweepKind::VsLambda: return "vs_lambda";
        case SweepKind::LossCurve: return "loss_curve";
    }
    return "unknown";
}

SweepKind sweep_kind_from_string(const std::string& name) {
    for (auto k : {SweepKind::VsS, SweepKind::VsAlpha, SweepKind::VsSnr, SweepKind::VsBeta, SweepKind::VsLambda,
                   SweepKind::LossCurve}) {
        if (to_string(k) == name) return k;
    }
    throw DomainError("unknown sweep kind '" + name +
                      "' (expected vs_s, vs_alpha, vs_snr, vs_beta, vs_lambda or loss_curve)");
}

std::size_t SweepResult::error_count() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.error.empty(); }));
}

namespace {

void append_error(SweepRow& row, const std::string& what) {
    if (!row.error.empty()) row.error += "; ";
    row.error += what;
}

void fill_vs_s_row(const SweepRequest& req, SweepRow& row) {
    try {
        const PowerControlPolicy policy(row.s, req.fading);
        try {
            row.q_lb = analytic::outage_lb_fpc(policy, req.base).value;
        } catch (const Error& e) {
            append_error(row, std::string("q_lb: ") + e.what());
        }
        try {
            row.q_jensen = analytic::outage_jensen_fpc(policy, req.base).value;
        } catch (const Error& e) {
            append_error(row, std::string("q_jensen: ") + e.what());
        }
        if (req.simulate) {
            ObjectiveSpec spec = req.objective;
            spec.method = Method::Simulated;
            const auto e = evaluate_objective(spec, req.base, req.fading, row.s);
            row.q_sim = e.q;
            row.std_err = e.noise;
        }
    } catch (const Error& e) {
        append_error(row, e.what());
    }
}

NetworkParams params_for(const SweepRequest& req, double value) {
    NetworkParams p = req.base;
    switch (req.kind) {
        case SweepKind::VsAlpha: {
            const double snr = req.base.snr();
            p.alpha = value;
            p.set_snr(snr);
            break;
        }
        case SweepKind::VsSnr: p.set_snr(std::pow(10.0, value / 10.0)); break;
        case SweepKind::VsBeta: p.beta = std::pow(10.0, value / 10.0); break;
        case SweepKind::VsLambda: p.lambda = value; break;
        default: break;
    }
    p.validate();
    return p;
}

void fill_optimum_row(const SweepRequest& req, SweepRow& row) {
    try {
        const NetworkParams p = params_for(req, row.param_value);
        const auto opt = optimal_exponent(req.objective, p, req.fading);
        row.s = opt.s_star;
        row.q_star = opt.q_star;
        row.flat = opt.flat;
        row.clipped = opt.clipped_lo || opt.clipped_hi;
        const auto b1 = robustness_band(req.objective, p, req.fading, opt, 1.0);
        const auto b10 = robustness_band(req.objective, p, req.fading, opt, 10.0);
        row.s_lo1 = b1.s_lo;
        row.s_hi1 = b1.s_hi;
        row.s_lo10 = b10.s_lo;
        row.s_hi10 = b10.s_hi;
        const PowerControlPolicy policy(opt.s_star, req.fading);
        row.q_lb = analytic::outage_lb_fpc(policy, p).value;
        row.q_jensen = analytic::outage_jensen_fpc(policy, p).value;
        if (req.objective.method == Method::Simulated) {
            row.q_sim = opt.q_star;
            const auto it = std::find_if(opt.grid.begin(), opt.grid.end(),
                                         [&](const Evaluation& e) { return e.s == opt.s_star; });
            if (it != opt.grid.end()) row.std_err = it->noise;
        }
    } catch (const Error& e) {
        append_error(row, e.what());
    }
}

}  // namespace

SweepResult sweep(const SweepRequest& req) {
    SweepResult result;
    result.kind = req.kind;
    const auto values = sorted_unique(req.values);
    if (values.empty()) throw DomainError("sweep values must not be empty");

    switch (req.kind) {
        case SweepKind::VsS:
            result.param_name = "s";
            for (double v : values) {
                SweepRow row;
                row.param_value = v;
                row.s = v;
                result.rows.push_back(row);
            }
            for_each_index(result.rows.size(), !req.simulate, [&](std::size_t i) { fill_vs_s_row(req, result.rows[i]); });
            break;
        case SweepKind::LossCurve: {
            result.param_name = "alpha";
            const auto s_grid = sorted_unique(req.s_grid);
            if (s_grid.empty()) throw DomainError("loss_curve needs a non-empty s grid");
            for (double a : values) {
                for (double s : s_grid) {
                    SweepRow row;
                    row.param_value = a;
                    row.s = s;
                    result.rows.push_back(row);
                }
            }
            for_each_index(result.rows.size(), true, [&](std::size_t i) {
                auto& row = result.rows[i];
                try {
                    if (!(row.param_value > 2.0)) throw DomainError("alpha must exceed 2");
                    row.loss_factor = analytic::loss_factor_fpc(row.s, req.fading, 2.0 / row.param_value);
                } catch (const Error& e) {
                    append_error(row, e.what());
                }
            });
            break;
        }
        case SweepKind::VsAlpha:
        case SweepKind::VsSnr:
        case SweepKind::VsBeta:
        case SweepKind::VsLambda:
            switch (req.kind) {
                case SweepKind::VsAlpha: result.param_name = "alpha"; break;
                case SweepKind::VsSnr: result.param_name = "snr_db"; result.unit = "dB"; break;
                case SweepKind::VsBeta: result.param_name = "beta_db"; result.unit = "dB"; break;
                default: result.param_name = "lambda"; result.unit = "1/m^2"; break;
            }
            for (double v : values) {
                SweepRow row;
                row.param_value = v;
                result.rows.push_back(row);
            }
            for_each_index(result.rows.size(), req.objective.method != Method::Simulated,
                           [&](std::size_t i) { fill_optimum_row(req, result.rows[i]); });
            break;
    }
    return result;
}

}  // namespace fpclab::optimize
