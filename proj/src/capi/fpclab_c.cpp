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

#include "fpclab/fpclab.h"

#include <exception>
#include <new>
#include <string>

#include "analytic/bounds.hpp"
#include "app/config.hpp"
#include "app/run.hpp"
#include "common/errors.hpp"
#include "fading/fading.hpp"
#include "optimize/optimize.hpp"
#include "simulate/simulate.hpp"

struct fpc_fading_s {
    fpclab::fading::FadingModel model;
};

struct fpc_config_s {
    nlohmann::json document;
    std::string scratch;
};

namespace {

thread_local std::string last_error;

fpc_status fail(fpc_status status, const char* what) {
    last_error = what;
    return status;
}

template <typename F>
fpc_status guard(F&& fn) {
    try {
        fn();
        return FPC_OK;
    } catch (const fpclab::DomainError& e) {
        return fail(FPC_ERR_DOMAIN, e.what());
    } catch (const fpclab::DivergenceError& e) {
        return fail(FPC_ERR_DIVERGENCE, e.what());
    } catch (const fpclab::InfeasibleError& e) {
        return fail(FPC_ERR_INFEASIBLE, e.what());
    } catch (const fpclab::BracketError& e) {
        return fail(FPC_ERR_BRACKET, e.what());
    } catch (const fpclab::ConvergenceError& e) {
        return fail(FPC_ERR_CONVERGENCE, e.what());
    } catch (const fpclab::ConfigError& e) {
        return fail(FPC_ERR_CONFIG, e.what());
    } catch (const fpclab::IoError& e) {
        return fail(FPC_ERR_IO, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(FPC_ERR_CONFIG, e.what());
    } catch (const std::bad_alloc&) {
        return fail(FPC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FPC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FPC_ERR_INTERNAL, "unknown error");
    }
}


template <typename... Ptrs>
bool any_null(const Ptrs*... ptrs) {
    return ((ptrs == nullptr) || ...);
}

fpclab::analytic::NetworkParams to_params(const fpc_params* p) {
    fpclab::analytic::NetworkParams out;
    out.alpha = p->alpha;
    out.beta = p->beta;
    out.d = p->d;
    out.p = p->p;
    out.eta = p->eta;
    out.lambda = p->lambda;
    out.validate();
    return out;
}

fpclab::optimize::SimSettings to_settings(const fpc_sim_options* o) {
    fpclab::optimize::SimSettings s;
    if (o) {
        s.n_trials = o->n_trials;
        s.seed = o->seed;
        s.truncation_rel_tol = o->truncation_rel_tol;
        s.min_radius_factor = o->min_radius_factor;
    }
    return s;
}

#define FPC_REQUIRE(...) \
    if (any_null(__VA_ARGS__)) return fail(FPC_ERR_NULL_ARGUMENT, "null argument")

}  // namespace

extern "C" {

const char* fpc_version(void) { return "0.1.0"; }

const char* fpc_last_error(void) { return last_error.c_str(); }

const char* fpc_status_string(fpc_status status) {
    switch (status) {
        case FPC_OK: return "ok";
        case FPC_ERR_DOMAIN: return "domain error";
        case FPC_ERR_DIVERGENCE: return "divergent moment";
        case FPC_ERR_INFEASIBLE: return "infeasible";
        case FPC_ERR_BRACKET: return "bad root bracket";
        case FPC_ERR_CONVERGENCE: return "no convergence";
        case FPC_ERR_CONFIG: return "invalid configuration";
        case FPC_ERR_IO: return "i/o error";
        case FPC_ERR_NULL_ARGUMENT: return "null argument";
        case FPC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

int fpc_exit_code(fpc_status status) {
    if (status == FPC_OK) return 0;
    if (status == FPC_ERR_CONVERGENCE || status == FPC_ERR_BRACKET) return 2;
    return 1;
}

void fpc_params_default(fpc_params* out) {
    if (!out) return;
    const fpclab::analytic::NetworkParams p;
    *out = {p.alpha, p.beta, p.d, p.p, p.eta, p.lambda};
}

fpc_status fpc_fading_create(const char* name, double h_min, fpc_fading* out) {
    FPC_REQUIRE(name, out);
    return guard([&] {
        using fpclab::fading::FadingModel;
        const std::string n = name;
        if (n == "none") {
            *out = new fpc_fading_s{FadingModel::deterministic()};
        } else if (n == "rayleigh") {
            *out = new fpc_fading_s{FadingModel::rayleigh()};
        } else if (n == "clamped_rayleigh") {
            *out = new fpc_fading_s{
                FadingModel::clamped_rayleigh(h_min == 0.0 ? fpclab::fading::kDefaultClampFloor : h_min)};
        } else {
            throw fpclab::DomainError("unknown fading model '" + n + "'");
        }
    });
}

void fpc_fading_destroy(fpc_fading fading) { delete fading; }

fpc_status fpc_fading_moment(fpc_fading fading, double t, double* out) {
    FPC_REQUIRE(fading, out);
    return guard([&] { *out = fading->model.fractional_moment(t); });
}

fpc_status fpc_power_normalizer(fpc_fading fading, double s, double* out) {
    FPC_REQUIRE(fading, out);
    return guard([&] { *out = fading->model.power_normalizer(s); });
}

fpc_status fpc_outage_lb_pathloss(const fpc_params* params, double* out) {
    FPC_REQUIRE(params, out);
    return guard([&] { *out = fpclab::analytic::outage_lb_pathloss(to_params(params)); });
}

fpc_status fpc_kappa(const fpc_params* params, double s, fpc_fading fading, double* out) {
    FPC_REQUIRE(params, fading, out);
    return guard([&] {
        *out = fpclab::analytic::kappa(fpclab::analytic::PowerControlPolicy(s, fading->model), to_params(params));
    });
}

fpc_status fpc_outage_lb(const fpc_params* params, double s, fpc_fading fading, double* value,
                         double* quadrature_error) {
    FPC_REQUIRE(params, fading, value);
    return guard([&] {
        const auto r = fpclab::analytic::outage_lb_fpc(fpclab::analytic::PowerControlPolicy(s, fading->model),
                                                       to_params(params));
        *value = r.value;
        if (quadrature_error) *quadrature_error = r.quadrature_error;
    });
}

fpc_status fpc_outage_jensen(const fpc_params* params, double s, fpc_fading fading, double* value,
                             double* quadrature_error) {
    FPC_REQUIRE(params, fading, value);
    return guard([&] {
        const auto r = fpclab::analytic::outage_jensen_fpc(fpclab::analytic::PowerControlPolicy(s, fading->model),
                                                           to_params(params));
        *value = r.value;
        if (quadrature_error) *quadrature_error = r.quadrature_error;
    });
}

fpc_status fpc_density(const fpc_params* params, double s, fpc_fading fading, double epsilon, double* out) {
    FPC_REQUIRE(params, fading, out);
    return guard([&] {
        *out = fpclab::analytic::density_fpc(fpclab::analytic::PowerControlPolicy(s, fading->model),
                                             to_params(params), epsilon);
    });
}

fpc_status fpc_loss_factor(double s, fpc_fading fading, double delta, double* out) {
    FPC_REQUIRE(fading, out);
    return guard([&] { *out = fpclab::analytic::loss_factor_fpc(s, fading->model, delta); });
}

void fpc_sim_options_default(fpc_sim_options* out) {
    if (!out) return;
    const fpclab::optimize::SimSettings s;
    *out = {s.n_trials, s.seed, s.truncation_rel_tol, s.min_radius_factor};
}

fpc_status fpc_simulate_outage(const fpc_params* params, double s, fpc_fading fading,
                               const fpc_sim_options* options, fpc_estimate* out) {
    FPC_REQUIRE(params, fading, options, out);
    return guard([&] {
        fpclab::sim::SimConfig cfg(to_params(params), fpclab::analytic::PowerControlPolicy(s, fading->model));
        cfg.n_trials = options->n_trials;
        cfg.master_seed = options->seed;
        cfg.truncation_rel_tol = options->truncation_rel_tol;
        cfg.min_radius_factor = options->min_radius_factor;
        const auto e = fpclab::sim::estimate_outage(cfg);
        *out = {e.p_hat, e.std_err, e.ci95_lo, e.ci95_hi, e.n_trials, e.seed};
    });
}

fpc_status fpc_optimal_exponent(const fpc_params* params, fpc_fading fading, const char* method,
                                const fpc_sim_options* options, fpc_optimum* out) {
    FPC_REQUIRE(params, fading, method, out);
    return guard([&] {
        fpclab::optimize::ObjectiveSpec spec;
        spec.method = fpclab::optimize::method_from_string(method);
        spec.sim = to_settings(options);
        const auto o = fpclab::optimize::optimal_exponent(spec, to_params(params), fading->model);
        *out = {o.s_star, o.q_star, o.flat ? 1 : 0, (o.clipped_lo || o.clipped_hi) ? 1 : 0};
    });
}

fpc_status fpc_config_parse(const char* json_text, fpc_config* out) {
    FPC_REQUIRE(json_text, out);
    return guard([&] {
        auto doc = fpclab::app::parse_json(json_text);
        if (!doc.is_object()) throw fpclab::ConfigError("config must be a JSON object");
        *out = new fpc_config_s{std::move(doc), {}};
    });
}

void fpc_config_destroy(fpc_config config) { delete config; }

fpc_status fpc_config_set_command(fpc_config config, const char* command) {
    FPC_REQUIRE(config, command);
    return guard([&] { config->document["command"] = command; });
}

fpc_status fpc_config_set_seed(fpc_config config, uint64_t seed) {
    FPC_REQUIRE(config);
    return guard([&] { config->document["sim"]["seed"] = seed; });
}

fpc_status fpc_config_set_trials(fpc_config config, uint64_t n_trials) {
    FPC_REQUIRE(config);
    return guard([&] { config->document["sim"]["n_trials"] = n_trials; });
}

fpc_status fpc_config_set_out_dir(fpc_config config, const char* dir) {
    FPC_REQUIRE(config, dir);
    return guard([&] { config->document["output"]["dir"] = dir; });
}

fpc_status fpc_config_set_svg(fpc_config config, int enabled) {
    FPC_REQUIRE(config);
    return guard([&] { config->document["output"]["svg"] = enabled != 0; });
}

fpc_status fpc_config_set_target(fpc_config config, const char* target) {
    FPC_REQUIRE(config, target);
    return guard([&] { config->document["reproduce"]["target"] = target; });
}

fpc_status fpc_config_set_s(fpc_config config, double s) {
    FPC_REQUIRE(config);
    return guard([&] { config->document["policy"]["s"] = s; });
}

fpc_status fpc_config_resolved_json(fpc_config config, const char** out) {
    FPC_REQUIRE(config, out);
    return guard([&] {
        const auto c = fpclab::app::parse_config(config->document);
        config->scratch = fpclab::app::to_json(fpclab::app::effective_config(c));
        *out = config->scratch.c_str();
    });
}

fpc_status fpc_run(fpc_config config, const char** summary, size_t* warnings) {
    FPC_REQUIRE(config);
    return guard([&] {
        const auto outcome = fpclab::app::run(fpclab::app::parse_config(config->document));
        config->scratch = outcome.summary;
        if (summary) *summary = config->scratch.c_str();
        if (warnings) *warnings = outcome.warnings;
    });
}

}  // extern "C"
