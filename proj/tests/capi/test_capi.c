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

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "fpclab/fpclab.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

static int close_to(double got, double want, double rel) { return fabs(got - want) <= rel * fabs(want); }

int main(void) {
    fpc_params p;
    fpc_fading rayleigh = NULL, clamped = NULL, bad = NULL;
    double v = 0.0, err = 0.0;

    fpc_params_default(&p);
    EXPECT(p.alpha == 3.0 && p.d == 10.0 && p.lambda == 1e-4);
    EXPECT(strlen(fpc_version()) > 0);

    EXPECT(fpc_fading_create("rayleigh", 0.0, &rayleigh) == FPC_OK);
    EXPECT(fpc_fading_create("clamped_rayleigh", 0.0, &clamped) == FPC_OK);
    EXPECT(fpc_fading_create("nakagami", 0.0, &bad) == FPC_ERR_DOMAIN);
    EXPECT(bad == NULL);
    EXPECT(strstr(fpc_last_error(), "nakagami") != NULL);

    EXPECT(fpc_outage_lb(&p, 0.5, rayleigh, &v, &err) == FPC_OK);
    EXPECT(close_to(v, 0.052135121044758733, 1e-8));
    EXPECT(fpc_outage_jensen(&p, 0.5, rayleigh, &v, NULL) == FPC_OK);
    EXPECT(close_to(v, 0.053356074099318733, 1e-8));
    EXPECT(fpc_outage_lb_pathloss(&p, &v) == FPC_OK);
    EXPECT(close_to(v, 0.031132220661801277, 1e-12));
    EXPECT(fpc_kappa(&p, 0.0, rayleigh, &v) == FPC_OK);
    EXPECT(close_to(v, 0.01, 1e-12));
    EXPECT(fpc_density(&p, 0.5, rayleigh, 0.05, &v) == FPC_OK);
    EXPECT(close_to(v, 9.3508643244510889e-5, 1e-8));
    EXPECT(fpc_loss_factor(0.0, rayleigh, 2.0 / 3.0, &v) == FPC_OK);
    EXPECT(close_to(v, 0.41349667156634404, 1e-12));
    EXPECT(fpc_power_normalizer(rayleigh, 0.5, &v) == FPC_OK);
    EXPECT(close_to(v, 1.772453850905516, 1e-12));
    EXPECT(fpc_fading_moment(rayleigh, -1.0, &v) == FPC_ERR_DIVERGENCE);
    EXPECT(fpc_outage_lb(&p, 1.0, clamped, &v, NULL) == FPC_OK);
    EXPECT(close_to(v, 0.075467774879050008, 1e-9));

    /* status mapping */
    EXPECT(fpc_outage_lb(NULL, 0.5, rayleigh, &v, NULL) == FPC_ERR_NULL_ARGUMENT);
    p.alpha = 1.5;
    EXPECT(fpc_outage_lb(&p, 0.5, rayleigh, &v, NULL) == FPC_ERR_DOMAIN);
    fpc_params_default(&p);
    p.eta = p.p * pow(p.d, -p.alpha) / 5.0;
    EXPECT(fpc_density(&p, 0.9, rayleigh, 0.05, &v) == FPC_ERR_INFEASIBLE);
    EXPECT(fpc_exit_code(FPC_OK) == 0);
    EXPECT(fpc_exit_code(FPC_ERR_CONVERGENCE) == 2);
    EXPECT(fpc_exit_code(FPC_ERR_CONFIG) == 1);
    EXPECT(strlen(fpc_status_string(FPC_ERR_IO)) > 0);

    /* simulation */
    {
        fpc_sim_options opt;
        fpc_estimate a, b;
        fpc_params_default(&p);
        fpc_sim_options_default(&opt);
        EXPECT(opt.n_trials == 200000);
        opt.n_trials = 5000;
        opt.seed = 42;
        EXPECT(fpc_simulate_outage(&p, 0.5, rayleigh, &opt, &a) == FPC_OK);
        EXPECT(fpc_simulate_outage(&p, 0.5, rayleigh, &opt, &b) == FPC_OK);
        EXPECT(a.p_hat == b.p_hat && a.seed == 42 && a.n_trials == 5000);
        EXPECT(a.p_hat > 0.0 && a.p_hat < 0.2);
    }

    /* optimum */
    {
        fpc_optimum o;
        fpc_params_default(&p);
        p.eta = 0.0;
        EXPECT(fpc_optimal_exponent(&p, rayleigh, "jensen", NULL, &o) == FPC_OK);
        EXPECT(fabs(o.s_star - 0.5) < 1e-3);
        EXPECT(fpc_optimal_exponent(&p, rayleigh, "exact", NULL, &o) != FPC_OK);
    }

    /* config handle */
    {
        fpc_config cfg = NULL;
        const char* json = NULL;
        EXPECT(fpc_config_parse("{\"params\": {", &cfg) == FPC_ERR_CONFIG);
        EXPECT(cfg == NULL);
        EXPECT(fpc_config_parse("{\"params\": {\"alpha\": 4}}", &cfg) == FPC_OK);
        EXPECT(fpc_config_set_command(cfg, "analytic") == FPC_OK);
        EXPECT(fpc_config_set_s(cfg, 0.25) == FPC_OK);
        EXPECT(fpc_config_resolved_json(cfg, &json) == FPC_OK);
        EXPECT(json != NULL && strstr(json, "\"alpha\":4") != NULL);
        EXPECT(fpc_config_set_s(cfg, 3.0) == FPC_OK);
        EXPECT(fpc_config_resolved_json(cfg, &json) == FPC_ERR_CONFIG);
        EXPECT(strstr(fpc_last_error(), "policy.s") != NULL);
        fpc_config_destroy(cfg);
        fpc_config_destroy(NULL);
    }

    fpc_fading_destroy(rayleigh);
    fpc_fading_destroy(clamped);
    fpc_fading_destroy(NULL);
    if (failures) fprintf(stderr, "%d failure(s)\n", failures);
    return failures ? 1 : 0;
}
