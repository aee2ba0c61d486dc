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

#ifndef FPCLAB_FPCLAB_H
#define FPCLAB_FPCLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(FPCLAB_BUILDING_LIBRARY)
#define FPC_API __attribute__((visibility("default")))
#else
#define FPC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status; on failure fpc_last_error() holds a
   message for the calling thread until its next failing call. */
typedef enum fpc_status {
    FPC_OK = 0,
    FPC_ERR_DOMAIN = 1,
    FPC_ERR_DIVERGENCE = 2,
    FPC_ERR_INFEASIBLE = 3,
    FPC_ERR_BRACKET = 4,
    FPC_ERR_CONVERGENCE = 5,
    FPC_ERR_CONFIG = 6,
    FPC_ERR_IO = 7,
    FPC_ERR_NULL_ARGUMENT = 8,
    FPC_ERR_INTERNAL = 9
} fpc_status;

FPC_API const char* fpc_version(void);
FPC_API const char* fpc_last_error(void);
FPC_API const char* fpc_status_string(fpc_status status);
/* Process exit code for a status: 0 success, 2 numerical non-convergence,
   1 anything else. */
FPC_API int fpc_exit_code(fpc_status status);

/* Units: d in meters, p and eta in watts, lambda in transmitters per m^2.
   eta = 0 is the noise-free network. */
typedef struct fpc_params {
    double alpha;
    double beta;
    double d;
    double p;
    double eta;
    double lambda;
} fpc_params;

/* alpha 3, beta 1, d 10, p 1, SNR 20 dB, lambda 1e-4. */
FPC_API void fpc_params_default(fpc_params* out);

typedef struct fpc_fading_s* fpc_fading;

/* name: "none", "rayleigh" or "clamped_rayleigh" (h_min used only by the
   last; pass 0 for the default floor). */
FPC_API fpc_status fpc_fading_create(const char* name, double h_min, fpc_fading* out);
FPC_API void fpc_fading_destroy(fpc_fading fading);
/* E[H^t]. */
FPC_API fpc_status fpc_fading_moment(fpc_fading fading, double t, double* out);
/* E[H^-s]. */
FPC_API fpc_status fpc_power_normalizer(fpc_fading fading, double s, double* out);

FPC_API fpc_status fpc_outage_lb_pathloss(const fpc_params* params, double* out);
FPC_API fpc_status fpc_kappa(const fpc_params* params, double s, fpc_fading fading, double* out);
/* quadrature_error may be NULL. */
FPC_API fpc_status fpc_outage_lb(const fpc_params* params, double s, fpc_fading fading, double* value,
                                 double* quadrature_error);
FPC_API fpc_status fpc_outage_jensen(const fpc_params* params, double s, fpc_fading fading, double* value,
                                     double* quadrature_error);
FPC_API fpc_status fpc_density(const fpc_params* params, double s, fpc_fading fading, double epsilon,
                               double* out);
FPC_API fpc_status fpc_loss_factor(double s, fpc_fading fading, double delta, double* out);

typedef struct fpc_sim_options {
    uint64_t n_trials;
    uint64_t seed;
    double truncation_rel_tol;
    double min_radius_factor;
} fpc_sim_options;

typedef struct fpc_estimate {
    double p_hat;
    double std_err;
    double ci95_lo;
    double ci95_hi;
    uint64_t n_trials;
    uint64_t seed;
} fpc_estimate;

FPC_API void fpc_sim_options_default(fpc_sim_options* out);
FPC_API fpc_status fpc_simulate_outage(const fpc_params* params, double s, fpc_fading fading,
                                       const fpc_sim_options* options, fpc_estimate* out);

typedef struct fpc_optimum {
    double s_star;
    double q_star;
    int flat;
    int clipped;
} fpc_optimum;

/* method: "jensen", "lower_bound" or "simulated"; options may be NULL unless
   simulated. Uses the default exponent range and grid. */
FPC_API fpc_status fpc_optimal_exponent(const fpc_params* params, fpc_fading fading, const char* method,
                                        const fpc_sim_options* options, fpc_optimum* out);

/* Run configuration. fpc_config_parse only checks JSON syntax; the
   overrides below edit the document and everything is validated when the
   config is resolved or run. */
typedef struct fpc_config_s* fpc_config;

FPC_API fpc_status fpc_config_parse(const char* json_text, fpc_config* out);
FPC_API void fpc_config_destroy(fpc_config config);
FPC_API fpc_status fpc_config_set_command(fpc_config config, const char* command);
FPC_API fpc_status fpc_config_set_seed(fpc_config config, uint64_t seed);
FPC_API fpc_status fpc_config_set_trials(fpc_config config, uint64_t n_trials);
FPC_API fpc_status fpc_config_set_out_dir(fpc_config config, const char* dir);
FPC_API fpc_status fpc_config_set_svg(fpc_config config, int enabled);
FPC_API fpc_status fpc_config_set_target(fpc_config config, const char* target);
FPC_API fpc_status fpc_config_set_s(fpc_config config, double s);
/* Validates and returns the canonical JSON; the string lives until the next
   call on this handle. */
FPC_API fpc_status fpc_config_resolved_json(fpc_config config, const char** out);
/* Runs the command and writes its artifacts. summary (one line) and
   warnings may be NULL; summary lives until the next call on this handle. */
FPC_API fpc_status fpc_run(fpc_config config, const char** summary, size_t* warnings);

#ifdef __cplusplus
}
#endif

#endif
