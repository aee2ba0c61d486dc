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
#include <vector>

#include "analytic/network.hpp"
#include "fading/fading.hpp"
#include "numerics/random.hpp"

namespace fpclab::sim {

using analytic::NetworkParams;
using analytic::PowerControlPolicy;

struct SimConfig {
    SimConfig(NetworkParams params_, PowerControlPolicy policy_) : params(params_), policy(std::move(policy_)) {}

    NetworkParams params;
    PowerControlPolicy policy;
    std::uint64_t n_trials = 200000;
    std::uint64_t master_seed = 1;
    // Mean interference from beyond the truncation radius, relative to the
    // mean received signal power.
    double truncation_rel_tol = 1e-3;
    // Lower bound on the truncation radius, in multiples of d.
    double min_radius_factor = 10.0;

    void validate() const;
};

struct OutageEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t n_trials = 0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
    std::uint64_t seed = 0;
};

struct Interferer {
    double distance;  // to the reference receiver
    double h_i0;      // channel power towards the reference receiver
    double h_ii;      // channel power to its own receiver; sets its transmit power
};

struct Snapshot {
    double h00 = 1.0;
    std::vector<Interferer> interferers;
};

struct TrialOutcome {
    double sinr;
    bool outage;
};

/// Smallest R >= min_radius_factor * d for which the mean interference from
/// transmitters beyond R, 2 pi lambda E[PH] R^(2-alpha) / (alpha - 2), is at
/// most truncation_rel_tol times the mean received signal power
/// p d^-alpha E[H^(1-s)] / E[H^-s].
double truncation_radius(const SimConfig& cfg);

/// Draws one network realisation inside the disc of the given radius.
///
/// Interferers are generated in order of increasing distance as the arrival
/// times of a unit-rate process in area (pi lambda r^2), so the realisation
/// inside any smaller radius is a prefix of the one inside a larger radius.
/// Draw order: H00, then per interferer (area gap, H_ii, H_i0).
Snapshot sample_snapshot(const SimConfig& cfg, numerics::RandomStream& stream, double radius);

/// SINR at the reference receiver; +inf when there is neither noise nor
/// interference. Outage is the strict event SINR < beta.
TrialOutcome evaluate_snapshot(const NetworkParams& params, const PowerControlPolicy& policy,
                               const Snapshot& snapshot);

TrialOutcome run_trial(const SimConfig& cfg, numerics::RandomStream& stream);

/// Fraction of n_trials independent trials in outage. Trial i uses stream
/// (master_seed, i); workers only partition trial indices, so the result is
/// identical for any worker count.
OutageEstimate estimate_outage(const SimConfig& cfg);

/// Monte-Carlo estimate of P(sum Z_i X_i^-alpha > y) for a PPP of density
/// lambda with marks Z drawn from `marks`.
OutageEstimate shot_noise_tail_mc(double lambda, double alpha, const fading::FadingModel& marks, double y,
                                  std::uint64_t n_trials, std::uint64_t seed, double truncation_rel_tol = 1e-3);

}  // namespace fpclab::sim
