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

#include <optional>
#include <string>

#include "analytic/network.hpp"
#include "fading/fading.hpp"

namespace fpclab::analytic {

enum class BoundMethod { LowerBound, JensenApprox, ExactFormula };

std::string to_string(BoundMethod method);

/// An outage probability together with how it was obtained. quadrature_error
/// is an absolute error estimate on value (0 for closed forms).
struct BoundResult {
    double value = 0.0;
    BoundMethod method = BoundMethod::LowerBound;
    double quadrature_error = 0.0;
};

/// Ingredients shared by the Jensen approximation and its density inverse.
struct JensenTerms {
    double success_floor = 1.0;       // P(H00 >= kappa)
    double mark_moment = 1.0;         // E[H^-s delta] E[H^delta]
    double conditional_moment = 0.0;  // E[(H00^(1-s)/beta - E[H^-s]/snr)^-delta | H00 >= kappa]
    double quadrature_error = 0.0;    // absolute error on conditional_moment
};

/// Dominant-interferer tail bound for marked Poisson shot noise:
/// P(sum Z_i X_i^-alpha > y) >= 1 - exp(-pi lambda E[Z^delta] y^-delta).
double shot_noise_tail_lb(double lambda, double ez_delta, double y, double delta);

/// Outage lower bound without fading and with constant power. Returns 1 when
/// snr <= beta.
double outage_lb_pathloss(const NetworkParams& params);

/// Closed-form inverse of outage_lb_pathloss. Throws InfeasibleError when
/// snr <= beta.
double density_ub_pathloss(const NetworkParams& params, double epsilon);

/// Signal fade below which noise alone causes outage:
/// (beta / snr * E[H^-s])^(1/(1-s)); 0 without noise. Undefined for s = 1.
double kappa(const PowerControlPolicy& policy, const NetworkParams& params);

JensenTerms jensen_terms(const PowerControlPolicy& policy, const NetworkParams& params);

/// Dominant-interferer lower bound on outage under fractional power control.
/// The conditional expectation over H00 is integrated in u = H00^(1-s).
/// eta = 0 and s = 1 use their own closed or simpler forms.
BoundResult outage_lb_fpc(const PowerControlPolicy& policy, const NetworkParams& params);

/// Jensen approximation of outage_lb_fpc (exp of the mean instead of the mean
/// of exp). Never below outage_lb_fpc.
BoundResult outage_jensen_fpc(const PowerControlPolicy& policy, const NetworkParams& params);

BoundResult outage_lb_cp(const NetworkParams& params, const fading::FadingModel& fading);
BoundResult outage_jensen_cp(const NetworkParams& params, const fading::FadingModel& fading);

/// Channel-inversion closed form. Needs E[H^-1] only when eta > 0; throws
/// DivergenceError if it is infinite and InfeasibleError if
/// snr / E[H^-1] <= beta.
BoundResult outage_lb_ci(const NetworkParams& params, const fading::FadingModel& fading);

/// Density at which outage_jensen_fpc equals epsilon. Throws InfeasibleError
/// when epsilon is at or below the noise-only floor 1 - P(H00 >= kappa).
double density_fpc(const PowerControlPolicy& policy, const NetworkParams& params, double epsilon);

/// 1 / (E[H^delta] E[H^-s delta] E[H^-(1-s) delta]).
double loss_factor_fpc(double s, const fading::FadingModel& fading, double delta);

/// log2(1 + beta), the rate of a link that just meets the threshold.
double spectral_efficiency(double beta);

/// density * (1 - epsilon) * b, with b = spectral_efficiency(beta) unless
/// overridden.
double transmission_capacity(const NetworkParams& params, double epsilon, double density,
                             std::optional<double> bits_per_hz = std::nullopt);

}  // namespace fpclab::analytic
