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

#include "analytic/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "common/errors.hpp"
#include "numerics/quadrature.hpp"

namespace fpclab::analytic {

namespace {

using numerics::QuadratureResult;
using numerics::QuadratureSpec;

QuadratureSpec bound_quadrature(double singularity = 0.0) {
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    spec.abs_tol = 1e-14;
    spec.max_subdivisions = 4000;
    spec.endpoint_singularity_order = singularity;
    return spec;
}

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("target outage epsilon must lie in (0, 1)");
}

// lambda pi d^2, the mean number of transmitters within the link distance.
double relative_density(const NetworkParams& params) {
    return params.lambda * std::numbers::pi * params.d * params.d;
}

// E[H^-s delta] E[H^delta]: the delta-moment of an interferer's received mark
// relative to the reference signal scale.
double mark_moment(const PowerControlPolicy& policy, double delta) {
    const auto& f = policy.fading();
    return f.fractional_moment(-policy.s() * delta) * f.fractional_moment(delta);
}

// E[g(margin); H >= kappa] where margin = (H^w - u0) / beta and u0 = kappa^w.
// The continuous part is integrated in u = H^w, which turns a margin^-delta
// factor into a pure power-law singularity at u0.
QuadratureResult expect_over_margin(const fading::FadingModel& fading, double w, double u0, double beta,
                                    double kappa, const std::function<double(double)>& g, double singularity) {
    QuadratureResult total;
    for (const auto& atom : fading.atoms()) {
        if (atom.value < kappa) continue;
        const double margin = std::max(0.0, (std::pow(atom.value, w) - u0) / beta);
        total.value += atom.mass * g(margin);
    }
    if (!fading.has_density()) return total;

    const double h_lower = fading.density_lower();
    const bool starts_at_kappa = !(h_lower > kappa);
    const double u_start = starts_at_kappa ? u0 : std::pow(h_lower, w);
    const double inv_w = 1.0 / w;
    auto integrand = [&](double offset) {
        const double u = u_start + offset;
        const double margin = starts_at_kappa ? offset / beta : (u - u0) / beta;
        const double h = std::pow(u, inv_w);
        const double density = fading.density(h);
        if (density == 0.0) return 0.0;
        return g(margin) * density * inv_w * std::pow(u, inv_w - 1.0);
    };
    const auto r = numerics::integrate_semi_infinite_offset(
        integrand, bound_quadrature(starts_at_kappa ? singularity : 0.0));
    total.value += r.value;
    total.abs_error += r.abs_error;
    total.subdivisions = r.subdivisions;
    return total;
}

// E[g(H)] over the whole distribution, integrated directly in h.
QuadratureResult expect_over_h(const fading::FadingModel& fading, const std::function<double(double)>& g) {
    QuadratureResult total;
    for (const auto& atom : fading.atoms()) total.value += atom.mass * g(atom.value);
    if (!fading.has_density()) return total;
    const auto r = numerics::integrate_semi_infinite(
        [&](double h) {
            const double density = fading.density(h);
            return density == 0.0 ? 0.0 : g(h) * density;
        },
        fading.density_lower(), bound_quadrature());
    total.value += r.value;
    total.abs_error += r.abs_error;
    total.subdivisions = r.subdivisions;
    return total;
}

// Channel inversion: the received signal is deterministic, so bound and
// Jensen approximation coincide.
double inversion_outage(const PowerControlPolicy& policy, const NetworkParams& params) {
    const double delta = params.delta();
    const double margin = 1.0 / params.beta - policy.normalizer() / params.snr();
    if (!(margin > 0.0)) return 1.0;
    const double exponent = relative_density(params) * mark_moment(policy, delta) * std::pow(margin, -delta);
    return -std::expm1(-exponent);
}

}  // namespace

std::string to_string(BoundMethod method) {
    switch (method) {
        case BoundMethod::LowerBound:
            return "lower_bound";
        case BoundMethod::JensenApprox:
            return "jensen_approx";
        case BoundMethod::ExactFormula:
            return "exact_formula";
    }
    return "unknown";
}

double shot_noise_tail_lb(double lambda, double ez_delta, double y, double delta) {
    if (!(y > 0.0) || std::isnan(y)) throw DomainError("shot_noise_tail_lb: threshold y must be positive");
    if (!(lambda >= 0.0) || !(ez_delta >= 0.0) || !std::isfinite(lambda) || !std::isfinite(ez_delta)) {
        throw DomainError("shot_noise_tail_lb: lambda and E[Z^delta] must be finite and non-negative");
    }
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("shot_noise_tail_lb: delta must lie in (0, 1)");
    return -std::expm1(-std::numbers::pi * lambda * ez_delta * std::pow(y, -delta));
}

double outage_lb_pathloss(const NetworkParams& params) {
    params.validate();
    const double margin = 1.0 / params.beta - 1.0 / params.snr();
    if (!(margin > 0.0)) return 1.0;
    return -std::expm1(-relative_density(params) * std::pow(margin, -params.delta()));
}

double density_ub_pathloss(const NetworkParams& params, double epsilon) {
    params.validate();
    check_epsilon(epsilon);
    const double margin = 1.0 / params.beta - 1.0 / params.snr();
    if (!(margin > 0.0)) throw InfeasibleError("snr does not exceed beta: outage is certain at any density");
    return -std::log1p(-epsilon) / (std::numbers::pi * params.d * params.d) * std::pow(margin, params.delta());
}

double kappa(const PowerControlPolicy& policy, const NetworkParams& params) {
    params.validate();
    if (policy.s() >= 1.0) {
        throw DomainError("kappa is undefined for s = 1: channel inversion conditions on P0 H00 directly");
    }
    if (params.eta == 0.0) return 0.0;
    return std::pow(params.beta / params.snr() * policy.normalizer(), 1.0 / (1.0 - policy.s()));
}

JensenTerms jensen_terms(const PowerControlPolicy& policy, const NetworkParams& params) {
    params.validate();
    const double delta = params.delta();
    const double s = policy.s();
    JensenTerms terms;
    terms.mark_moment = mark_moment(policy, delta);

    if (s >= 1.0) {
        const double margin = 1.0 / params.beta - policy.normalizer() / params.snr();
        terms.success_floor = margin > 0.0 ? 1.0 : 0.0;
        terms.conditional_moment = margin > 0.0 ? std::pow(margin, -delta) : 0.0;
        return terms;
    }
    const double w = 1.0 - s;
    if (params.eta == 0.0) {
        terms.success_floor = 1.0;
        terms.conditional_moment =
            std::pow(params.beta, delta) * policy.fading().fractional_moment(-w * delta);
        return terms;
    }
    const double u0 = params.beta * policy.normalizer() / params.snr();
    const double k = std::pow(u0, 1.0 / w);
    terms.success_floor = policy.fading().tail_probability(k);
    if (terms.success_floor == 0.0) return terms;
    const auto r = expect_over_margin(
        policy.fading(), w, u0, params.beta, k, [delta](double margin) { return std::pow(margin, -delta); },
        delta);
    terms.conditional_moment = r.value / terms.success_floor;
    terms.quadrature_error = r.abs_error / terms.success_floor;
    return terms;
}

BoundResult outage_lb_fpc(const PowerControlPolicy& policy, const NetworkParams& params) {
    params.validate();
    BoundResult result{0.0, BoundMethod::LowerBound, 0.0};
    if (policy.s() >= 1.0) {
        result.value = inversion_outage(policy, params);
        return result;
    }
    const double delta = params.delta();
    const double w = 1.0 - policy.s();
    const double exposure = relative_density(params) * mark_moment(policy, delta);

    if (params.eta == 0.0) {
        // 1 - E[exp(-c H00^-(1-s) delta)] with c = lambda pi d^2 beta^delta E[H^-s delta] E[H^delta]
        if (exposure == 0.0) return result;
        const double c = exposure * std::pow(params.beta, delta);
        const double e = w * delta;
        const auto r = expect_over_h(policy.fading(), [c, e](double h) { return -std::expm1(-c * std::pow(h, -e)); });
        result.value = std::clamp(r.value, 0.0, 1.0);
        result.quadrature_error = r.abs_error;
        return result;
    }

    const double u0 = params.beta * policy.normalizer() / params.snr();
    const double k = std::pow(u0, 1.0 / w);
    const double success = policy.fading().tail_probability(k);
    if (success == 0.0) {
        result.value = 1.0;
        return result;
    }
    if (exposure == 0.0) {
        result.value = 1.0 - success;
        return result;
    }
    // q = (1 - P(H00 >= kappa)) + E[1 - exp(-exposure margin^-delta); H00 >= kappa]
    const auto r = expect_over_margin(
        policy.fading(), w, u0, params.beta, k,
        [exposure, delta](double margin) { return -std::expm1(-exposure * std::pow(margin, -delta)); }, 0.0);
    result.value = std::clamp((1.0 - success) + r.value, 0.0, 1.0);
    result.quadrature_error = r.abs_error;
    return result;
}

BoundResult outage_jensen_fpc(const PowerControlPolicy& policy, const NetworkParams& params) {
    const JensenTerms t = jensen_terms(policy, params);
    BoundResult result{1.0, BoundMethod::JensenApprox, 0.0};
    if (t.success_floor == 0.0) return result;
    const double scale = relative_density(params) * t.mark_moment;
    const double exponent = scale * t.conditional_moment;
    // 1 - P e^-x written to keep precision when both terms are small
    result.value = std::clamp((1.0 - t.success_floor) - t.success_floor * std::expm1(-exponent), 0.0, 1.0);
    result.quadrature_error = t.success_floor * std::exp(-exponent) * scale * t.quadrature_error;
    return result;
}

BoundResult outage_lb_cp(const NetworkParams& params, const fading::FadingModel& fading) {
    return outage_lb_fpc(PowerControlPolicy(0.0, fading), params);
}

BoundResult outage_jensen_cp(const NetworkParams& params, const fading::FadingModel& fading) {
    return outage_jensen_fpc(PowerControlPolicy(0.0, fading), params);
}

BoundResult outage_lb_ci(const NetworkParams& params, const fading::FadingModel& fading) {
    params.validate();
    const double delta = params.delta();
    const double marks = fading.fractional_moment(delta) * fading.fractional_moment(-delta);
    double margin = 1.0 / params.beta;
    if (params.eta > 0.0) {
        const double inverse_moment = fading.power_normalizer(1.0);
        margin -= inverse_moment / params.snr();
        if (!(margin > 0.0)) {
            std::ostringstream os;
            os << "channel inversion infeasible: snr / E[H^-1] = " << params.snr() / inverse_moment
               << " does not exceed beta = " << params.beta;
            throw InfeasibleError(os.str());
        }
    }
    const double exponent = relative_density(params) * marks * std::pow(margin, -delta);
    return {-std::expm1(-exponent), BoundMethod::LowerBound, 0.0};
}

double density_fpc(const PowerControlPolicy& policy, const NetworkParams& params, double epsilon) {
    check_epsilon(epsilon);
    const JensenTerms t = jensen_terms(policy, params);
    const double floor = 1.0 - t.success_floor;
    if (!(epsilon > floor)) {
        std::ostringstream os;
        os << "target outage " << epsilon << " is not above the noise-only outage floor " << floor;
        throw InfeasibleError(os.str());
    }
    const double area = std::numbers::pi * params.d * params.d;
    // -log((1 - eps) / P)
    const double log_ratio = -(std::log1p(-epsilon) - std::log(t.success_floor));
    return log_ratio / (area * t.mark_moment * t.conditional_moment);
}

double loss_factor_fpc(double s, const fading::FadingModel& fading, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("loss_factor_fpc: delta must lie in (0, 1)");
    if (!std::isfinite(s)) throw DomainError("loss_factor_fpc: s must be finite");
    const double product = fading.fractional_moment(delta) * fading.fractional_moment(-s * delta) *
                           fading.fractional_moment(-(1.0 - s) * delta);
    return 1.0 / product;
}

double spectral_efficiency(double beta) {
    if (!(beta > 0.0)) throw DomainError("spectral_efficiency: beta must be positive");
    return std::log2(1.0 + beta);
}

double transmission_capacity(const NetworkParams& params, double epsilon, double density,
                             std::optional<double> bits_per_hz) {
    check_epsilon(epsilon);
    if (!(density >= 0.0)) throw DomainError("transmission_capacity: density must be non-negative");
    const double b = bits_per_hz ? *bits_per_hz : spectral_efficiency(params.beta);
    return density * (1.0 - epsilon) * b;
}

}  // namespace fpclab::analytic
