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

#include "fading/fading.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "common/errors.hpp"
#include "numerics/quadrature.hpp"
#include "numerics/special.hpp"

namespace fpclab::fading {

namespace {

numerics::QuadratureSpec moment_quadrature() {
    numerics::QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-15;
    spec.max_subdivisions = 4000;
    return spec;
}

}  // namespace

FadingModel FadingModel::deterministic() { return {FadingKind::Deterministic, 0.0}; }

FadingModel FadingModel::rayleigh() { return {FadingKind::Rayleigh, 0.0}; }

FadingModel FadingModel::clamped_rayleigh(double h_min) {
    if (!std::isfinite(h_min) || h_min <= 0.0) throw DomainError("clamped_rayleigh: h_min must be positive");
    return {FadingKind::ClampedRayleigh, h_min};
}

std::string FadingModel::name() const {
    switch (kind_) {
        case FadingKind::Deterministic:
            return "none";
        case FadingKind::Rayleigh:
            return "rayleigh";
        case FadingKind::ClampedRayleigh: {
            std::ostringstream os;
            os << "clamped_rayleigh(" << h_min_ << ")";
            return os.str();
        }
    }
    return "unknown";
}

double FadingModel::fractional_moment(double t) const {
    if (!std::isfinite(t)) throw DomainError("fractional_moment: exponent must be finite");
    if (t == 0.0) return 1.0;
    switch (kind_) {
        case FadingKind::Deterministic:
            return 1.0;
        case FadingKind::Rayleigh:
            if (t <= -1.0) {
                std::ostringstream os;
                os << "E[H^" << t << "] diverges under Rayleigh fading (requires exponent > -1); "
                   << "use clamped_rayleigh for negative moments of order >= 1";
                throw DivergenceError(os.str());
            }
            return numerics::gamma_fn(1.0 + t);
        case FadingKind::ClampedRayleigh: {
            const double atom = std::pow(h_min_, t) * -std::expm1(-h_min_);
            const auto tail = numerics::integrate_semi_infinite(
                [t](double h) { return std::pow(h, t) * std::exp(-h); }, h_min_, moment_quadrature());
            return atom + tail.value;
        }
    }
    return 1.0;
}

double FadingModel::power_normalizer(double s) const {
    if (!std::isfinite(s) || s > 1.0) throw DomainError("power_normalizer: exponent s must be finite and <= 1");
    if (kind_ == FadingKind::Rayleigh && s >= 1.0) {
        throw DivergenceError(
            "power normalizer E[H^-1] is infinite under Rayleigh fading: channel inversion (s = 1) would "
            "need infinite power; use clamped_rayleigh fading");
    }
    return fractional_moment(-s);
}

double FadingModel::tail_probability(double h) const {
    switch (kind_) {
        case FadingKind::Deterministic:
            return h <= 1.0 ? 1.0 : 0.0;
        case FadingKind::Rayleigh:
            return h <= 0.0 ? 1.0 : std::exp(-h);
        case FadingKind::ClampedRayleigh:
            return h <= h_min_ ? 1.0 : std::exp(-h);
    }
    return 0.0;
}

std::vector<Atom> FadingModel::atoms() const {
    switch (kind_) {
        case FadingKind::Deterministic:
            return {{1.0, 1.0}};
        case FadingKind::Rayleigh:
            return {};
        case FadingKind::ClampedRayleigh:
            return {{h_min_, -std::expm1(-h_min_)}};
    }
    return {};
}

double FadingModel::density(double h) const {
    if (kind_ == FadingKind::Deterministic || h < density_lower()) return 0.0;
    return std::exp(-h);
}

}  // namespace fpclab::fading
