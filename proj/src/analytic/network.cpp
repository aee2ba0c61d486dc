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

#include "analytic/network.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "common/errors.hpp"

namespace fpclab::analytic {

double NetworkParams::snr() const {
    if (eta == 0.0) return std::numeric_limits<double>::infinity();
    return p * std::pow(d, -alpha) / eta;
}

void NetworkParams::set_snr(double snr_linear) {
    if (!(snr_linear > 0.0)) throw DomainError("snr must be positive");
    eta = std::isinf(snr_linear) ? 0.0 : p * std::pow(d, -alpha) / snr_linear;
}

void NetworkParams::validate() const {
    auto fail = [](const char* what) { throw DomainError(what); };
    if (!std::isfinite(alpha) || !(alpha > 2.0)) fail("alpha must exceed 2");
    if (!std::isfinite(beta) || !(beta > 0.0)) fail("beta must be positive");
    if (!std::isfinite(d) || !(d > 0.0)) fail("d must be positive");
    if (!std::isfinite(p) || !(p > 0.0)) fail("p must be positive");
    if (!std::isfinite(eta) || !(eta >= 0.0)) fail("eta must be non-negative");
    if (!std::isfinite(lambda) || !(lambda >= 0.0)) fail("lambda must be non-negative");
}

PowerControlPolicy::PowerControlPolicy(double s, fading::FadingModel fading) : s_(s), fading_(fading) {
    if (!std::isfinite(s) || s < kMinExponent || s > kMaxExponent) {
        std::ostringstream os;
        os << "power control exponent s must lie in [" << kMinExponent << ", " << kMaxExponent << "], got " << s;
        throw DomainError(os.str());
    }
    normalizer_ = fading_.power_normalizer(s);
}

bool PowerControlPolicy::feasible(const NetworkParams& params) const {
    return params.snr() / normalizer_ > params.beta;
}

}  // namespace fpclab::analytic
