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

#include <algorithm>
#include <string>
#include <vector>

#include "numerics/random.hpp"

namespace fpclab::fading {

enum class FadingKind { Deterministic, Rayleigh, ClampedRayleigh };

/// Default lower clamp for ClampedRayleigh.
inline constexpr double kDefaultClampFloor = 1e-4;

/// Point mass of the channel-power distribution.
struct Atom {
    double value;
    double mass;
};

/// Distribution of the channel power H.
///
/// Besides sampling and fractional moments, a model describes itself as a
/// set of atoms plus an (optional) density on (density_lower, inf). The
/// analytic bounds integrate against that description, so adding a new
/// distribution does not touch them.
///
/// ClampedRayleigh is H' = max(H, h_min) with H ~ Exp(1): an atom of mass
/// 1 - exp(-h_min) at h_min and density exp(-h) above it. Clamping from
/// below is what keeps E[H'^-1] finite.
class FadingModel {
public:
    static FadingModel deterministic();
    static FadingModel rayleigh();
    static FadingModel clamped_rayleigh(double h_min = kDefaultClampFloor);

    FadingKind kind() const { return kind_; }
    double h_min() const { return h_min_; }
    std::string name() const;

    /// E[H^t]. Throws DivergenceError when the moment is infinite
    /// (Rayleigh with t <= -1).
    double fractional_moment(double t) const;

    /// E[H^-s], the normalizer that keeps the mean transmit power at p.
    double power_normalizer(double s) const;

    double sample(numerics::RandomStream& stream) const {
        switch (kind_) {
            case FadingKind::Deterministic: return 1.0;
            case FadingKind::Rayleigh: return numerics::sample_exponential(stream);
            case FadingKind::ClampedRayleigh: return std::max(numerics::sample_exponential(stream), h_min_);
        }
        return 1.0;
    }

    /// P(H >= h).
    double tail_probability(double h) const;

    std::vector<Atom> atoms() const;
    bool has_density() const { return kind_ != FadingKind::Deterministic; }
    /// Lower end of the continuous part's support.
    double density_lower() const { return kind_ == FadingKind::ClampedRayleigh ? h_min_ : 0.0; }
    /// Density of the continuous part at h > density_lower().
    double density(double h) const;

    friend bool operator==(const FadingModel&, const FadingModel&) = default;

private:
    FadingModel(FadingKind kind, double h_min) : kind_(kind), h_min_(h_min) {}

    FadingKind kind_;
    double h_min_;
};

}  // namespace fpclab::fading
