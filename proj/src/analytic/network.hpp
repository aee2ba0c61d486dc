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

#include "fading/fading.hpp"

namespace fpclab::analytic {

/// Geometry, link budget and density of the reference link.
/// Units: d in meters, p and eta in watts, lambda in transmitters per m^2.
struct NetworkParams {
    double alpha = 3.0;    // pathloss exponent, > 2
    double beta = 1.0;     // SINR threshold (linear)
    double d = 10.0;       // TX-RX distance
    double p = 1.0;        // mean transmit power
    double eta = 1e-5;     // noise power; 0 means noise-free
    double lambda = 1e-4;  // transmitter density

    /// 2 / alpha.
    double delta() const { return 2.0 / alpha; }
    /// Interference-free SNR p d^-alpha / eta; +inf when eta == 0.
    double snr() const;
    /// Sets eta so that snr() equals the given linear value (inf -> eta = 0).
    void set_snr(double snr_linear);

    /// Throws DomainError naming the first violated invariant.
    void validate() const;
};

/// Fractional power control: P_i = p H_ii^-s / E[H^-s].
///
/// Construction computes the normalizer and fails with DivergenceError when
/// it is infinite (Rayleigh with s = 1). s = 0 is constant power, s = 1 is
/// channel inversion; s in [-0.5, 0) is accepted for exploring greedy
/// allocations.
class PowerControlPolicy {
public:
    PowerControlPolicy(double s, fading::FadingModel fading);

    double s() const { return s_; }
    const fading::FadingModel& fading() const { return fading_; }
    /// E[H^-s].
    double normalizer() const { return normalizer_; }

    /// True when the interference-free SNR after the normalization cost,
    /// snr / E[H^-s], exceeds beta.
    bool feasible(const NetworkParams& params) const;

private:
    double s_;
    fading::FadingModel fading_;
    double normalizer_;
};

inline constexpr double kMinExponent = -0.5;
inline constexpr double kMaxExponent = 1.0;

}  // namespace fpclab::analytic
