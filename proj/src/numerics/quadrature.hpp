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

#include <functional>

namespace fpclab::numerics {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    // Known power-law exponent sigma of the integrand at the lower limit,
    // f(x) ~ (x - lower)^(-sigma). Must lie in [0, 1).
    double endpoint_singularity_order = 0.0;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration over a finite interval.
QuadratureResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureSpec& spec = {});

/// Integral of f over (lower, inf).
///
/// The lower endpoint singularity is removed with x = lower + v^(1/(1-sigma)),
/// and the v-range [1, inf) is folded onto (0, 1] with v = 1/t. Throws
/// ConvergenceError (carrying the best estimate and error bound) when the
/// tolerance is not met within max_subdivisions.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double lower,
                                         const QuadratureSpec& spec = {});

/// Same as integrate_semi_infinite, but the integrand receives the offset
/// x - lower instead of x. Use this when the integrand is singular at lower
/// and the subtraction would lose precision.
QuadratureResult integrate_semi_infinite_offset(const std::function<double(double)>& g,
                                                const QuadratureSpec& spec = {});

}  // namespace fpclab::numerics
