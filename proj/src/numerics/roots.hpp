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

/// Bisection root of a monotone increasing f on [lo, hi].
/// Requires f(lo) <= 0 <= f(hi); throws BracketError otherwise.
double find_root_increasing(const std::function<double(double)>& f, double lo, double hi, double tol);

struct Minimum {
    double x;
    double fx;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
Minimum minimize_unimodal(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace fpclab::numerics
