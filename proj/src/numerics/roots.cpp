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

#include "numerics/roots.hpp"

#include <cmath>
#include <string>

#include "common/errors.hpp"

namespace fpclab::numerics {

double find_root_increasing(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo <= hi) || !(tol > 0.0)) throw DomainError("find_root_increasing: need lo <= hi and tol > 0");
    const double flo = f(lo);
    const double fhi = f(hi);
    if (!(flo <= 0.0 && fhi >= 0.0)) {
        throw BracketError("find_root_increasing: f(lo) = " + std::to_string(flo) + ", f(hi) = " +
                           std::to_string(fhi) + " do not bracket a root");
    }
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (fm < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Minimum minimize_unimodal(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo <= hi) || !(tol > 0.0)) throw DomainError("minimize_unimodal: need lo <= hi and tol > 0");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // The bracket may have collapsed onto an endpoint; compare against both.
    Minimum best{0.5 * (a + b), f(0.5 * (a + b))};
    for (double x : {lo, hi}) {
        if (std::abs(x - best.x) <= tol) {
            const double fx = f(x);
            if (fx < best.fx) best = {x, fx};
        }
    }
    return best;
}

}  // namespace fpclab::numerics
