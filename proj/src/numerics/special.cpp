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

#include "numerics/special.hpp"

#include <cmath>
#include <string>

#include "common/errors.hpp"

namespace fpclab::numerics {

double gamma_fn(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("gamma_fn: argument must be positive and finite, got " + std::to_string(x));
    }
    const double value = std::tgamma(x);
    if (!std::isfinite(value)) throw DomainError("gamma_fn: overflow at x = " + std::to_string(x));
    return value;
}

}  // namespace fpclab::numerics
