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

#include "numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "common/errors.hpp"

namespace fpclab::numerics {

namespace {

// Kronrod abscissae; entries 1, 3, 5, 7 are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

Segment gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

bool by_error(const Segment& x, const Segment& y) { return x.error < y.error; }

QuadratureResult adaptive(const std::function<double(double)>& f,
                          const std::vector<std::pair<double, double>>& initial,
                          const QuadratureSpec& spec) {
    std::vector<Segment> heap;
    std::vector<Segment> frozen;  // segments too narrow to split further
    heap.reserve(initial.size() + 2 * static_cast<std::size_t>(spec.max_subdivisions));
    for (const auto& [a, b] : initial) heap.push_back(gauss_kronrod_15(f, a, b));
    std::make_heap(heap.begin(), heap.end(), by_error);

    auto totals = [&] {
        double value = 0.0;
        double error = 0.0;
        for (const auto& s : heap) {
            value += s.value;
            error += s.error;
        }
        for (const auto& s : frozen) {
            value += s.value;
            error += s.error;
        }
        return std::pair{value, error};
    };

    int subdivisions = 0;
    auto [value, error] = totals();
    while (true) {
        if (!std::isfinite(value) || !std::isfinite(error)) {
            throw ConvergenceError("quadrature: integrand produced a non-finite value", value, error);
        }
        if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) break;
        if (heap.empty() || subdivisions >= spec.max_subdivisions) {
            throw ConvergenceError("quadrature: tolerance not reached after " + std::to_string(subdivisions) +
                                       " subdivisions (estimate " + std::to_string(value) + ", error bound " +
                                       std::to_string(error) + ")",
                                   value, error);
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            frozen.push_back(worst);
            continue;
        }
        const Segment left = gauss_kronrod_15(f, worst.a, mid);
        const Segment right = gauss_kronrod_15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++subdivisions;
        if (subdivisions % 64 == 0) std::tie(value, error) = totals();
    }
    std::tie(value, error) = totals();
    return {value, error, subdivisions};
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    if (!(endpoint_singularity_order >= 0.0 && endpoint_singularity_order < 1.0)) {
        throw DomainError("QuadratureSpec: endpoint_singularity_order must lie in [0, 1)");
    }
}

QuadratureResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate_finite: limits must be finite");
    if (a == b) return {};
    if (a > b) {
        auto r = adaptive(f, {{b, a}}, spec);
        r.value = -r.value;
        return r;
    }
    return adaptive(f, {{a, b}}, spec);
}

QuadratureResult integrate_semi_infinite_offset(const std::function<double(double)>& g,
                                                const QuadratureSpec& spec) {
    spec.validate();
    const double power = 1.0 / (1.0 - spec.endpoint_singularity_order);
    // w in (0, 1] covers v in (0, 1]; w in [1, 2) covers v = 1/(2 - w) in [1, inf).
    auto mapped = [&](double w) {
        double v = w;
        double jacobian = 1.0;
        if (w > 1.0) {
            const double t = 2.0 - w;
            v = 1.0 / t;
            jacobian = v * v;
        }
        const double offset = std::pow(v, power);
        if (!std::isfinite(offset)) return 0.0;
        const double gv = g(offset);
        if (gv == 0.0) return 0.0;
        return gv * power * std::pow(v, power - 1.0) * jacobian;
    };
    return adaptive(mapped, {{0.0, 1.0}, {1.0, 2.0}}, spec);
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double lower,
                                         const QuadratureSpec& spec) {
    if (!std::isfinite(lower)) throw DomainError("integrate_semi_infinite: lower limit must be finite");
    return integrate_semi_infinite_offset([&](double offset) { return f(lower + offset); }, spec);
}

}  // namespace fpclab::numerics
