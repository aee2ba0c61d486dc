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

#include <doctest.h>

#include <cmath>

#include "analytic/bounds.hpp"
#include "common/errors.hpp"
#include "numerics/special.hpp"
#include "optimize/optimize.hpp"
#include "test_support.hpp"

using namespace fpclab;
using namespace fpclab::optimize;
using fading::FadingModel;
using fpclab::test::rel_err;

namespace {

NetworkParams noise_free(double alpha = 3.0) {
    NetworkParams p;
    p.alpha = alpha;
    p.eta = 0.0;
    return p;
}

std::vector<double> unit_grid(int n) {
    std::vector<double> g;
    for (int i = 0; i <= n; ++i) g.push_back(static_cast<double>(i) / n);
    return g;
}

}  // namespace

TEST_SUITE("optimize") {

TEST_CASE("names round-trip") {
    for (Method m : {Method::Simulated, Method::LowerBound, Method::Jensen}) {
        CHECK(method_from_string(to_string(m)) == m);
    }
    for (SweepKind k : {SweepKind::VsS, SweepKind::VsAlpha, SweepKind::VsSnr, SweepKind::VsBeta, SweepKind::VsLambda,
                        SweepKind::LossCurve}) {
        CHECK(sweep_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(method_from_string("exact"), DomainError);
    CHECK_THROWS_AS(sweep_kind_from_string("vs_d"), DomainError);
}

TEST_CASE("objective spec validation") {
    ObjectiveSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.s_lo = 0.9;
    spec.s_hi = 0.1;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = {};
    spec.grid_step = 0.0;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = {};
    spec.s_hi = 1.5;
    CHECK_THROWS_AS(spec.validate(), DomainError);
}

TEST_CASE("noise-free jensen optimum sits at one half") {
    ObjectiveSpec spec;
    for (double alpha : {2.1, 3.0, 4.0}) {
        const auto opt = optimal_exponent(spec, noise_free(alpha), FadingModel::rayleigh());
        CAPTURE(alpha);
        CHECK(std::abs(opt.s_star - 0.5) <= 1e-3);
        CHECK_FALSE(opt.flat);
        CHECK(opt.q_star <= opt.grid.front().q);
        CHECK(opt.q_star <= opt.grid.back().q);
    }
    // the same holds for any fading law with finite moments
    const auto clamped = optimal_exponent(spec, noise_free(), FadingModel::clamped_rayleigh(1e-2));
    CHECK(std::abs(clamped.s_star - 0.5) <= spec.grid_step);
}

TEST_CASE("divergent exponents are clipped from the range") {
    ObjectiveSpec spec;
    const auto opt = optimal_exponent(spec, noise_free(2.1), FadingModel::rayleigh());
    CHECK(opt.clipped_lo);
    CHECK_FALSE(opt.clipped_hi);
    CHECK(opt.range_lo > spec.s_lo);
    CHECK(opt.range_hi == doctest::Approx(spec.s_hi));
    for (const auto& e : opt.grid) CHECK(std::isfinite(e.q));

    const auto full = optimal_exponent(spec, noise_free(3.0), FadingModel::rayleigh());
    CHECK_FALSE(full.clipped_lo);
    CHECK(full.range_lo == doctest::Approx(spec.s_lo));
}

TEST_CASE("deterministic fading gives a flat objective") {
    ObjectiveSpec spec;
    const auto opt = optimal_exponent(spec, noise_free(), FadingModel::deterministic());
    CHECK(opt.flat);
    CHECK(opt.s_star == doctest::Approx(0.5 * (spec.s_lo + spec.s_hi)));
}

TEST_CASE("objective evaluation") {
    ObjectiveSpec spec;
    const NetworkParams p;
    const auto e = evaluate_objective(spec, p, FadingModel::rayleigh(), 0.5);
    CHECK(rel_err(e.q, 0.053356074099318733) < 1e-8);
    CHECK(e.noise > 0.0);
    spec.method = Method::LowerBound;
    CHECK(rel_err(evaluate_objective(spec, p, FadingModel::rayleigh(), 0.5).q, 0.052135121044758733) < 1e-8);
    spec.method = Method::Simulated;
    spec.sim.n_trials = 2000;
    const auto sim = evaluate_objective(spec, p, FadingModel::rayleigh(), 0.5);
    CHECK(sim.noise == doctest::Approx(std::sqrt(sim.q * (1.0 - sim.q) / 2000.0)));
}

TEST_CASE("robustness band") {
    ObjectiveSpec spec;
    const NetworkParams p = noise_free();
    const auto f = FadingModel::rayleigh();
    const auto opt = optimal_exponent(spec, p, f);

    const auto zero = robustness_band(spec, p, f, opt, 0.0);
    CHECK(zero.s_lo == opt.s_star);
    CHECK(zero.s_hi == opt.s_star);

    const auto one = robustness_band(spec, p, f, opt, 1.0);
    const auto ten = robustness_band(spec, p, f, opt, 10.0);
    CHECK(one.s_lo < opt.s_star);
    CHECK(one.s_hi > opt.s_star);
    CHECK(std::abs(one.s_lo - (1.0 - one.s_hi)) < 1e-3);
    CHECK(std::abs(ten.s_lo - (1.0 - ten.s_hi)) < 1e-3);
    CHECK(ten.s_lo <= one.s_lo);
    CHECK(ten.s_hi >= one.s_hi);
    for (double s : {one.s_lo, one.s_hi}) {
        const double q = evaluate_objective(spec, p, f, s).q;
        CHECK(rel_err(q, 1.01 * opt.q_star) < 1e-4);
    }
    const auto fresh = robustness_band(spec, p, f, 1.0);
    CHECK(fresh.s_lo == doctest::Approx(one.s_lo));
    CHECK_THROWS_AS(robustness_band(spec, p, f, opt, -1.0), DomainError);
}

TEST_CASE("convexity witness") {
    for (double delta : {0.4, 2.0 / 3.0, 0.9}) {
        for (const auto& f : {FadingModel::rayleigh(), FadingModel::clamped_rayleigh(1e-3)}) {
            const auto rep = convexity_witness(f, delta, unit_grid(10));
            CAPTURE(delta);
            CAPTURE(f.name());
            CHECK(rep.midpoint_violations == 0);
            CHECK(rep.symmetry_residual < 1e-9 * rep.h.front());
            CHECK(std::abs(rep.derivative_at_half) < 1e-6);
            CHECK(rep.s.size() == 11);
        }
    }
    const double delta = 2.0 / 3.0;
    const double edge = numerics::gamma_fn(1.0 - delta);
    CHECK(rel_err(h_function(FadingModel::rayleigh(), delta, 0.0), edge) < 1e-12);
    CHECK(rel_err(h_function(FadingModel::rayleigh(), delta, 1.0), edge) < 1e-12);
    CHECK(rel_err(h_function(FadingModel::rayleigh(), delta, 0.5), std::pow(numerics::gamma_fn(1.0 - delta / 2), 2)) <
          1e-12);
    CHECK(h_function(FadingModel::deterministic(), delta, 0.3) == 1.0);

    // constant h has no strict violations
    const auto det = convexity_witness(FadingModel::deterministic(), delta, unit_grid(4));
    CHECK(det.midpoint_violations == 0);
}

TEST_CASE("loss curve sweep") {
    SweepRequest req;
    req.kind = SweepKind::LossCurve;
    req.values = {4.0, 2.1, 3.0, 3.0};
    req.s_grid = unit_grid(100);
    const auto res = sweep(req);
    CHECK(res.error_count() == 0);
    REQUIRE(res.rows.size() == 3 * 101);
    CHECK(res.rows.front().param_value == 2.1);
    CHECK(res.rows.back().param_value == 4.0);
    for (std::size_t a = 0; a < 3; ++a) {
        std::size_t best = 0;
        for (std::size_t i = 0; i <= 100; ++i) {
            if (res.rows[a * 101 + i].loss_factor > res.rows[a * 101 + best].loss_factor) best = i;
        }
        CHECK(best == 50);
    }
    // constant power loses the most at small pathloss exponents
    CHECK(res.rows[0].loss_factor < res.rows[101].loss_factor);
    CHECK(res.rows[101].loss_factor < res.rows[202].loss_factor);
}

TEST_CASE("analytic sweeps") {
    SweepRequest req;
    req.kind = SweepKind::VsS;
    req.values = {0.0, 0.5, 1.0};
    req.simulate = false;
    auto res = sweep(req);
    REQUIRE(res.rows.size() == 3);
    CHECK(rel_err(res.rows[1].q_lb, 0.052135121044758733) < 1e-8);
    CHECK(rel_err(res.rows[1].q_jensen, 0.053356074099318733) < 1e-8);
    CHECK(std::isnan(res.rows[1].q_sim));
    // s = 1 needs E[H^-1], which diverges for Rayleigh fading
    CHECK_FALSE(res.rows[2].error.empty());
    CHECK(res.error_count() == 1);

    req.kind = SweepKind::VsLambda;
    req.values = {1e-5, 1e-4};
    req.objective.method = Method::Jensen;
    res = sweep(req);
    REQUIRE(res.rows.size() == 2);
    for (const auto& row : res.rows) {
        CHECK(row.error.empty());
        CHECK(row.s_lo10 <= row.s_lo1);
        CHECK(row.s_lo1 <= row.s);
        CHECK(row.s <= row.s_hi1);
        CHECK(row.s_hi1 <= row.s_hi10);
        CHECK(row.q_jensen == doctest::Approx(row.q_star));
    }
    CHECK(res.rows[0].q_star < res.rows[1].q_star);

    req.kind = SweepKind::VsSnr;
    req.values = {10.0, 30.0};
    res = sweep(req);
    CHECK(res.unit == "dB");
    CHECK(res.rows[0].q_star > res.rows[1].q_star);
}

TEST_CASE("simulated vs_s sweep uses common random numbers") {
    SweepRequest req;
    req.kind = SweepKind::VsS;
    req.values = {0.0, 0.5};
    req.objective.sim.n_trials = 4000;
    req.objective.sim.truncation_rel_tol = 0.01;
    const auto a = sweep(req);
    const auto b = sweep(req);
    REQUIRE(a.rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a.rows[i].q_sim == b.rows[i].q_sim);
        CHECK(a.rows[i].std_err > 0.0);
    }
}

}  // TEST_SUITE
