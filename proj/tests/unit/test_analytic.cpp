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
#include <numbers>
#include <random>

#include "analytic/bounds.hpp"
#include "common/errors.hpp"
#include "numerics/special.hpp"
#include "test_support.hpp"

using namespace fpclab;
using namespace fpclab::analytic;
using fading::FadingModel;
using fpclab::test::rel_err;

namespace {

NetworkParams noise_free() {
    NetworkParams p;
    p.eta = 0.0;
    return p;
}

NetworkParams with_snr(double snr) {
    NetworkParams p;
    p.set_snr(snr);
    return p;
}

const FadingModel kRayleigh = FadingModel::rayleigh();

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("network parameter validation") {
    NetworkParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.snr() == doctest::Approx(100.0).epsilon(1e-12));
    p.alpha = 2.0;
    CHECK_THROWS_WITH_AS(p.validate(), "alpha must exceed 2", DomainError);
    p = {};
    p.lambda = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    CHECK(std::isinf(noise_free().snr()));
    CHECK_THROWS_AS(PowerControlPolicy(1.2, kRayleigh), DomainError);
    CHECK_THROWS_AS(PowerControlPolicy(-0.6, kRayleigh), DomainError);
    CHECK_THROWS_AS(PowerControlPolicy(1.0, kRayleigh), DivergenceError);
}

TEST_CASE("shot-noise tail bound") {
    CHECK(shot_noise_tail_lb(0.0, 1.0, 1.0, 2.0 / 3.0) == 0.0);
    CHECK(rel_err(shot_noise_tail_lb(1e-4, 1.0, 1.0, 2.0 / 3.0), 0.00031410992250428081) < 1e-12);
    CHECK(shot_noise_tail_lb(1e-4, 1.0, 1e30, 2.0 / 3.0) < 1e-20);
    CHECK(shot_noise_tail_lb(1e-4, 1.0, 1e-30, 2.0 / 3.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(shot_noise_tail_lb(1e-4, 1.0, 0.0, 2.0 / 3.0), DomainError);
}

TEST_CASE("pathloss-only bound and density") {
    NetworkParams p;
    CHECK(rel_err(outage_lb_pathloss(p), 0.031132220661801277) < 1e-12);
    CHECK(rel_err(outage_lb_pathloss(noise_free()), 0.030927573695189361) < 1e-12);
    p.lambda = 0.0;
    CHECK(outage_lb_pathloss(p) == 0.0);
    CHECK(outage_lb_pathloss(with_snr(0.5)) == 1.0);

    NetworkParams q;
    const double lam = density_ub_pathloss(q, 0.05);
    CHECK(rel_err(lam, 0.000162181327232362) < 1e-12);
    q.lambda = lam;
    CHECK(std::abs(outage_lb_pathloss(q) - 0.05) < 1e-12);
    CHECK(density_ub_pathloss(NetworkParams{}, 1e-300) < 1e-290);
    const double lam0 = density_ub_pathloss(noise_free(), 0.05);
    CHECK(rel_err(lam0, -std::log(0.95) / (std::numbers::pi * 100.0)) < 1e-12);
    CHECK_THROWS_AS(density_ub_pathloss(with_snr(0.5), 0.05), InfeasibleError);
}

TEST_CASE("kappa") {
    const NetworkParams p;
    CHECK(rel_err(kappa(PowerControlPolicy(0.0, kRayleigh), p), p.beta / p.snr()) < 1e-15);
    CHECK(rel_err(kappa(PowerControlPolicy(0.0, kRayleigh), p), 0.01) < 1e-12);
    CHECK(rel_err(kappa(PowerControlPolicy(0.5, kRayleigh), p), 0.00031415926535897932) < 1e-12);
    CHECK(kappa(PowerControlPolicy(0.5, kRayleigh), noise_free()) == 0.0);
    CHECK_THROWS_AS(kappa(PowerControlPolicy(1.0, FadingModel::clamped_rayleigh()), p), DomainError);
}

TEST_CASE("fractional power control bounds at default parameters") {
    const NetworkParams p;
    struct Ref {
        double s, lb, jensen;
    };
    for (const Ref& r : {Ref{0.0, 0.069996707008267396, 0.082383975753057514},
                         Ref{0.25, 0.057094064225069338, 0.06241437001341858},
                         Ref{0.5, 0.052135121044758733, 0.053356074099318733},
                         Ref{0.75, 0.056894968432466678, 0.057022224303200342}}) {
        const PowerControlPolicy pol(r.s, kRayleigh);
        const auto lb = outage_lb_fpc(pol, p);
        const auto jen = outage_jensen_fpc(pol, p);
        CAPTURE(r.s);
        CHECK(rel_err(lb.value, r.lb) < 1e-8);
        CHECK(rel_err(jen.value, r.jensen) < 1e-8);
        CHECK(lb.method == BoundMethod::LowerBound);
        CHECK(jen.method == BoundMethod::JensenApprox);
        CHECK(lb.value <= jen.value);
        CHECK(lb.quadrature_error < 1e-9);
    }
}

TEST_CASE("noise-free closed forms") {
    const NetworkParams p = noise_free();
    const PowerControlPolicy pol(0.5, kRayleigh);
    CHECK(rel_err(outage_lb_fpc(pol, p).value, 0.050150267270938894) < 1e-8);
    CHECK(rel_err(outage_jensen_fpc(pol, p).value, 0.050673945937882065) < 1e-12);
    const double area = p.lambda * std::numbers::pi * p.d * p.d;
    for (double s : {0.0, 0.2, 0.5, 0.8}) {
        const double l = loss_factor_fpc(s, kRayleigh, p.delta());
        CHECK(rel_err(outage_jensen_fpc(PowerControlPolicy(s, kRayleigh), p).value, -std::expm1(-area / l)) < 1e-10);
    }
}

TEST_CASE("noise-free path agrees with the quadrature path at high snr") {
    for (double s : {0.0, 0.25, 0.5, 0.75}) {
        const PowerControlPolicy pol(s, kRayleigh);
        CAPTURE(s);
        const double lb0 = outage_lb_fpc(pol, noise_free()).value;
        const double j0 = outage_jensen_fpc(pol, noise_free()).value;
        CHECK(rel_err(outage_lb_fpc(pol, with_snr(1e12)).value, lb0) < 1e-6);
        CHECK(rel_err(outage_jensen_fpc(pol, with_snr(1e12)).value, j0) < 1e-6);
        CHECK(rel_err(outage_lb_fpc(pol, with_snr(1e6)).value, lb0) < 1e-3);
        CHECK(rel_err(outage_jensen_fpc(pol, with_snr(1e6)).value, j0) < 1e-3);
    }
}

TEST_CASE("deterministic fading collapses to the pathloss bound") {
    const auto det = FadingModel::deterministic();
    for (const NetworkParams& p : {NetworkParams{}, noise_free(), with_snr(5.0)}) {
        for (double s : {0.0, 0.3, 0.7, 1.0}) {
            const PowerControlPolicy pol(s, det);
            CAPTURE(s);
            CHECK(rel_err(outage_lb_fpc(pol, p).value, outage_lb_pathloss(p)) < 1e-10);
            CHECK(rel_err(outage_jensen_fpc(pol, p).value, outage_lb_pathloss(p)) < 1e-10);
        }
    }
}

TEST_CASE("constant power and channel inversion reductions") {
    const NetworkParams p;
    const auto lb_cp = outage_lb_cp(p, kRayleigh);
    const auto lb_fpc = outage_lb_fpc(PowerControlPolicy(0.0, kRayleigh), p);
    CHECK(lb_cp.value == lb_fpc.value);
    CHECK(outage_jensen_cp(p, kRayleigh).value == outage_jensen_fpc(PowerControlPolicy(0.0, kRayleigh), p).value);

    // constant-power Jensen equals the channel-inversion bound without noise
    const NetworkParams z = noise_free();
    const double ci = outage_lb_ci(z, kRayleigh).value;
    CHECK(rel_err(ci, 0.073161781390265764) < 1e-12);
    CHECK(rel_err(outage_jensen_cp(z, kRayleigh).value, ci) < 1e-12);
    // the s -> 1 limit of the noise-free quadrature bound
    CHECK(rel_err(outage_lb_fpc(PowerControlPolicy(1.0 - 1e-7, kRayleigh), z).value, ci) < 1e-6);

    const auto clamped = FadingModel::clamped_rayleigh(1e-4);
    const double ci_c = outage_lb_ci(p, clamped).value;
    CHECK(rel_err(ci_c, 0.075467774879050008) < 1e-9);
    CHECK(outage_lb_fpc(PowerControlPolicy(1.0, clamped), p).value == ci_c);
    CHECK_THROWS_AS(outage_lb_ci(p, kRayleigh), DivergenceError);
    CHECK_THROWS_AS(outage_lb_ci(with_snr(5.0), clamped), InfeasibleError);
}

TEST_CASE("density inversion") {
    const NetworkParams p;
    const PowerControlPolicy half(0.5, kRayleigh);
    CHECK(rel_err(density_fpc(half, p, 0.05), 9.3508643244510889e-5) < 1e-8);
    CHECK(rel_err(density_fpc(half, noise_free(), 0.05), 9.8635330581120204e-5) < 1e-12);
    const double ratio = density_fpc(half, noise_free(), 0.05) / density_ub_pathloss(noise_free(), 0.05);
    CHECK(rel_err(ratio, loss_factor_fpc(0.5, kRayleigh, p.delta())) < 1e-12);

    for (double s : {0.0, 0.25, 0.5, 0.75}) {
        const PowerControlPolicy pol(s, kRayleigh);
        double prev = 0.0;
        for (double eps : {0.01, 0.05, 0.1}) {
            NetworkParams q = p;
            q.lambda = density_fpc(pol, p, eps);
            CHECK(q.lambda > prev);
            prev = q.lambda;
            CAPTURE(s);
            CAPTURE(eps);
            CHECK(rel_err(outage_jensen_fpc(pol, q).value, eps) < 1e-10);
        }
    }
    // near-linear for tiny targets without noise
    const double tiny = density_fpc(half, noise_free(), 1e-8);
    CHECK(rel_err(tiny / 1e-8, density_fpc(half, noise_free(), 2e-8) / 2e-8) < 1e-6);
    // the noise-only floor at 10 dB and s = 0.9 is about 0.45
    CHECK_THROWS_AS(density_fpc(PowerControlPolicy(0.9, kRayleigh), with_snr(10.0), 0.05), InfeasibleError);
}

TEST_CASE("monotone in density and threshold") {
    for (double s : {0.0, 0.5, 0.9}) {
        const PowerControlPolicy pol(s, kRayleigh);
        double prev_lb = -1.0, prev_j = -1.0;
        for (double lam : {1e-5, 1e-4, 1e-3}) {
            NetworkParams p;
            p.lambda = lam;
            const double lb = outage_lb_fpc(pol, p).value, j = outage_jensen_fpc(pol, p).value;
            CHECK(lb > prev_lb);
            CHECK(j > prev_j);
            prev_lb = lb;
            prev_j = j;
        }
        prev_lb = prev_j = -1.0;
        for (double beta : {0.1, 1.0, 10.0}) {
            NetworkParams p;
            p.beta = beta;
            const double lb = outage_lb_fpc(pol, p).value, j = outage_jensen_fpc(pol, p).value;
            CHECK(lb > prev_lb);
            CHECK(j > prev_j);
            prev_lb = lb;
            prev_j = j;
        }
    }
}

TEST_CASE("loss factor") {
    const double delta = 2.0 / 3.0;
    CHECK(rel_err(loss_factor_fpc(0.0, kRayleigh, delta), 0.41349667156634404) < 1e-12);
    CHECK(rel_err(loss_factor_fpc(1.0, kRayleigh, delta), 0.41349667156634404) < 1e-12);
    CHECK(rel_err(loss_factor_fpc(0.5, kRayleigh, delta), 0.60411801120977984) < 1e-12);
    CHECK(loss_factor_fpc(0.3, FadingModel::deterministic(), delta) == 1.0);
    for (const auto& f : {kRayleigh, FadingModel::clamped_rayleigh(1e-2)}) {
        for (double s : {0.0, 0.1, 0.25, 0.4}) {
            CHECK(rel_err(loss_factor_fpc(s, f, delta), loss_factor_fpc(1.0 - s, f, delta)) < 1e-9);
            CHECK(loss_factor_fpc(s, f, delta) < 1.0);
        }
    }
    CHECK_THROWS_AS(loss_factor_fpc(0.0, kRayleigh, 1.0), DomainError);
}

TEST_CASE("capacity") {
    const NetworkParams p;
    CHECK(spectral_efficiency(1.0) == 1.0);
    CHECK(transmission_capacity(p, 0.05, 0.0) == 0.0);
    CHECK(transmission_capacity(p, 0.05, 2e-4) == doctest::Approx(2e-4 * 0.95));
    CHECK(transmission_capacity(p, 0.05, 2e-4, 3.0) == doctest::Approx(3.0 * 2e-4 * 0.95));
    const double lam = density_fpc(PowerControlPolicy(0.5, kRayleigh), p, 0.05);
    CHECK(rel_err(transmission_capacity(p, 0.05, lam), lam * 0.95 * 1.0) < 1e-15);
}

TEST_CASE("jensen value never falls below the lower bound") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ua(2.1, 5.0), ub(std::log(0.1), std::log(10.0)), us(0.0, 0.9),
        ul(std::log(1e-5), std::log(1e-3));
    for (int i = 0; i < 100; ++i) {
        NetworkParams p;
        p.alpha = ua(rng);
        p.beta = std::exp(ub(rng));
        p.lambda = std::exp(ul(rng));
        const double s = us(rng);
        if (i % 2) {
            p.eta = 0.0;
        } else {
            p.set_snr(100.0);
        }
        const PowerControlPolicy pol(s, kRayleigh);
        CAPTURE(p.alpha);
        CAPTURE(p.beta);
        CAPTURE(s);
        const auto lb = outage_lb_fpc(pol, p);
        const auto j = outage_jensen_fpc(pol, p);
        CHECK(lb.value <= j.value + 1e-8);
    }
}

}  // TEST_SUITE
