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

#include "simulate/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

#include "common/errors.hpp"
#include "common/threads.hpp"

namespace fpclab::sim {

namespace {

using numerics::RandomStream;

// Counts trials for which `outage(stream)` is true, in parallel over trial
// indices. Integer counts make the sum order-independent.
std::uint64_t count_events(std::uint64_t n_trials, std::uint64_t seed,
                           const std::function<bool(RandomStream&)>& outage) {
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), n_trials));
    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t count = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            RandomStream stream(seed, i);
            if (outage(stream)) ++count;
        }
        return count;
    };
    if (workers <= 1) return run_range(0, n_trials);

    std::vector<std::uint64_t> counts(workers, 0);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = n_trials * w / workers;
            const std::uint64_t end = n_trials * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] { counts[w] = run_range(begin, end); });
        }
    }
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

OutageEstimate make_estimate(std::uint64_t events, std::uint64_t n_trials, std::uint64_t seed) {
    OutageEstimate e;
    e.n_trials = n_trials;
    e.seed = seed;
    e.p_hat = static_cast<double>(events) / static_cast<double>(n_trials);
    e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n_trials));
    e.ci95_lo = std::max(0.0, e.p_hat - 1.96 * e.std_err);
    e.ci95_hi = std::min(1.0, e.p_hat + 1.96 * e.std_err);
    return e;
}

// x^-e with cheap paths for the exponents that dominate sweeps.
class NegPower {
public:
    explicit NegPower(double e) : e_(e), kind_(e == 0.0 ? 0 : e == 0.5 ? 1 : e == 1.0 ? 2 : e == 1.5 ? 3 : e == 2.0 ? 4 : 5) {}

    double operator()(double x) const {
        switch (kind_) {
            case 0: return 1.0;
            case 1: return 1.0 / std::sqrt(x);
            case 2: return 1.0 / x;
            case 3: return 1.0 / (x * std::sqrt(x));
            case 4: return 1.0 / (x * x);
            default: return std::pow(x, -e_);
        }
    }

private:
    double e_;
    int kind_;
};

// Quantities fixed for a whole simulation run.
struct TrialPlan {
    double power_scale;  // p / E[H^-s]
    double signal_pathloss;
    double radius_sq;
    double area_rate;  // pi lambda
    NegPower pathloss;  // of squared distance
    NegPower power;     // of the interferer's own channel
    double s;
    double beta;
    double eta;
};

TrialPlan make_plan(const SimConfig& cfg, double radius) {
    const auto& p = cfg.params;
    return {p.p / cfg.policy.normalizer(),
            std::pow(p.d, -p.alpha),
            radius * radius,
            std::numbers::pi * p.lambda,
            NegPower(0.5 * p.alpha),
            NegPower(cfg.policy.s()),
            cfg.policy.s(),
            p.beta,
            p.eta};
}

double sinr_of(double signal, double interference, double eta) {
    const double denom = interference + eta;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return signal / denom;
}

}  // namespace

void SimConfig::validate() const {
    params.validate();
    if (n_trials < 1) throw DomainError("n_trials must be at least 1");
    if (!(truncation_rel_tol > 0.0 && truncation_rel_tol <= 0.1)) {
        throw DomainError("truncation_rel_tol must lie in (0, 0.1]");
    }
    if (!(min_radius_factor > 0.0) || !std::isfinite(min_radius_factor)) {
        throw DomainError("min_radius_factor must be positive");
    }
}

double truncation_radius(const SimConfig& cfg) {
    cfg.validate();
    const auto& p = cfg.params;
    const double floor = cfg.min_radius_factor * p.d;
    if (p.lambda == 0.0) return floor;
    const auto& f = cfg.policy.fading();
    const double mean_mark = p.p * f.fractional_moment(1.0);  // E[P H]; the normalizer cancels
    const double mean_signal = p.p * std::pow(p.d, -p.alpha) * f.fractional_moment(1.0 - cfg.policy.s()) /
                               cfg.policy.normalizer();
    const double radius = std::pow(2.0 * std::numbers::pi * p.lambda * mean_mark /
                                       ((p.alpha - 2.0) * cfg.truncation_rel_tol * mean_signal),
                                   1.0 / (p.alpha - 2.0));
    return std::max(floor, radius);
}

Snapshot sample_snapshot(const SimConfig& cfg, RandomStream& stream, double radius) {
    const auto& fading = cfg.policy.fading();
    Snapshot snap;
    snap.h00 = fading.sample(stream);
    if (cfg.params.lambda == 0.0) return snap;
    const double area_rate = std::numbers::pi * cfg.params.lambda;
    const double radius_sq = radius * radius;
    double arrival = 0.0;
    while (true) {
        arrival += numerics::sample_exponential(stream);
        const double r2 = arrival / area_rate;
        if (r2 > radius_sq) break;
        const double h_ii = fading.sample(stream);
        const double h_i0 = fading.sample(stream);
        snap.interferers.push_back({std::sqrt(r2), h_i0, h_ii});
    }
    return snap;
}

TrialOutcome evaluate_snapshot(const NetworkParams& params, const PowerControlPolicy& policy,
                               const Snapshot& snapshot) {
    const double scale = params.p / policy.normalizer();
    const double s = policy.s();
    const double signal = scale * std::pow(snapshot.h00, 1.0 - s) * std::pow(params.d, -params.alpha);
    double interference = 0.0;
    for (const auto& i : snapshot.interferers) {
        const double power = s == 0.0 ? scale : scale * std::pow(i.h_ii, -s);
        interference += power * i.h_i0 * std::pow(i.distance * i.distance, -0.5 * params.alpha);
    }
    const double sinr = sinr_of(signal, interference, params.eta);
    return {sinr, sinr < params.beta};
}

TrialOutcome run_trial(const SimConfig& cfg, RandomStream& stream) {
    return evaluate_snapshot(cfg.params, cfg.policy, sample_snapshot(cfg, stream, truncation_radius(cfg)));
}

OutageEstimate estimate_outage(const SimConfig& cfg) {
    cfg.validate();
    const TrialPlan plan = make_plan(cfg, truncation_radius(cfg));
    const fading::FadingModel fading = cfg.policy.fading();

    // Streams the same draws as sample_snapshot + evaluate_snapshot, but stops
    // as soon as the partial interference already forces an outage.
    auto trial = [&plan, fading](RandomStream& stream) {
        const double h00 = fading.sample(stream);
        const double signal = plan.power_scale * std::pow(h00, 1.0 - plan.s) * plan.signal_pathloss;
        double interference = 0.0;
        if (sinr_of(signal, interference, plan.eta) < plan.beta) return true;
        if (plan.area_rate == 0.0) return false;
        double arrival = 0.0;
        while (true) {
            arrival += numerics::sample_exponential(stream);
            const double r2 = arrival / plan.area_rate;
            if (r2 > plan.radius_sq) break;
            const double h_ii = fading.sample(stream);
            const double h_i0 = fading.sample(stream);
            interference += plan.power_scale * plan.power(h_ii) * h_i0 * plan.pathloss(r2);
            if (sinr_of(signal, interference, plan.eta) < plan.beta) return true;
        }
        return false;
    };
    return make_estimate(count_events(cfg.n_trials, cfg.master_seed, trial), cfg.n_trials, cfg.master_seed);
}

OutageEstimate shot_noise_tail_mc(double lambda, double alpha, const fading::FadingModel& marks, double y,
                                  std::uint64_t n_trials, std::uint64_t seed, double truncation_rel_tol) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("shot_noise_tail_mc: lambda must be >= 0");
    if (!(alpha > 2.0) || !std::isfinite(alpha)) throw DomainError("shot_noise_tail_mc: alpha must exceed 2");
    if (!(y > 0.0)) throw DomainError("shot_noise_tail_mc: threshold y must be positive");
    if (n_trials < 1) throw DomainError("shot_noise_tail_mc: n_trials must be at least 1");
    if (!(truncation_rel_tol > 0.0 && truncation_rel_tol <= 0.1)) {
        throw DomainError("shot_noise_tail_mc: truncation_rel_tol must lie in (0, 0.1]");
    }
    const double mean_mark = marks.fractional_moment(1.0);
    // at least 10x the distance at which a mean mark alone reaches y
    const double floor = 10.0 * std::pow(mean_mark / y, 1.0 / alpha);
    double radius = floor;
    if (lambda > 0.0) {
        radius = std::max(floor, std::pow(2.0 * std::numbers::pi * lambda * mean_mark /
                                              ((alpha - 2.0) * truncation_rel_tol * y),
                                          1.0 / (alpha - 2.0)));
    }
    // nearest points first, so most exceedances stop after a few terms
    const double radius_sq = radius * radius;
    const double area_rate = lambda * std::numbers::pi;
    auto trial = [&](RandomStream& stream) {
        if (area_rate == 0.0) return false;
        double arrival = 0.0;
        double total = 0.0;
        for (;;) {
            arrival += numerics::sample_exponential(stream);
            const double r2 = arrival / area_rate;
            if (r2 > radius_sq) return false;
            total += marks.sample(stream) * std::pow(r2, -0.5 * alpha);
            if (total > y) return true;
        }
    };
    return make_estimate(count_events(n_trials, seed, trial), n_trials, seed);
}

}  // namespace fpclab::sim
