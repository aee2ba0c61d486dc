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

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "analytic/network.hpp"
#include "fading/fading.hpp"

namespace fpclab::optimize {

using analytic::NetworkParams;

enum class Method { Simulated, LowerBound, Jensen };

std::string to_string(Method method);
/// Accepts "simulated", "lower_bound", "jensen"; throws DomainError otherwise.
Method method_from_string(const std::string& name);

struct SimSettings {
    std::uint64_t n_trials = 200000;
    std::uint64_t seed = 1;
    double truncation_rel_tol = 1e-3;
    double min_radius_factor = 10.0;
};

struct ObjectiveSpec {
    Method method = Method::Jensen;
    double s_lo = -0.25;
    double s_hi = 0.95;
    double grid_step = 0.01;
    double refine_tol = 1e-4;  // golden-section and band tolerance, analytic methods
    SimSettings sim;

    void validate() const;
};

/// One objective value and its noise: the Monte-Carlo standard error, or the
/// quadrature error (at least a few ulps) for the analytic methods.
struct Evaluation {
    double s;
    double q;
    double noise;
};

Evaluation evaluate_objective(const ObjectiveSpec& spec, const NetworkParams& params,
                              const fading::FadingModel& fading, double s);

struct Optimum {
    double s_star = 0.0;
    double q_star = 0.0;
    /// max - min over the grid is below twice the evaluation noise; s_star is
    /// then the midpoint of the usable range.
    bool flat = false;
    /// Usable range after dropping grid points where a moment diverges.
    double range_lo = 0.0;
    double range_hi = 0.0;
    bool clipped_lo = false;
    bool clipped_hi = false;
    std::vector<Evaluation> grid;  // usable points only, ascending in s
};

/// Grid scan over [s_lo, s_hi], then golden-section refinement around the
/// best grid point for the analytic methods. The simulated objective uses the
/// same seed at every s and stays on the grid.
Optimum optimal_exponent(const ObjectiveSpec& spec, const NetworkParams& params, const fading::FadingModel& fading);

struct RobustnessBand {
    double s_star = 0.0;
    double q_star = 0.0;
    double s_lo = 0.0;
    double s_hi = 0.0;
    double delta_pct = 0.0;
    bool clipped_lo = false;  // no crossing below s_star inside the usable range
    bool clipped_hi = false;
};

/// Interval around s_star where the objective stays within (1 + delta_pct/100) q_star.
RobustnessBand robustness_band(const ObjectiveSpec& spec, const NetworkParams& params,
                               const fading::FadingModel& fading, double delta_pct);
/// Same, reusing an already computed optimum.
RobustnessBand robustness_band(const ObjectiveSpec& spec, const NetworkParams& params,
                               const fading::FadingModel& fading, const Optimum& optimum, double delta_pct);

/// h(s) = E[X^-s] E[X^(s-1)] with X = H^delta.
double h_function(const fading::FadingModel& fading, double delta, double s);

struct ConvexityReport {
    std::vector<double> s;
    std::vector<double> h;
    std::size_t midpoint_violations = 0;
    double symmetry_residual = 0.0;     // max |h(s) - h(1 - s)| over the grid
    double derivative_at_half = 0.0;    // central difference
};

ConvexityReport convexity_witness(const fading::FadingModel& fading, double delta, std::vector<double> grid,
                                  double tol = 1e-12);

enum class SweepKind { VsS, VsAlpha, VsSnr, VsBeta, VsLambda, LossCurve };

std::string to_string(SweepKind kind);
SweepKind sweep_kind_from_string(const std::string& name);

struct SweepRequest {
    SweepKind kind = SweepKind::VsS;
    NetworkParams base;
    fading::FadingModel fading = fading::FadingModel::rayleigh();
    /// vs_s: exponents. loss_curve: pathloss exponents. vs_snr, vs_beta: dB.
    /// vs_alpha (SNR held fixed), vs_lambda: linear.
    std::vector<double> values;
    /// Exponent grid of loss_curve.
    std::vector<double> s_grid;
    /// Also run Monte-Carlo in vs_s.
    bool simulate = true;
    /// Objective of the optimal-exponent sweeps; its sim settings also drive vs_s.
    ObjectiveSpec objective;
};

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

/// Cells that do not apply to the sweep kind, or failed, hold kMissing.
struct SweepRow {
    double param_value = 0.0;
    double s = kMissing;
    double q_sim = kMissing;
    double std_err = kMissing;
    double q_lb = kMissing;
    double q_jensen = kMissing;
    double loss_factor = kMissing;
    double q_star = kMissing;
    double s_lo1 = kMissing;
    double s_hi1 = kMissing;
    double s_lo10 = kMissing;
    double s_hi10 = kMissing;
    bool flat = false;
    bool clipped = false;
    std::string error;  // empty when every cell evaluated
};

struct SweepResult {
    SweepKind kind = SweepKind::VsS;
    std::string param_name;
    std::string unit;
    std::vector<SweepRow> rows;

    std::size_t error_count() const;
};

/// Rows are ordered by ascending value (then s for loss_curve). A failing
/// cell records its message in the row and the sweep continues.
SweepResult sweep(const SweepRequest& request);

}  // namespace fpclab::optimize
