#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opamech/params.hpp"
#include "opamech/steady_state.hpp"

namespace opamech {

// Knobs shared by every sweep/optimization driver.
struct PipelineOptions {
    AmplitudeModel model = AmplitudeModel::ClosedForm;
    double fixed_point_damping = 0.5;
    int threads = 0;  // 0 = hardware concurrency
};

// Result of evaluating the full pipeline at one parameter point. Optional
// fields are present iff the point is stable; a failed point carries the
// error message instead of aborting the sweep it belongs to.
struct SweepRecord {
    double sweep_value = 0.0;
    bool stable = false;
    std::optional<double> E_N;
    std::optional<double> nu_minus_tilde;
    std::optional<double> ratio_mode1;
    std::optional<double> ratio_mode2;
    std::optional<double> lyapunov_residual;
    double spectral_abscissa = 0.0;  // NaN when the pipeline failed early
    std::optional<std::string> error;
};

// Runs validate -> derive -> steady state -> drift/diffusion -> stability ->
// covariance -> entanglement for a single parameter set. Never throws for
// per-point physics failures; those are recorded in the result.
SweepRecord evaluate_point(const PhysicalParams& params,
                           const PipelineOptions& options = {});

// Evaluates the pipeline over a grid of pump phases (rad). The grid must be
// nonempty and strictly increasing. Points are computed in parallel; record
// order always matches grid order and results are independent of the thread
// count.
std::vector<SweepRecord> sweep_theta(const PhysicalParams& base,
                                     const std::vector<double>& grid,
                                     const PipelineOptions& options = {});

// Same over a grid of pump gains (rad/s, each >= 0).
std::vector<SweepRecord> sweep_gain(const PhysicalParams& base,
                                    const std::vector<double>& grid,
                                    const PipelineOptions& options = {});

// Gain sweep focused on the squeezing-ratio columns of the records.
std::vector<SweepRecord> sweep_ratios(const PhysicalParams& base,
                                      const std::vector<double>& grid,
                                      const PipelineOptions& options = {});

// Outcome of maximizing E_N over the pump gain at fixed temperature.
struct OptimalGainResult {
    double temperature = 0.0;      // K
    double gain_opt = 0.0;         // rad/s
    double gain_opt_in_kappa = 0.0;
    double E_N_opt = 0.0;
    double bracket_lo = 0.0;       // coarse bracket refined by golden section
    double bracket_hi = 0.0;
    double baseline_E_N = 0.0;     // E_N at zero gain (NaN if unstable there)
    std::optional<double> enhancement_percent;  // absent if baseline invalid
    bool boundary_maximum = false; // optimum pinned to a search bound
    std::optional<std::string> error;
};

// Maximizes E_N over gain in [gain_lo, gain_hi]: coarse grid at step
// kappa / 20, then golden-section refinement of the bracketing interval to an
// absolute tolerance of 1e-3 * kappa. Unstable points count as -infinity;
// NoStablePointError if the whole range is unstable.
OptimalGainResult optimal_gain(const PhysicalParams& base, double gain_lo,
                               double gain_hi,
                               const PipelineOptions& options = {});

struct TemperatureScan {
    std::vector<OptimalGainResult> results;
    // Number of adjacent temperature pairs where the optimal gain increased,
    // against the expected trend of decreasing with temperature.
    int gain_monotonicity_violations = 0;
};

// Runs optimal_gain at each temperature (nondecreasing, all > 0).
TemperatureScan optimal_gain_vs_temperature(const PhysicalParams& base,
                                            const std::vector<double>& temps,
                                            double gain_lo, double gain_hi,
                                            const PipelineOptions& options = {});

// Golden-section maximization of a unimodal function on [lo, hi]; returns the
// midpoint of the final bracket once it is narrower than tol.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol);

// Uniform grid of n points on [lo, hi] (n >= 1; endpoints exact).
std::vector<double> linspace(double lo, double hi, int n);

// Logarithmically spaced grid of n points on [lo, hi] (lo, hi > 0).
std::vector<double> log_spaced(double lo, double hi, int n);

} // namespace opamech
