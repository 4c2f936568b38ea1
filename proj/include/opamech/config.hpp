#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opamech/experiments.hpp"

namespace opamech {

// Fully resolved run configuration: physical parameters plus sweep grids and
// solver knobs. Field defaults reproduce the reference operating point
// (including a pump gain of 5.6 kappa, which PhysicalParams alone leaves at
// zero).
struct RunConfig {
    PhysicalParams params;
    AmplitudeModel model = AmplitudeModel::ClosedForm;
    double fixed_point_damping = 0.5;

    double theta_min = 0.0;
    double theta_max = std::numbers::pi;
    int theta_points = 201;

    double gain_min_in_kappa = 0.0;
    double gain_max_in_kappa = 7.0;
    int gain_points = 141;

    double temp_min = 5.0e-3;
    double temp_max = 2.0;
    int temp_points = 25;

    double opt_gain_lo_in_kappa = 0.0;
    double opt_gain_hi_in_kappa = 7.0;

    std::optional<std::string> output_path;

    std::vector<double> theta_grid() const;
    std::vector<double> gain_grid(double kappa) const;  // rad/s values
    std::vector<double> temperature_grid() const;       // log-spaced
    PipelineOptions pipeline_options() const;
};

// Parses a flat JSON object of snake_case keys into a RunConfig. Every key is
// optional; unknown keys, wrong types, out-of-range values, and the
// opa_gain_hz / opa_gain_in_kappa mutual exclusion are rejected with
// field-precise ValidationError messages. Keys ending in _hz are ordinary
// frequencies converted to angular units on load. An empty or all-whitespace
// string yields the defaults.
RunConfig parse_config(const std::string& text);

} // namespace opamech
