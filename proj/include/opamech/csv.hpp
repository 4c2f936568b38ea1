#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "opamech/experiments.hpp"

namespace opamech {

// Shortest decimal string that round-trips to the same double; empty string
// for non-finite values (rendered as empty CSV cells).
std::string format_double(double value);

// Renders sweep records with the fixed column schema
//   sweep_value,stable,E_N,nu_minus_tilde,ratio_mode1,ratio_mode2,spectral_abscissa
// Each record's sweep_value is divided by value_divisor before formatting
// (e.g. kappa, to report gains in units of kappa). Absent optional fields
// become empty cells.
std::string render_sweep_csv(const std::vector<SweepRecord>& records,
                             double value_divisor);

// Renders gain-optimization results, one row per temperature.
std::string render_optimal_gain_csv(const std::vector<OptimalGainResult>& results,
                                    double kappa);

// Writes content to path via a temporary file in the same directory followed
// by an atomic rename, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

} // namespace opamech
