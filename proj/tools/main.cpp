#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "opamech/config.hpp"
#include "opamech/csv.hpp"
#include "opamech/entanglement.hpp"
#include "opamech/errors.hpp"
#include "opamech/experiments.hpp"
#include "opamech/lyapunov.hpp"

namespace {

using nlohmann::json;
using namespace opamech;

std::string read_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw ValidationError("cannot read config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

const char* model_name(AmplitudeModel model) {
    return model == AmplitudeModel::Exact ? "exact" : "paper";
}

const char* mode_name(DetuningMode mode) {
    return mode == DetuningMode::Bare ? "bare" : "effective";
}

json params_json(const PhysicalParams& p, double kappa) {
    return json{
        {"mass_kg", p.mass},
        {"omega_m_rad_s", p.omega_m},
        {"gamma_m_rad_s", p.gamma_m},
        {"cavity_length_m", p.cavity_length},
        {"finesse", p.finesse},
        {"wavelength_1_m", p.wavelength_1},
        {"wavelength_2_m", p.wavelength_2},
        {"power_1_w", p.power_1},
        {"power_2_w", p.power_2},
        {"detuning_mode", mode_name(p.detuning_mode)},
        {"detuning_1_rad_s", p.detuning_1},
        {"detuning_2_rad_s", p.detuning_2},
        {"opa_gain_rad_s", p.opa_gain},
        {"opa_gain_in_kappa", p.opa_gain / kappa},
        {"opa_phase_rad", p.opa_phase},
        {"temperature_k", p.temperature},
    };
}

json derived_json(const DerivedParams& d) {
    return json{
        {"kappa_rad_s", d.kappa},
        {"omega_L1_rad_s", d.omega_L1},
        {"omega_L2_rad_s", d.omega_L2},
        {"omega_C1_rad_s", d.omega_C1},
        {"omega_C2_rad_s", d.omega_C2},
        {"g_1_rad_s", d.g_1},
        {"g_2_rad_s", d.g_2},
        {"eps_1_rad_s", d.eps_1},
        {"eps_2_rad_s", d.eps_2},
        {"n_bar", d.n_bar},
        {"fsr_rad_s", d.fsr},
    };
}

int count_stable(const std::vector<SweepRecord>& records) {
    int n = 0;
    for (const auto& rec : records) {
        if (rec.stable) ++n;
    }
    return n;
}

struct Outputs {
    std::string csv;
    json manifest;
};

void write_outputs(const std::string& out_path, const Outputs& outputs) {
    write_file_atomic(out_path, outputs.csv);
    json manifest = outputs.manifest;
    manifest["csv_path"] = out_path;
    write_file_atomic(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Steady-state covariance and entanglement of a two-mode "
        "optomechanical cavity with an intracavity parametric amplifier"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string model_flag;
    std::string detunings_flag;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_path, "output CSV path");
    app.add_option("--model", model_flag,
                   "amplitude convention: closed-form (paper) or exact "
                   "conjugate-coupled fixed point")
        ->check(CLI::IsMember({"paper", "exact"}));
    app.add_option("--detunings", detunings_flag,
                   "interpret detunings as bare or effective values")
        ->check(CLI::IsMember({"bare", "effective"}));

    CLI::App* cmd_point = app.add_subcommand(
        "point", "evaluate a single parameter point");
    CLI::App* cmd_theta = app.add_subcommand(
        "sweep-theta", "sweep the pump phase over a uniform grid");
    CLI::App* cmd_gain = app.add_subcommand(
        "sweep-gain", "sweep the pump gain over a uniform grid");
    CLI::App* cmd_ratios = app.add_subcommand(
        "sweep-ratios", "gain sweep reported for the squeezing-ratio columns");
    CLI::App* cmd_opt = app.add_subcommand(
        "optimal-gain", "maximize E_N over the pump gain");
    CLI::App* cmd_temp = app.add_subcommand(
        "gain-vs-temperature", "optimal gain across a temperature grid");
    for (CLI::App* sub :
         {cmd_point, cmd_theta, cmd_gain, cmd_ratios, cmd_opt, cmd_temp}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const std::string text =
            config_path.empty() ? std::string{} : read_file(config_path);
        RunConfig cfg = parse_config(text);
        if (!model_flag.empty()) {
            cfg.model = model_flag == "exact" ? AmplitudeModel::Exact
                                              : AmplitudeModel::ClosedForm;
        }
        if (!detunings_flag.empty()) {
            cfg.params.detuning_mode = detunings_flag == "bare"
                                           ? DetuningMode::Bare
                                           : DetuningMode::Effective;
        }
        for (const std::string& w : cfg.params.warnings()) {
            std::cerr << "warning: " << w << "\n";
        }

        const DerivedParams derived = derive_constants(cfg.params);
        const PipelineOptions options = cfg.pipeline_options();

        json manifest;
        manifest["amplitude_model"] = model_name(cfg.model);
        manifest["params"] = params_json(cfg.params, derived.kappa);
        manifest["derived"] = derived_json(derived);
        manifest["warnings"] = cfg.params.warnings();

        Outputs outputs;
        std::string default_out;

        if (*cmd_point) {
            SweepRecord rec = evaluate_point(cfg.params, options);
            rec.sweep_value = cfg.params.opa_gain;
            outputs.csv = render_sweep_csv({rec}, derived.kappa);
            manifest["command"] = "point";
            manifest["records"] = 1;
            manifest["stable_records"] = rec.stable ? 1 : 0;
            default_out = "point.csv";
        } else if (*cmd_theta) {
            const std::vector<double> grid = cfg.theta_grid();
            const std::vector<SweepRecord> records =
                sweep_theta(cfg.params, grid, options);
            outputs.csv = render_sweep_csv(records, 1.0);
            manifest["command"] = "sweep-theta";
            manifest["grid"] = {{"theta_min_rad", cfg.theta_min},
                                {"theta_max_rad", cfg.theta_max},
                                {"points", cfg.theta_points}};
            manifest["records"] = records.size();
            manifest["stable_records"] = count_stable(records);
            default_out = "sweep_theta.csv";
        } else if (*cmd_gain || *cmd_ratios) {
            const std::vector<double> grid = cfg.gain_grid(derived.kappa);
            const std::vector<SweepRecord> records =
                sweep_gain(cfg.params, grid, options);
            outputs.csv = render_sweep_csv(records, derived.kappa);
            manifest["command"] = *cmd_gain ? "sweep-gain" : "sweep-ratios";
            manifest["grid"] = {{"gain_min_in_kappa", cfg.gain_min_in_kappa},
                                {"gain_max_in_kappa", cfg.gain_max_in_kappa},
                                {"points", cfg.gain_points}};
            manifest["records"] = records.size();
            manifest["stable_records"] = count_stable(records);
            default_out = *cmd_gain ? "sweep_gain.csv" : "sweep_ratios.csv";
        } else if (*cmd_opt) {
            const OptimalGainResult result =
                optimal_gain(cfg.params, cfg.opt_gain_lo_in_kappa * derived.kappa,
                             cfg.opt_gain_hi_in_kappa * derived.kappa, options);
            outputs.csv = render_optimal_gain_csv({result}, derived.kappa);
            manifest["command"] = "optimal-gain";
            manifest["grid"] = {
                {"gain_lo_in_kappa", cfg.opt_gain_lo_in_kappa},
                {"gain_hi_in_kappa", cfg.opt_gain_hi_in_kappa}};
            manifest["records"] = 1;
            manifest["boundary_maximum"] = result.boundary_maximum;
            default_out = "optimal_gain.csv";
        } else {
            const std::vector<double> temps = cfg.temperature_grid();
            const TemperatureScan scan = optimal_gain_vs_temperature(
                cfg.params, temps, cfg.opt_gain_lo_in_kappa * derived.kappa,
                cfg.opt_gain_hi_in_kappa * derived.kappa, options);
            outputs.csv = render_optimal_gain_csv(scan.results, derived.kappa);
            manifest["command"] = "gain-vs-temperature";
            manifest["grid"] = {{"temp_min_k", cfg.temp_min},
                                {"temp_max_k", cfg.temp_max},
                                {"points", cfg.temp_points},
                                {"gain_lo_in_kappa", cfg.opt_gain_lo_in_kappa},
                                {"gain_hi_in_kappa", cfg.opt_gain_hi_in_kappa}};
            manifest["records"] = scan.results.size();
            manifest["gain_monotonicity_violations"] =
                scan.gain_monotonicity_violations;
            default_out = "gain_vs_temperature.csv";
        }

        std::string resolved_out = out_path;
        if (resolved_out.empty() && cfg.output_path) {
            resolved_out = *cfg.output_path;
        }
        if (resolved_out.empty()) resolved_out = default_out;

        outputs.manifest = manifest;
        write_outputs(resolved_out, outputs);
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
