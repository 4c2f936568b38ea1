#include "opamech/config.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "json.hpp"

#include "opamech/errors.hpp"

namespace opamech {

namespace {

using nlohmann::json;

constexpr double two_pi = 2.0 * std::numbers::pi;

class ConfigReader {
public:
    explicit ConfigReader(const json& j) : j_(j) {}

    std::optional<double> number(const std::string& key) {
        if (!take(key)) return std::nullopt;
        const json& v = j_.at(key);
        if (!v.is_number()) {
            throw ValidationError("config field '" + key +
                                  "': expected a number");
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            throw ValidationError("config field '" + key +
                                  "': must be finite");
        }
        return d;
    }

    std::optional<int> integer(const std::string& key) {
        if (!take(key)) return std::nullopt;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) {
            throw ValidationError("config field '" + key +
                                  "': expected an integer");
        }
        return v.get<int>();
    }

    std::optional<std::string> string(const std::string& key) {
        if (!take(key)) return std::nullopt;
        const json& v = j_.at(key);
        if (!v.is_string()) {
            throw ValidationError("config field '" + key +
                                  "': expected a string");
        }
        return v.get<std::string>();
    }

    void reject_unknown() const {
        for (const auto& item : j_.items()) {
            if (!consumed_.count(item.key())) {
                throw ValidationError("config: unknown key '" + item.key() +
                                      "'");
            }
        }
    }

private:
    bool take(const std::string& key) {
        if (!j_.contains(key)) return false;
        consumed_.insert(key);
        return true;
    }

    const json& j_;
    std::set<std::string> consumed_;
};

double positive(double v, const char* key) {
    if (!(v > 0.0)) {
        throw ValidationError(std::string("config field '") + key +
                              "': must be positive");
    }
    return v;
}

double nonnegative(double v, const char* key) {
    if (!(v >= 0.0)) {
        throw ValidationError(std::string("config field '") + key +
                              "': must be nonnegative");
    }
    return v;
}

int at_least(int v, int bound, const char* key) {
    if (v < bound) {
        throw ValidationError(std::string("config field '") + key +
                              "': must be at least " + std::to_string(bound));
    }
    return v;
}

} // namespace

std::vector<double> RunConfig::theta_grid() const {
    return linspace(theta_min, theta_max, theta_points);
}

std::vector<double> RunConfig::gain_grid(double kappa) const {
    if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
    return linspace(gain_min_in_kappa * kappa, gain_max_in_kappa * kappa,
                    gain_points);
}

std::vector<double> RunConfig::temperature_grid() const {
    return log_spaced(temp_min, temp_max, temp_points);
}

PipelineOptions RunConfig::pipeline_options() const {
    PipelineOptions options;
    options.model = model;
    options.fixed_point_damping = fixed_point_damping;
    return options;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;

    json j;
    const bool blank =
        text.find_first_not_of(" \t\r\n") == std::string::npos;
    if (blank) {
        j = json::object();
    } else {
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ValidationError(std::string("config: JSON parse failed: ") +
                                  e.what());
        }
    }
    if (!j.is_object()) {
        throw ValidationError("config: top level must be a JSON object");
    }

    ConfigReader reader(j);

    if (auto v = reader.number("mass_kg")) {
        cfg.params.mass = positive(*v, "mass_kg");
    }
    if (auto v = reader.number("omega_m_hz")) {
        cfg.params.omega_m = two_pi * positive(*v, "omega_m_hz");
        // Sideband defaults track the mechanical frequency unless the
        // detuning keys override them below.
        cfg.params.detuning_1 = cfg.params.omega_m;
        cfg.params.detuning_2 = -cfg.params.omega_m;
    }
    if (auto v = reader.number("gamma_m_hz")) {
        cfg.params.gamma_m = two_pi * positive(*v, "gamma_m_hz");
    }
    if (auto v = reader.number("cavity_length_m")) {
        cfg.params.cavity_length = positive(*v, "cavity_length_m");
    }
    if (auto v = reader.number("finesse")) {
        cfg.params.finesse = positive(*v, "finesse");
    }
    if (auto v = reader.number("wavelength_1_m")) {
        cfg.params.wavelength_1 = positive(*v, "wavelength_1_m");
    }
    if (auto v = reader.number("wavelength_2_m")) {
        cfg.params.wavelength_2 = positive(*v, "wavelength_2_m");
    }
    if (auto v = reader.number("power_1_w")) {
        cfg.params.power_1 = nonnegative(*v, "power_1_w");
    }
    if (auto v = reader.number("power_2_w")) {
        cfg.params.power_2 = nonnegative(*v, "power_2_w");
    }
    if (auto v = reader.string("detuning_mode")) {
        if (*v == "bare") {
            cfg.params.detuning_mode = DetuningMode::Bare;
        } else if (*v == "effective") {
            cfg.params.detuning_mode = DetuningMode::Effective;
        } else {
            throw ValidationError(
                "config field 'detuning_mode': must be \"bare\" or "
                "\"effective\"");
        }
    }
    if (auto v = reader.number("detuning_1_hz")) {
        cfg.params.detuning_1 = two_pi * *v;
    }
    if (auto v = reader.number("detuning_2_hz")) {
        cfg.params.detuning_2 = two_pi * *v;
    }
    if (auto v = reader.number("opa_phase_rad")) {
        cfg.params.opa_phase = *v;
    }
    if (auto v = reader.number("temperature_k")) {
        cfg.params.temperature = nonnegative(*v, "temperature_k");
    }
    if (auto v = reader.string("amplitude_model")) {
        if (*v == "paper") {
            cfg.model = AmplitudeModel::ClosedForm;
        } else if (*v == "exact") {
            cfg.model = AmplitudeModel::Exact;
        } else {
            throw ValidationError(
                "config field 'amplitude_model': must be \"paper\" or "
                "\"exact\"");
        }
    }

    const auto gain_in_kappa = reader.number("opa_gain_in_kappa");
    const auto gain_hz = reader.number("opa_gain_hz");
    if (gain_in_kappa && gain_hz) {
        throw ValidationError(
            "config: 'opa_gain_in_kappa' and 'opa_gain_hz' are mutually "
            "exclusive");
    }
    // The gain in kappa units needs the decay rate, so the geometry fields
    // must already be resolved (they are: assignments above).
    const double kappa =
        cavity_decay_rate(cfg.params.finesse, cfg.params.cavity_length);
    if (gain_hz) {
        cfg.params.opa_gain = two_pi * nonnegative(*gain_hz, "opa_gain_hz");
    } else {
        const double in_kappa =
            gain_in_kappa
                ? nonnegative(*gain_in_kappa, "opa_gain_in_kappa")
                : 5.6;
        cfg.params.opa_gain = in_kappa * kappa;
    }

    if (auto v = reader.number("theta_min_rad")) cfg.theta_min = *v;
    if (auto v = reader.number("theta_max_rad")) cfg.theta_max = *v;
    if (auto v = reader.integer("theta_points")) {
        cfg.theta_points = at_least(*v, 1, "theta_points");
    }
    if (auto v = reader.number("gain_min_in_kappa")) {
        cfg.gain_min_in_kappa = nonnegative(*v, "gain_min_in_kappa");
    }
    if (auto v = reader.number("gain_max_in_kappa")) {
        cfg.gain_max_in_kappa = nonnegative(*v, "gain_max_in_kappa");
    }
    if (auto v = reader.integer("gain_points")) {
        cfg.gain_points = at_least(*v, 1, "gain_points");
    }
    if (auto v = reader.number("temp_min_k")) {
        cfg.temp_min = positive(*v, "temp_min_k");
    }
    if (auto v = reader.number("temp_max_k")) {
        cfg.temp_max = positive(*v, "temp_max_k");
    }
    if (auto v = reader.integer("temp_points")) {
        cfg.temp_points = at_least(*v, 1, "temp_points");
    }
    if (auto v = reader.number("optimal_gain_lo_in_kappa")) {
        cfg.opt_gain_lo_in_kappa = nonnegative(*v, "optimal_gain_lo_in_kappa");
    }
    if (auto v = reader.number("optimal_gain_hi_in_kappa")) {
        cfg.opt_gain_hi_in_kappa = nonnegative(*v, "optimal_gain_hi_in_kappa");
    }
    if (auto v = reader.number("fixed_point_damping")) {
        if (!(*v > 0.0) || !(*v <= 1.0)) {
            throw ValidationError(
                "config field 'fixed_point_damping': must lie in (0, 1]");
        }
        cfg.fixed_point_damping = *v;
    }
    if (auto v = reader.string("output_path")) {
        if (v->empty()) {
            throw ValidationError(
                "config field 'output_path': must be nonempty");
        }
        cfg.output_path = *v;
    }

    reader.reject_unknown();

    cfg.params.validate();
    if (cfg.theta_points > 1 && !(cfg.theta_max > cfg.theta_min)) {
        throw ValidationError(
            "config: theta_max_rad must exceed theta_min_rad");
    }
    if (cfg.gain_points > 1 &&
        !(cfg.gain_max_in_kappa > cfg.gain_min_in_kappa)) {
        throw ValidationError(
            "config: gain_max_in_kappa must exceed gain_min_in_kappa");
    }
    if (cfg.temp_points > 1 && !(cfg.temp_max > cfg.temp_min)) {
        throw ValidationError("config: temp_max_k must exceed temp_min_k");
    }
    if (!(cfg.opt_gain_hi_in_kappa >= cfg.opt_gain_lo_in_kappa)) {
        throw ValidationError(
            "config: optimal_gain_hi_in_kappa must be at least "
            "optimal_gain_lo_in_kappa");
    }
    return cfg;
}

} // namespace opamech
