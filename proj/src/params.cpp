#include "opamech/params.hpp"

#include <cmath>
#include <numbers>

#include "opamech/constants.hpp"
#include "opamech/errors.hpp"

namespace opamech {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw ValidationError(message);
}

} // namespace

void PhysicalParams::validate() const {
    require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
    require(std::isfinite(omega_m) && omega_m > 0.0,
            "omega_m must be positive");
    require(std::isfinite(gamma_m) && gamma_m > 0.0,
            "gamma_m must be positive");
    require(std::isfinite(cavity_length) && cavity_length > 0.0,
            "cavity_length must be positive");
    require(std::isfinite(finesse) && finesse > 0.0,
            "finesse must be positive");
    require(std::isfinite(wavelength_1) && wavelength_1 > 0.0,
            "wavelength_1 must be positive");
    require(std::isfinite(wavelength_2) && wavelength_2 > 0.0,
            "wavelength_2 must be positive");
    require(std::isfinite(power_1) && power_1 >= 0.0,
            "power_1 must be nonnegative");
    require(std::isfinite(power_2) && power_2 >= 0.0,
            "power_2 must be nonnegative");
    require(std::isfinite(detuning_1), "detuning_1 must be finite");
    require(std::isfinite(detuning_2), "detuning_2 must be finite");
    require(std::isfinite(opa_gain) && opa_gain >= 0.0,
            "opa_gain must be nonnegative");
    require(std::isfinite(opa_phase), "opa_phase must be finite");
    require(std::isfinite(temperature) && temperature >= 0.0,
            "temperature must be nonnegative");
}

std::vector<std::string> PhysicalParams::warnings() const {
    std::vector<std::string> out;
    if (gamma_m > 0.0 && omega_m / gamma_m < 100.0) {
        out.push_back(
            "mechanical quality factor omega_m/gamma_m below 100; the "
            "weak-damping model may be inaccurate");
    }
    return out;
}

double cavity_decay_rate(double finesse, double cavity_length) {
    if (!(finesse > 0.0) || !(cavity_length > 0.0)) {
        throw ValidationError(
            "cavity_decay_rate requires positive finesse and length");
    }
    return std::numbers::pi * constants::speed_of_light /
           (2.0 * finesse * cavity_length);
}

double thermal_occupation(double omega_m, double temperature) {
    if (!(omega_m > 0.0)) {
        throw ValidationError("thermal_occupation requires omega_m > 0");
    }
    if (!(temperature >= 0.0)) {
        throw ValidationError("thermal_occupation requires temperature >= 0");
    }
    if (temperature == 0.0) return 0.0;
    const double x =
        constants::hbar * omega_m / (constants::boltzmann * temperature);
    // expm1 keeps precision in the high-temperature limit; at very low
    // temperature the exponential overflows to +inf and the occupation
    // correctly underflows to zero.
    return 1.0 / std::expm1(x);
}

DerivedParams derive_constants(const PhysicalParams& params) {
    params.validate();
    DerivedParams d;
    d.kappa = cavity_decay_rate(params.finesse, params.cavity_length);
    d.omega_L1 =
        2.0 * std::numbers::pi * constants::speed_of_light / params.wavelength_1;
    d.omega_L2 =
        2.0 * std::numbers::pi * constants::speed_of_light / params.wavelength_2;
    // In Bare mode the detunings are omega_C - omega_L offsets, fixing the
    // cavity resonances; in Effective mode the static shift is already folded
    // in, and the resonances coincide with the lasers for coupling purposes.
    if (params.detuning_mode == DetuningMode::Bare) {
        d.omega_C1 = d.omega_L1 + params.detuning_1;
        d.omega_C2 = d.omega_L2 + params.detuning_2;
    } else {
        d.omega_C1 = d.omega_L1;
        d.omega_C2 = d.omega_L2;
    }
    const double zpf =
        std::sqrt(constants::hbar / (params.mass * params.omega_m));
    d.g_1 = (d.omega_C1 / params.cavity_length) * zpf;
    d.g_2 = (d.omega_C2 / params.cavity_length) * zpf;
    d.eps_1 =
        std::sqrt(2.0 * d.kappa * params.power_1 / (constants::hbar * d.omega_L1));
    d.eps_2 =
        std::sqrt(2.0 * d.kappa * params.power_2 / (constants::hbar * d.omega_L2));
    d.n_bar = thermal_occupation(params.omega_m, params.temperature);
    d.fsr = std::numbers::pi * constants::speed_of_light / params.cavity_length;
    return d;
}

} // namespace opamech
