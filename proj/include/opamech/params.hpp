#pragma once

#include <numbers>
#include <string>
#include <vector>

namespace opamech {

// How the detuning fields of PhysicalParams are interpreted.
//  - Bare: laser-cavity detunings before the static radiation-pressure shift;
//    the steady-state solver must find the shifted (effective) values
//    self-consistently.
//  - Effective: the fields already are the effective detunings entering the
//    linearized dynamics and are used verbatim.
enum class DetuningMode { Bare, Effective };

// Laboratory-level inputs of the model: a two-mode optical cavity with a
// movable end mirror and an intracavity degenerate parametric amplifier.
// Every rate, frequency, and detuning is angular (rad/s).
struct PhysicalParams {
    double mass = 5.0e-12;          // effective mirror mass, kg
    double omega_m = 2.0 * std::numbers::pi * 1.0e7;   // mechanical frequency
    double gamma_m = 2.0 * std::numbers::pi * 100.0;   // mechanical damping
    double cavity_length = 5.0e-3;  // m
    double finesse = 1.0e5;
    double wavelength_1 = 1.064e-6; // drive laser 1 wavelength, m
    double wavelength_2 = 1.064e-6; // drive laser 2 wavelength, m
    double power_1 = 0.1;           // drive laser 1 input power, W
    double power_2 = 0.08;          // drive laser 2 input power, W
    DetuningMode detuning_mode = DetuningMode::Effective;
    double detuning_1 = 2.0 * std::numbers::pi * 1.0e7;   // mode 1, rad/s
    double detuning_2 = -2.0 * std::numbers::pi * 1.0e7;  // mode 2, rad/s
    double opa_gain = 0.0;                                // G, rad/s
    double opa_phase = std::numbers::pi / 2.0;            // theta, rad
    double temperature = 0.01;                            // bath, K

    // Throws ValidationError on the first field that is out of range.
    void validate() const;

    // Non-fatal diagnostics, e.g. a mechanical quality factor low enough to
    // strain the weak-damping assumptions of the model.
    std::vector<std::string> warnings() const;
};

// Quantities derived from PhysicalParams and the pinned fundamental
// constants. All rates are angular (rad/s).
struct DerivedParams {
    double kappa = 0.0;     // cavity amplitude decay rate
    double omega_L1 = 0.0;  // laser frequencies
    double omega_L2 = 0.0;
    double omega_C1 = 0.0;  // cavity resonance frequencies
    double omega_C2 = 0.0;
    double g_1 = 0.0;       // single-photon optomechanical couplings
    double g_2 = 0.0;
    double eps_1 = 0.0;     // drive amplitudes
    double eps_2 = 0.0;
    double n_bar = 0.0;     // mean thermal phonon occupation
    double fsr = 0.0;       // free spectral range (diagnostic)
};

// kappa = pi c / (2 F L).
double cavity_decay_rate(double finesse, double cavity_length);

// Bose-Einstein occupation at the mechanical frequency; exactly 0 at T = 0.
double thermal_occupation(double omega_m, double temperature);

// Validates params and evaluates every derived quantity.
DerivedParams derive_constants(const PhysicalParams& params);

} // namespace opamech
