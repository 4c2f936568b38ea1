#pragma once

#include <complex>

#include "opamech/params.hpp"

namespace opamech {

// Two conventions for the classical intracavity amplitude in the presence of
// the parametric pump.
//  - ClosedForm: the pump term acts as a pure renormalization of decay and
//    detuning, alpha = eps / [(kappa - 2G cos th) + i (Delta - 2G sin th)].
//    This convention underlies the reference results and is the default
//    everywhere (CLI name "paper").
//  - Exact: exact fixed point of the conjugate-coupled mean-field equation
//    (kappa + i Delta) alpha = eps + 2 G e^{i th} conj(alpha).
enum class AmplitudeModel { ClosedForm, Exact };

// Classical operating point of the linearized model.
struct SteadyState {
    double q_s = 0.0;  // dimensionless mirror displacement
    double p_s = 0.0;  // dimensionless mirror momentum (zero in steady state)
    std::complex<double> alpha_1{0.0, 0.0};
    std::complex<double> alpha_2{0.0, 0.0};
    double delta_1 = 0.0;     // effective detunings, rad/s
    double delta_2 = 0.0;
    double coupling_1 = 0.0;  // G_i = sqrt(2) g_i |alpha_i|, rad/s
    double coupling_2 = 0.0;
};

// Closed-form amplitude. Throws ThresholdError when the renormalized
// denominator vanishes (relative to eps and kappa scales).
std::complex<double> steady_amplitude_closed_form(double eps, double kappa,
                                                  double delta, double gain,
                                                  double phase);

// Exact conjugate-coupled fixed point,
//   alpha = eps [(kappa - i Delta) + 2 G e^{i th}] / (kappa^2 + Delta^2 - 4 G^2).
// Throws ThresholdError at the parametric threshold 4 G^2 = kappa^2 + Delta^2.
std::complex<double> steady_amplitude_exact(double eps, double kappa,
                                            double delta, double gain,
                                            double phase);

struct SteadyStateOptions {
    AmplitudeModel model = AmplitudeModel::ClosedForm;
    double damping = 0.5;       // relaxation factor of the fixed-point update
    int max_iterations = 10000; // Bare mode only
};

// Computes the operating point. In Effective mode the detunings are taken
// verbatim and the amplitudes follow in one shot; in Bare mode the static
// radiation-pressure shift is found by damped fixed-point iteration on the
// mirror displacement (ConvergenceError if it fails to settle).
SteadyState solve_steady_state(const PhysicalParams& params,
                               const DerivedParams& derived,
                               const SteadyStateOptions& options = {});

} // namespace opamech
