#include "opamech/steady_state.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "opamech/errors.hpp"

namespace opamech {

namespace {

// Scale against which a vanishing steady-state denominator is detected.
double denominator_scale(double kappa, double delta, double gain) {
    return std::max({std::abs(kappa), std::abs(delta), 2.0 * std::abs(gain)});
}

} // namespace

std::complex<double> steady_amplitude_closed_form(double eps, double kappa,
                                                  double delta, double gain,
                                                  double phase) {
    const std::complex<double> den(kappa - 2.0 * gain * std::cos(phase),
                                   delta - 2.0 * gain * std::sin(phase));
    const double scale = denominator_scale(kappa, delta, gain);
    if (!(std::abs(den) > 1.0e-12 * scale)) {
        std::ostringstream msg;
        msg << "steady-state denominator vanishes (pump at threshold): |den|="
            << std::abs(den) << " at kappa=" << kappa << ", delta=" << delta
            << ", gain=" << gain << ", phase=" << phase;
        throw ThresholdError(msg.str());
    }
    return eps / den;
}

std::complex<double> steady_amplitude_exact(double eps, double kappa,
                                            double delta, double gain,
                                            double phase) {
    const double den = kappa * kappa + delta * delta - 4.0 * gain * gain;
    const double scale = denominator_scale(kappa, delta, gain);
    if (!(std::abs(den) > 1.0e-12 * scale * scale)) {
        std::ostringstream msg;
        msg << "parametric threshold reached: kappa^2 + delta^2 - 4 gain^2 = "
            << den << " at kappa=" << kappa << ", delta=" << delta
            << ", gain=" << gain;
        throw ThresholdError(msg.str());
    }
    const std::complex<double> num =
        std::complex<double>(kappa, -delta) +
        2.0 * gain * std::polar(1.0, phase);
    return eps * num / den;
}

namespace {

std::complex<double> amplitude(AmplitudeModel model, double eps, double kappa,
                               double delta, double gain, double phase) {
    if (model == AmplitudeModel::Exact) {
        return steady_amplitude_exact(eps, kappa, delta, gain, phase);
    }
    return steady_amplitude_closed_form(eps, kappa, delta, gain, phase);
}

} // namespace

SteadyState solve_steady_state(const PhysicalParams& params,
                               const DerivedParams& derived,
                               const SteadyStateOptions& options) {
    if (!(options.damping > 0.0) || !(options.damping <= 1.0)) {
        throw ValidationError("fixed-point damping must lie in (0, 1]");
    }
    if (options.max_iterations < 1) {
        throw ValidationError("max_iterations must be at least 1");
    }

    SteadyState s;
    const double G = params.opa_gain;
    const double th = params.opa_phase;

    auto displacement = [&](const std::complex<double>& a1,
                            const std::complex<double>& a2) {
        return (derived.g_1 * std::norm(a1) + derived.g_2 * std::norm(a2)) /
               params.omega_m;
    };

    if (params.detuning_mode == DetuningMode::Effective) {
        s.delta_1 = params.detuning_1;
        s.delta_2 = params.detuning_2;
        s.alpha_1 = amplitude(options.model, derived.eps_1, derived.kappa,
                              s.delta_1, G, th);
        s.alpha_2 = amplitude(options.model, derived.eps_2, derived.kappa,
                              s.delta_2, G, th);
        s.q_s = displacement(s.alpha_1, s.alpha_2);
    } else {
        // Damped fixed-point iteration on the static displacement: the
        // radiation-pressure shift moves the detunings, which move the
        // amplitudes, which move the displacement.
        double q = 0.0;
        bool converged = false;
        for (int it = 0; it < options.max_iterations; ++it) {
            const double d1 = params.detuning_1 - derived.g_1 * q;
            const double d2 = params.detuning_2 - derived.g_2 * q;
            const std::complex<double> a1 = amplitude(
                options.model, derived.eps_1, derived.kappa, d1, G, th);
            const std::complex<double> a2 = amplitude(
                options.model, derived.eps_2, derived.kappa, d2, G, th);
            const double target = displacement(a1, a2);
            const double q_new =
                (1.0 - options.damping) * q + options.damping * target;
            const double tol =
                5.0e-13 * std::max(1.0, params.omega_m * std::abs(q_new));
            const bool settled = params.omega_m * std::abs(q_new - q) <= tol;
            q = q_new;
            if (settled) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            std::ostringstream msg;
            msg << "radiation-pressure fixed point did not converge within "
                << options.max_iterations
                << " iterations (possible bistability)";
            throw ConvergenceError(msg.str());
        }
        s.q_s = q;
        s.delta_1 = params.detuning_1 - derived.g_1 * q;
        s.delta_2 = params.detuning_2 - derived.g_2 * q;
        s.alpha_1 = amplitude(options.model, derived.eps_1, derived.kappa,
                              s.delta_1, G, th);
        s.alpha_2 = amplitude(options.model, derived.eps_2, derived.kappa,
                              s.delta_2, G, th);
    }

    s.p_s = 0.0;
    s.coupling_1 = std::sqrt(2.0) * derived.g_1 * std::abs(s.alpha_1);
    s.coupling_2 = std::sqrt(2.0) * derived.g_2 * std::abs(s.alpha_2);
    return s;
}

} // namespace opamech
