#pragma once

#include <Eigen/Dense>

#include "opamech/params.hpp"
#include "opamech/steady_state.hpp"

namespace opamech {

using Matrix6 = Eigen::Matrix<double, 6, 6>;

// Drift and diffusion matrices of the linearized quantum Langevin equations
// together with the operating point they were built from. Quadrature
// ordering is fixed project-wide as (q, p, X1, Y1, X2, Y2); vacuum noise
// variance is 1/2.
struct LinearModel {
    Matrix6 drift;
    Matrix6 diffusion;
    SteadyState steady;
    DerivedParams derived;
};

// Assembles the drift matrix from the operating point, pump gain/phase, and
// the mechanical/optical rates. trace = -gamma_m - 4 kappa identically.
Matrix6 build_drift(const SteadyState& steady, double kappa, double gain,
                    double phase, double omega_m, double gamma_m);

// Diagonal diffusion matrix diag(0, gamma_m (2 n_bar + 1), kappa, kappa,
// kappa, kappa) in the vacuum-variance-1/2 convention.
Matrix6 build_diffusion(double kappa, double gamma_m, double n_bar);

// Full pipeline convenience: drift + diffusion for a solved operating point.
LinearModel build_linear_model(const PhysicalParams& params,
                               const DerivedParams& derived,
                               const SteadyState& steady);

// Tolerance band for stability decisions: 1e-9 * max|A_ij|.
double stability_margin(const Eigen::MatrixXd& drift);

// Largest real part of the eigenvalues. The matrix is normalized by its
// largest entry before the eigensolve; ConvergenceError if the iteration
// fails (a point is never silently declared stable).
double spectral_abscissa(const Eigen::MatrixXd& drift);

// True iff spectral_abscissa(A) < -stability_margin(A).
bool is_stable(const Eigen::MatrixXd& drift);

// Independent stability test: characteristic polynomial via the
// Faddeev-LeVerrier recurrence, then the Routh table first-column criterion.
// Agrees with is_stable away from the margin band.
bool routh_hurwitz_stable(const Eigen::MatrixXd& drift);

} // namespace opamech
