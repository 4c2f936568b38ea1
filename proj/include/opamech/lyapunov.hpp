#pragma once

#include <Eigen/Dense>

namespace opamech {

// Steady-state covariance matrix of a stable linear diffusion, with the
// relative residual of the defining equation attached for diagnostics.
struct CovarianceMatrix {
    Eigen::MatrixXd V;
    double residual_norm = 0.0;  // ||A V + V A^T + D||_F / ||D||_F
};

// Solves A V + V A^T = -D by dense Kronecker vectorization with partial-pivot
// LU. Preconditions: A strictly stable (UnstableError otherwise), D symmetric
// of matching size. The system is normalized by max|A_ij| before the solve;
// the result is symmetrized, and the solve is rejected (SingularError) if the
// pre-symmetrization asymmetry exceeds 1e-9 * ||V|| or the final relative
// residual is not below 1e-8.
CovarianceMatrix solve_lyapunov(const Eigen::MatrixXd& drift,
                                const Eigen::MatrixXd& diffusion);

} // namespace opamech
