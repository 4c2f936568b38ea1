#include "opamech/lyapunov.hpp"

#include <sstream>

#include <Eigen/LU>

#include "opamech/errors.hpp"
#include "opamech/linear_model.hpp"

namespace opamech {

CovarianceMatrix solve_lyapunov(const Eigen::MatrixXd& drift,
                                const Eigen::MatrixXd& diffusion) {
    const Eigen::Index n = drift.rows();
    if (drift.cols() != n || n == 0) {
        throw ValidationError("solve_lyapunov requires a square drift matrix");
    }
    if (diffusion.rows() != n || diffusion.cols() != n) {
        throw ValidationError(
            "solve_lyapunov requires a diffusion matrix matching the drift");
    }
    if (!diffusion.allFinite()) {
        throw ValidationError("diffusion matrix has non-finite entries");
    }
    if (!is_stable(drift)) {
        std::ostringstream msg;
        msg << "drift matrix is not strictly stable (spectral abscissa "
            << spectral_abscissa(drift) << "); no stationary covariance exists";
        throw UnstableError(msg.str());
    }

    // Normalize by the largest drift entry: the solution V is invariant under
    // (A, D) -> (A/s, D/s) and the scaled system is far better conditioned.
    const double scale = drift.cwiseAbs().maxCoeff();
    const Eigen::MatrixXd As = drift / scale;
    const Eigen::MatrixXd Ds = diffusion / scale;

    // vec(A V + V A^T) = (I (x) A + A (x) I) vec(V) for column-major vec.
    const Eigen::Index nn = n * n;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nn, nn);
    for (Eigen::Index p = 0; p < n; ++p) {
        M.block(p * n, p * n, n, n) += As;  // I (x) A
        for (Eigen::Index q = 0; q < n; ++q) {
            for (Eigen::Index r = 0; r < n; ++r) {
                M(p * n + r, q * n + r) += As(p, q);  // A (x) I
            }
        }
    }
    Eigen::VectorXd rhs(nn);
    for (Eigen::Index col = 0; col < n; ++col) {
        rhs.segment(col * n, n) = -Ds.col(col);
    }

    const Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(M).solve(rhs);
    Eigen::MatrixXd V =
        Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
    if (!V.allFinite()) {
        throw SingularError(
            "Lyapunov solve produced non-finite entries (singular system)");
    }

    const double v_scale = V.cwiseAbs().maxCoeff();
    const double asymmetry = (V - V.transpose()).cwiseAbs().maxCoeff();
    if (v_scale > 0.0 && asymmetry > 1.0e-9 * v_scale) {
        std::ostringstream msg;
        msg << "Lyapunov solution asymmetry " << asymmetry
            << " exceeds 1e-9 * ||V|| = " << 1.0e-9 * v_scale;
        throw SingularError(msg.str());
    }
    V = ((V + V.transpose()) / 2.0).eval();

    const double d_norm = diffusion.norm();
    const Eigen::MatrixXd residual =
        drift * V + V * drift.transpose() + diffusion;
    const double rel_residual =
        d_norm > 0.0 ? residual.norm() / d_norm : residual.norm();
    if (!(rel_residual < 1.0e-8)) {
        std::ostringstream msg;
        msg << "Lyapunov relative residual " << rel_residual
            << " is not below 1e-8";
        throw SingularError(msg.str());
    }

    CovarianceMatrix out;
    out.V = std::move(V);
    out.residual_norm = rel_residual;
    return out;
}

} // namespace opamech
