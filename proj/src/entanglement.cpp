#include "opamech/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "opamech/errors.hpp"

namespace opamech {

Eigen::MatrixXd symplectic_form(int n_modes) {
    if (n_modes < 1) {
        throw ValidationError("symplectic_form requires n_modes >= 1");
    }
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int j = 0; j < n_modes; ++j) {
        omega(2 * j, 2 * j + 1) = 1.0;
        omega(2 * j + 1, 2 * j) = -1.0;
    }
    return omega;
}

Matrix4 cavity_block(const Matrix6& V) {
    return V.block<4, 4>(2, 2);
}

Matrix4 partial_transpose_mode2(const Matrix4& Vc) {
    Matrix4 P = Matrix4::Identity();
    P(3, 3) = -1.0;
    return P * Vc * P;
}

std::pair<double, double> symplectic_eigenvalues_2mode(const Matrix4& M) {
    if (!M.allFinite()) {
        throw ValidationError(
            "symplectic_eigenvalues_2mode requires finite entries");
    }
    const double m_scale = M.cwiseAbs().maxCoeff();
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1.0e-9 * m_scale) {
        throw ValidationError(
            "symplectic_eigenvalues_2mode requires a symmetric matrix");
    }

    const double det_a = M.block<2, 2>(0, 0).determinant();
    const double det_b = M.block<2, 2>(2, 2).determinant();
    const double det_c = M.block<2, 2>(0, 2).determinant();
    const double det_m = M.determinant();
    if (!(det_m > 0.0)) {
        std::ostringstream msg;
        msg << "two-mode matrix has non-positive determinant " << det_m;
        throw UnphysicalError(msg.str());
    }

    const double delta = det_a + det_b + 2.0 * det_c;
    double disc = delta * delta - 4.0 * det_m;
    const double disc_scale = std::max(delta * delta, 4.0 * std::abs(det_m));
    if (disc < -1.0e-9 * disc_scale) {
        std::ostringstream msg;
        msg << "symplectic invariants give a negative discriminant " << disc;
        throw UnphysicalError(msg.str());
    }
    disc = std::max(disc, 0.0);

    const double root = std::sqrt(disc);
    const double nu_minus_sq = (delta - root) / 2.0;
    const double nu_plus_sq = (delta + root) / 2.0;
    if (!(nu_minus_sq > 0.0) || !(nu_plus_sq > 0.0)) {
        std::ostringstream msg;
        msg << "degenerate symplectic spectrum (nu^2 = " << nu_minus_sq << ", "
            << nu_plus_sq << ")";
        throw UnphysicalError(msg.str());
    }
    return {std::sqrt(nu_minus_sq), std::sqrt(nu_plus_sq)};
}

std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& V) {
    const Eigen::Index dim = V.rows();
    if (V.cols() != dim || dim == 0 || dim % 2 != 0) {
        throw ValidationError(
            "symplectic_spectrum requires a square even-dimensional matrix");
    }
    if (!V.allFinite()) {
        throw ValidationError("symplectic_spectrum requires finite entries");
    }
    const int n_modes = static_cast<int>(dim / 2);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(symplectic_form(n_modes) * V,
                                               false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError(
            "eigenvalue iteration for the symplectic spectrum did not converge");
    }
    std::vector<double> moduli(static_cast<size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) {
        moduli[static_cast<size_t>(k)] = std::abs(solver.eigenvalues()(k));
    }
    std::sort(moduli.begin(), moduli.end());

    std::vector<double> out;
    out.reserve(static_cast<size_t>(n_modes));
    for (int k = 0; k < n_modes; ++k) {
        const double a = moduli[static_cast<size_t>(2 * k)];
        const double b = moduli[static_cast<size_t>(2 * k + 1)];
        if (std::abs(a - b) > 1.0e-9 * std::max(1.0, a + b)) {
            std::ostringstream msg;
            msg << "symplectic spectrum moduli fail to pair: " << a << " vs "
                << b;
            throw UnphysicalError(msg.str());
        }
        out.push_back((a + b) / 2.0);
    }
    return out;
}

LogNegativity log_negativity(const Matrix4& Vc) {
    const auto [nu_minus, nu_plus] =
        symplectic_eigenvalues_2mode(partial_transpose_mode2(Vc));
    (void)nu_plus;
    LogNegativity out;
    out.nu_minus_tilde = nu_minus;
    const double two_nu = 2.0 * nu_minus;
    if (std::abs(two_nu - 1.0) < 1.0e-12) {
        out.E_N = 0.0;  // separable edge cases stay exactly zero
    } else {
        out.E_N = std::max(0.0, -std::log(two_nu));
    }
    return out;
}

std::pair<double, double> squeezing_ratios(const Matrix6& V) {
    const double x1 = V(2, 2), y1 = V(3, 3);
    const double x2 = V(4, 4), y2 = V(5, 5);
    if (!(x1 > 0.0) || !(y1 > 0.0) || !(x2 > 0.0) || !(y2 > 0.0)) {
        throw UnphysicalError(
            "squeezing_ratios requires positive quadrature variances");
    }
    return {x1 / y1, y2 / x2};
}

EntanglementReport analyze_covariance(const Matrix6& V) {
    EntanglementReport report;
    const Matrix4 Vc = cavity_block(V);
    const LogNegativity ln = log_negativity(Vc);
    report.E_N = ln.E_N;
    report.nu_minus_tilde = ln.nu_minus_tilde;
    for (int i = 0; i < 6; ++i) {
        report.variances[static_cast<size_t>(i)] = V(i, i);
    }
    const auto [r1, r2] = squeezing_ratios(V);
    report.ratio_mode1 = r1;
    report.ratio_mode2 = r2;
    return report;
}

} // namespace opamech
