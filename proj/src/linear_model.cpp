#include "opamech/linear_model.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "opamech/errors.hpp"

namespace opamech {

Matrix6 build_drift(const SteadyState& steady, double kappa, double gain,
                    double phase, double omega_m, double gamma_m) {
    const double gc = 2.0 * gain * std::cos(phase);
    const double gs = 2.0 * gain * std::sin(phase);
    const double G1 = steady.coupling_1;
    const double G2 = steady.coupling_2;
    const double d1 = steady.delta_1;
    const double d2 = steady.delta_2;

    Matrix6 A = Matrix6::Zero();
    A(0, 1) = omega_m;
    A(1, 0) = -omega_m;
    A(1, 1) = -gamma_m;
    A(1, 2) = G1;
    A(1, 4) = G2;
    A(2, 2) = -kappa + gc;
    A(2, 3) = d1 + gs;
    A(3, 0) = G1;
    A(3, 2) = -d1 + gs;
    A(3, 3) = -kappa - gc;
    A(4, 4) = -kappa + gc;
    A(4, 5) = d2 + gs;
    A(5, 0) = G2;
    A(5, 4) = -d2 + gs;
    A(5, 5) = -kappa - gc;
    return A;
}

Matrix6 build_diffusion(double kappa, double gamma_m, double n_bar) {
    if (!(kappa > 0.0) || !(gamma_m > 0.0) || !(n_bar >= 0.0)) {
        throw ValidationError(
            "build_diffusion requires kappa > 0, gamma_m > 0, n_bar >= 0");
    }
    Matrix6 D = Matrix6::Zero();
    D(1, 1) = gamma_m * (2.0 * n_bar + 1.0);
    D(2, 2) = kappa;
    D(3, 3) = kappa;
    D(4, 4) = kappa;
    D(5, 5) = kappa;
    return D;
}

LinearModel build_linear_model(const PhysicalParams& params,
                               const DerivedParams& derived,
                               const SteadyState& steady) {
    LinearModel model;
    model.drift = build_drift(steady, derived.kappa, params.opa_gain,
                              params.opa_phase, params.omega_m, params.gamma_m);
    model.diffusion =
        build_diffusion(derived.kappa, params.gamma_m, derived.n_bar);
    model.steady = steady;
    model.derived = derived;
    return model;
}

double stability_margin(const Eigen::MatrixXd& drift) {
    return 1.0e-9 * drift.cwiseAbs().maxCoeff();
}

double spectral_abscissa(const Eigen::MatrixXd& drift) {
    if (drift.rows() != drift.cols() || drift.rows() == 0) {
        throw ValidationError("spectral_abscissa requires a square matrix");
    }
    if (!drift.allFinite()) {
        throw ValidationError("spectral_abscissa requires finite entries");
    }
    const double scale = drift.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(drift / scale, false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError(
            "eigenvalue iteration for the spectral abscissa did not converge");
    }
    return scale * solver.eigenvalues().real().maxCoeff();
}

bool is_stable(const Eigen::MatrixXd& drift) {
    return spectral_abscissa(drift) < -stability_margin(drift);
}

namespace {

// Monic characteristic polynomial coefficients in descending powers via the
// Faddeev-LeVerrier recurrence.
std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    std::vector<double> coeff(static_cast<size_t>(n) + 1, 0.0);
    coeff[0] = 1.0;
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        const Eigen::MatrixXd AB = A * B;
        coeff[static_cast<size_t>(k)] = -AB.trace() / k;
        B = AB + coeff[static_cast<size_t>(k)] *
                     Eigen::MatrixXd::Identity(n, n);
    }
    return coeff;
}

// First-column Routh criterion for a monic polynomial (descending
// coefficients). Zero pivots are treated as "not proven stable".
bool routh_first_column_positive(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) return true;
    for (double v : c) {
        if (!(v > 0.0)) return false;  // necessary condition
    }
    const size_t width = static_cast<size_t>(n) / 2 + 1;
    std::vector<double> prev(width, 0.0), cur(width, 0.0);
    for (size_t j = 0; 2 * j <= static_cast<size_t>(n); ++j) {
        prev[j] = c[2 * j];
    }
    for (size_t j = 0; 2 * j + 1 <= static_cast<size_t>(n); ++j) {
        cur[j] = c[2 * j + 1];
    }
    for (int row = 2; row <= n; ++row) {
        std::vector<double> next(width, 0.0);
        if (cur[0] == 0.0) return false;
        for (size_t j = 0; j + 1 < width; ++j) {
            next[j] = (cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0];
        }
        prev = cur;
        cur = next;
        if (!(cur[0] > 0.0)) return false;
    }
    return true;
}

} // namespace

bool routh_hurwitz_stable(const Eigen::MatrixXd& drift) {
    if (drift.rows() != drift.cols() || drift.rows() == 0) {
        throw ValidationError("routh_hurwitz_stable requires a square matrix");
    }
    if (!drift.allFinite()) {
        throw ValidationError("routh_hurwitz_stable requires finite entries");
    }
    const double scale = drift.cwiseAbs().maxCoeff();
    if (scale == 0.0) return false;
    return routh_first_column_positive(characteristic_polynomial(drift / scale));
}

} // namespace opamech
