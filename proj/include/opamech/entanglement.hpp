#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "opamech/linear_model.hpp"

namespace opamech {

using Matrix4 = Eigen::Matrix4d;

// Symplectic form for n modes in (X1, Y1, X2, Y2, ...) ordering:
// block-diagonal copies of [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int n_modes);

// 4x4 optical block of the full covariance matrix (rows/cols 2..5).
Matrix4 cavity_block(const Matrix6& V);

// Partial transposition of the second mode: conjugation by diag(1, 1, 1, -1).
Matrix4 partial_transpose_mode2(const Matrix4& Vc);

// Symplectic eigenvalues (nu_minus, nu_plus) of a symmetric positive-definite
// two-mode matrix via the invariant formula
//   2 nu^2 = Delta -/+ sqrt(Delta^2 - 4 det M),  Delta = det A + det B + 2 det C.
// Throws UnphysicalError if det M <= 0 or the discriminant is negative beyond
// roundoff tolerance.
std::pair<double, double> symplectic_eigenvalues_2mode(const Matrix4& M);

// Symplectic spectrum of an n-mode covariance matrix: moduli of the
// eigenvalues of Omega V, which come in +/- pairs; returns the n pair values
// in ascending order. Throws UnphysicalError if the moduli fail to pair
// within 1e-9 relative tolerance.
std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& V);

struct LogNegativity {
    double E_N = 0.0;
    double nu_minus_tilde = 0.0;  // smallest symplectic eigenvalue after
                                  // partial transposition
};

// E_N = max(0, -ln(2 nu_minus_tilde)). Values of 2 nu_minus_tilde within
// 1e-12 of 1 are clamped to E_N = 0 so that separable edge cases are exact.
LogNegativity log_negativity(const Matrix4& Vc);

// Quadrature variance ratios diagnosing single-mode squeezing, returned as
// (V_X1/V_Y1, V_Y2/V_X2). Both exceed 1 when the pump squeezes mode 1 in Y
// and mode 2 in X, the orientation realized on the red/blue sideband pair.
std::pair<double, double> squeezing_ratios(const Matrix6& V);

// Summary of the bipartite optical state carried by a full 6x6 covariance
// matrix.
struct EntanglementReport {
    double E_N = 0.0;
    double nu_minus_tilde = 0.0;
    std::array<double, 6> variances{};  // diagonal of V
    double ratio_mode1 = 0.0;
    double ratio_mode2 = 0.0;
};

EntanglementReport analyze_covariance(const Matrix6& V);

} // namespace opamech
