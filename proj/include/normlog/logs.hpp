#pragma once

#include <map>
#include <vector>

#include "normlog/linalg.hpp"
#include "normlog/spectral.hpp"

namespace normlog {

/// Integer branch offsets (units of 2 pi i) per cluster index; missing clusters use 0.
struct BranchShift {
    std::map<std::size_t, int> shifts;
};

/// Y = N0 + 2 pi i W with N0 the principal log of e^Y.
struct KurepaDecomposition {
    ComplexMatrix n0;
    ComplexMatrix w;
    std::vector<Complex> w_eigenvalues;  // sorted by (real, imag)
    double reconstruction_residual = 0.0;   // ||N0 + 2 pi i W - Y||_F / max(1, ||Y||_F)
    double commute_residual = 0.0;          // ||[N0, W]||_F / (max(1,||N0||_F) max(1,||W||_F))
    double integer_spectrum_residual = 0.0; // max_j |mu_j - round(mu_j)|
    /// || prod_{k in round(spec W)} (W - kI) ||_F relative to the product of factor norms;
    /// zero iff W is diagonalizable with that integer spectrum.
    double diagonalizable_residual = 0.0;
};

/// sum_j e^{lambda_j} P_j
ComplexMatrix exp_normal(const SpectralDecomposition& dec);

/// Scaling and squaring with a Pade core of degree 3, 5, 7, 9 or 13.
ComplexMatrix exp_general(const ComplexMatrix& x);

/// Principal scalar logarithm with Im in (-pi, pi]; arguments within
/// `cut_band` (radians) of the negative real axis map to +i pi.
Complex principal_log_scalar(Complex z, double cut_band);

/// Throws NotNormal or Singular.
ComplexMatrix principal_log(const ComplexMatrix& n, const Tolerances& tol = {});

/// sum_j (Log lambda_j + 2 pi i k_j) P_j. Throws Singular, or std::out_of_range
/// for a shift keyed by a non-existent cluster.
ComplexMatrix branch_log(const SpectralDecomposition& dec_n, const BranchShift& shift,
                         const Tolerances& tol = {});

/// Throws ExpNotNormal when e^Y is not normal, Singular when it is not invertible.
KurepaDecomposition kurepa_decompose(const ComplexMatrix& y, const Tolerances& tol = {});

}  // namespace normlog
