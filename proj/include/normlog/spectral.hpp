#pragma once

#include <functional>
#include <map>
#include <vector>

#include "normlog/linalg.hpp"
#include "normlog/region.hpp"
#include "normlog/report.hpp"

namespace normlog {

struct SpectralCluster {
    Complex lambda;       // representative eigenvalue
    ComplexMatrix proj;   // orthogonal eigenprojection
    ComplexMatrix basis;  // n x mult orthonormal columns, proj = basis * basis^*
    int mult = 0;
};

/// X = sum_j lambda_j P_j for a normal matrix X.
struct SpectralDecomposition {
    int n = 0;
    double norm = 0.0;  // ||X||_F of the decomposed matrix
    std::vector<SpectralCluster> clusters;

    ComplexMatrix reconstruct() const;
    std::vector<Complex> eigenvalues() const;  // representatives, cluster order
};

/// Residuals of the decomposition invariants against the source matrix.
struct DecompositionResiduals {
    double idempotency = 0.0;    // max ||P^2 - P||_F
    double hermiticity = 0.0;    // max ||P - P*||_F
    double orthogonality = 0.0;  // max_{i != j} ||P_i P_j||_F
    double resolution = 0.0;     // ||sum P - I||_F
    double reconstruction = 0.0; // ||sum lambda P - X||_F
    double min_separation = 0.0; // min_{i != j} |lambda_i - lambda_j| (inf if one cluster)
};

DecompositionResiduals decomposition_residuals(const SpectralDecomposition& dec,
                                               const ComplexMatrix& x);

/// Throws NotNormal or NoConvergence.
SpectralDecomposition normal_eig(const ComplexMatrix& x, const Tolerances& tol = {});

/// E_X(omega): sum of the eigenprojections whose eigenvalue lies in omega.
/// Throws AmbiguousBoundary when an eigenvalue sits in an excluded edge band.
ComplexMatrix spectral_measure(const SpectralDecomposition& dec, const Region& omega,
                               const Tolerances& tol = {});

using ScalarFunction = std::function<Complex(Complex)>;

/// f(X) = sum_j f(lambda_j) P_j; f is only evaluated at the representatives.
ComplexMatrix borel_calculus(const SpectralDecomposition& dec, const ScalarFunction& f);

/// Compares E_{f(X)}(omega) with E_X(f^{-1}(omega)).
CheckReport verify_pushforward(const SpectralDecomposition& dec, const ScalarFunction& f,
                               const Region& omega, const Tolerances& tol = {});

/// t - 2k pi for the unique k with t in ((2k-1)pi, (2k+1)pi]; the result lies in (-pi, pi].
/// Valid for t in ((2(k_lo-1)-1)pi, (2 k_hi+1)pi], otherwise throws OutOfFoldRange.
/// Points within tol.snap * max(1, |t|) of an odd multiple of pi are treated as on it.
double fold_scalar(double t, int k_lo, int k_hi, const Tolerances& tol = {});

/// Smallest fold window [k_lo, k_hi] containing every value in `ts`.
std::pair<int, int> fold_window(const std::vector<double>& ts);

/// fold(H) for Hermitian H given through its decomposition (real parts of the representatives).
ComplexMatrix fold_matrix(const SpectralDecomposition& dec, int k_lo, int k_hi,
                          const Tolerances& tol = {});

/// Projections of a pair (X, Y) against the lines Im z = (2k+1)pi, keyed by k:
///   P[k] = E_X(R + i((2k-1)pi, (2k+1)pi)),  Q[k] likewise for Y,
///   E[k] = E_X(R + i(2k+1)pi),              F[k] likewise for Y.
struct StripProjections {
    int k_lo = 0;
    int k_hi = 0;
    std::map<int, ComplexMatrix> P, Q, E, F;

    /// ||sum_k (P[k] + E[k]) - I||_F, and the same for Q, F.
    double coverage_residual_x() const;
    double coverage_residual_y() const;
};

/// Throws SpectrumOutOfRange unless both spectra lie in R + i[(2k_lo+1)pi, (2k_hi+1)pi].
StripProjections strip_projections(const SpectralDecomposition& dec_x,
                                   const SpectralDecomposition& dec_y, int k_lo, int k_hi,
                                   const Tolerances& tol = {});

/// true iff every eigenvalue has |Im| <= pi + tol.boundary.
bool spectrum_in_strip(const SpectralDecomposition& dec, const Tolerances& tol = {});

}  // namespace normlog
