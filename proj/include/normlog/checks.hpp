#pragma once

#include <string>
#include <vector>

#include "normlog/linalg.hpp"
#include "normlog/report.hpp"
#include "normlog/spectral.hpp"

namespace normlog {

// Every check evaluates its theorem's hypotheses first. A failed hypothesis
// yields hypothesis_met = false and passed = false; the conclusion is then not
// evaluated. Residuals are relative, normalized by max(1, ||operand||_F).
//
// Pairs (X, Y) are linked by e^X = e^Y, except for the self-adjoint checks
// where X is Hermitian and the link is e^{iX} = e^Y.

/// Normal X, Y with e^X = e^Y have equal real parts.
CheckReport check_real_part(const ComplexMatrix& x, const ComplexMatrix& y,
                            const Tolerances& tol = {});

/// For normal X, Y with spectra in the strip |Im z| <= pi:
/// e^X = e^Y  iff  E_X = E_Y on subsets of the open strip and Re X = Re Y.
/// Also compares the boundary-line sums E(R - i pi) + E(R + i pi).
/// The hypothesis holds when either side of the equivalence holds; the check
/// passes when both do.
CheckReport check_spectral_agreement(const ComplexMatrix& x, const ComplexMatrix& y,
                                     const Tolerances& tol = {});

/// |X| = |Y| for normal X, Y with spectra in the strip and e^X = e^Y.
CheckReport check_modulus_equal(const ComplexMatrix& x, const ComplexMatrix& y,
                                const Tolerances& tol = {});

/// |X| Y = Y |X| for normal X with spectrum in the strip and any Y with e^X = e^Y.
CheckReport check_modulus_commute(const ComplexMatrix& x, const ComplexMatrix& y,
                                  const Tolerances& tol = {});

/// X^2 Y = Y X^2 when no eigenvalue of X on Im z = +-pi (other than +-i pi)
/// has its conjugate in the spectrum of X.
CheckReport check_square_commute(const ComplexMatrix& x, const ComplexMatrix& y,
                                 const Tolerances& tol = {});

/// X - Y = sum_{k=k_lo}^{k_hi} 2k pi i (P_k - Q_k) + (2k+1) pi i (E_k - F_k).
/// Throws SpectrumOutOfRange or AmbiguousBoundary.
CheckReport check_difference_formula(const ComplexMatrix& x, const ComplexMatrix& y, int k_lo,
                                     int k_hi, const Tolerances& tol = {});

/// The three cases E_1 = 0, E_{-1} = 0, and both, for spectra in the strip.
CheckReport check_corollary_cases(const ComplexMatrix& x, const ComplexMatrix& y,
                                  const Tolerances& tol = {});

/// No two eigenvalues of the Hermitian X differ by a nonzero multiple of 2 pi.
CheckReport check_congruence_free(const SpectralDecomposition& dec_x, const Tolerances& tol = {});
CheckReport check_congruence_free(const ComplexMatrix& x, const Tolerances& tol = {});

/// Hermitian, congruence-free X with e^{iX} = e^Y: every eigenprojection of X is in {Y}''.
CheckReport check_double_commutant(const ComplexMatrix& x, const ComplexMatrix& y,
                                   const Tolerances& tol = {});

/// Hermitian X with at most one eigenvalue in {(2k+1) pi}, normal Y in the strip: XY = YX.
CheckReport check_one_boundary_eigenvalue(const ComplexMatrix& x, const ComplexMatrix& y,
                                          const Tolerances& tol = {});

/// Hermitian X without eigenvalues in {(2k+1) pi}, normal Y in the strip:
/// Y in {e^{iX}}'' and Y = i fold(X).
CheckReport check_y_in_bicommutant_of_exp(const ComplexMatrix& x, const ComplexMatrix& y,
                                          const Tolerances& tol = {});

/// Y = N0 + 2 pi i W with [N0, W] = 0 and integer spectrum of W, whenever e^Y is normal.
CheckReport check_kurepa(const ComplexMatrix& y, const Tolerances& tol = {});

/// Names accepted by run_check, in canonical order.
const std::vector<std::string>& check_names();

/// Dispatch by name ("check_real_part" or "real_part", ...). `k_lo`/`k_hi` are used
/// by the difference formula only. Throws std::invalid_argument for unknown names.
CheckReport run_check(const std::string& name, const ComplexMatrix& x, const ComplexMatrix& y,
                      int k_lo, int k_hi, const Tolerances& tol = {});

}  // namespace normlog
