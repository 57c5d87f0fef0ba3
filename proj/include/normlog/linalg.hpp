#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "normlog/tolerances.hpp"

namespace normlog {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Throws InvalidMatrix unless `m` is square, non-empty and has only finite entries.
void require_valid(const ComplexMatrix& m, const char* what = "matrix");

double frob(const ComplexMatrix& m);

/// (X + X*)/2
ComplexMatrix real_part(const ComplexMatrix& x);
/// (X - X*)/(2i); Hermitian, so that X = Re(X) + i Im(X).
ComplexMatrix imag_part(const ComplexMatrix& x);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermEig {
    RealVector values;  // ascending
    ComplexMatrix vectors;  // unitary, columns are eigenvectors
};

/// Cyclic Jacobi with complex Givens rotations.
/// Throws NotHermitian or NoConvergence.
HermEig herm_eig(const ComplexMatrix& h, const Tolerances& tol = {});

/// Unitary V with V*AV and V*BV both diagonal, for commuting Hermitian A, B.
/// Diagonalizes A, then the compression of B to each eigenvalue cluster of A.
/// `cluster_radius` groups eigenvalues of A; it defaults to
/// tol.cluster * max(1, ||A||_F + ||B||_F).
ComplexMatrix simultaneous_diagonalize(const ComplexMatrix& a, const ComplexMatrix& b,
                                       const Tolerances& tol = {}, double cluster_radius = -1.0);

bool is_normal(const ComplexMatrix& x, const Tolerances& tol = {});

/// |X| = (X*X)^{1/2}, positive semidefinite.
ComplexMatrix modulus(const ComplexMatrix& x, const Tolerances& tol = {});

struct CommutantBasis {
    int dim = 0;
    std::vector<ComplexMatrix> basis;  // trace-orthonormal
};

/// Nullspace of Z -> YZ - ZY, from the SVD of its n^2 x n^2 matrix.
CommutantBasis commutant_basis(const ComplexMatrix& y, const Tolerances& tol = {});

struct DoubleCommutantResult {
    bool member = false;
    double residual = 0.0;
};

DoubleCommutantResult in_double_commutant(const ComplexMatrix& w, const ComplexMatrix& y,
                                          const Tolerances& tol = {});
/// Same test against a precomputed commutant.
DoubleCommutantResult in_double_commutant(const ComplexMatrix& w, const CommutantBasis& commutant,
                                          const Tolerances& tol = {});

}  // namespace normlog
