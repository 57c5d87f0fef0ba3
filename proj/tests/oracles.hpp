#pragma once

// Reference computations for the tests. Each one uses a different algorithm
// from the library routine it is compared against.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "normlog/linalg.hpp"

namespace oracle {

using normlog::Complex;
using normlog::ComplexMatrix;
using normlog::kPi;

inline ComplexMatrix diag(std::vector<Complex> d) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    return m;
}

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

/// Truncated Taylor series with scaling and squaring.
inline ComplexMatrix taylor_exp(const ComplexMatrix& x) {
    const Eigen::Index n = x.rows();
    int s = 0;
    double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.25) {
        norm /= 2.0;
        ++s;
    }
    const ComplexMatrix a = x / std::ldexp(1.0, s);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    ComplexMatrix sum = term;
    for (int k = 1; k <= 40; ++k) {
        term = (term * a / static_cast<double>(k)).eval();
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = (sum * sum).eval();
    return sum;
}

/// The unique k with t in ((2k-1)pi, (2k+1)pi], found by scanning.
inline double brute_fold(double t) {
    for (int k = -50; k <= 50; ++k) {
        if (t > (2 * k - 1) * kPi && t <= (2 * k + 1) * kPi) return t - 2 * k * kPi;
    }
    return std::nan("");
}

/// Dimension of {Z : YZ = ZY} from the rank of the n^2 x n^2 commutation map,
/// assembled row by row from the entrywise equations.
inline int commutant_dim(const ComplexMatrix& y) {
    const Eigen::Index n = y.rows();
    ComplexMatrix map = ComplexMatrix::Zero(n * n, n * n);
    // unknown Z(p,q) has index p*n + q; equation (i,j): sum_k Y(i,k)Z(k,j) - Z(i,k)Y(k,j) = 0
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index k = 0; k < n; ++k) {
                map(i * n + j, k * n + j) += y(i, k);
                map(i * n + j, i * n + k) -= y(k, j);
            }
        }
    }
    Eigen::FullPivLU<ComplexMatrix> lu(map);
    lu.setThreshold(1e-9);
    return static_cast<int>(n * n - lu.rank());
}

/// Seeded standard generator, independent of the library's CounterRng.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    Complex gauss() {
        std::normal_distribution<double> d;
        return {d(gen_), d(gen_)};
    }
    ComplexMatrix gaussian(Eigen::Index n) {
        ComplexMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = gauss();
        return m;
    }
    /// Q factor of a Gaussian matrix.
    ComplexMatrix unitary(Eigen::Index n) {
        Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(n));
        return qr.householderQ() * ComplexMatrix::Identity(n, n);
    }
    /// U diag(d) U* with a random unitary U.
    ComplexMatrix normal_with(const std::vector<Complex>& d) {
        const ComplexMatrix u = unitary(static_cast<Eigen::Index>(d.size()));
        return u * diag(d) * u.adjoint();
    }

private:
    std::mt19937_64 gen_;
};

inline ComplexMatrix hermitian_from(const ComplexMatrix& m) { return (m + m.adjoint()) * 0.5; }

/// Ascending eigenvalues from Eigen's tridiagonal QR solver.
inline Eigen::VectorXd eigvalsh(const ComplexMatrix& h) {
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace oracle
