#pragma once

namespace normlog {

/// Numerical thresholds shared by every module. All fields may be overridden
/// per call; the defaults are the values the acceptance suite is pinned to.
struct Tolerances {
    double herm = 1e-10;     // Hermitian precondition, relative to ||H||_F
    double norm = 1e-10;     // normality test, relative to ||X||_F^2
    double eig = 1e-12;      // eigensolver postconditions
    double comm = 1e-10;     // commutation preconditions and commutant basis
    double check = 1e-8;     // theorem checks and hypothesis gates
    double rank = 1e-10;     // nullspace cutoff, relative to largest singular value
    double boundary = 1e-9;  // region boundary band (epsilon_b)
    double snap = 1e-11;     // "exactly on the edge" band, scaled by max(1, |z|)
    double cluster = 1e-8;   // eigenvalue merge radius, scaled by max(1, ||X||_F)
    double point = 1e-9;     // default match radius for point regions
    double integer = 1e-6;   // integer-spectrum test for Kurepa W
    double inv = 1e-10;      // invertibility, relative to ||N||_F
    int max_sweeps = 30;     // Jacobi sweep cap
    double jacobi_stop = 1e-14;  // off-diagonal mass stop, relative to ||H||_F
};

}  // namespace normlog
