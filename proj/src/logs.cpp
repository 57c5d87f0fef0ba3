#include "normlog/logs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "normlog/errors.hpp"

namespace normlog {

ComplexMatrix exp_normal(const SpectralDecomposition& dec) {
    return borel_calculus(dec, [](Complex z) { return std::exp(z); });
}

namespace {

// Pade coefficients and switching thresholds for the 1-norm.
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068;
constexpr double kTheta13 = 5.371920351148152;

double norm1(const ComplexMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// U holds the odd part, V the even part; exp(A) ~ (V - U)^{-1} (V + U).
template <std::size_t N>
void pade_low(const ComplexMatrix& a, const std::array<double, N>& b, ComplexMatrix& u,
              ComplexMatrix& v) {
    const Eigen::Index n = a.rows();
    const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = a * a;
    ComplexMatrix power = ident;
    ComplexMatrix odd = b[1] * ident;
    ComplexMatrix even = b[0] * ident;
    for (std::size_t k = 2; k < N; k += 2) {
        power = power * a2;
        even += b[k] * power;
        if (k + 1 < N) odd += b[k + 1] * power;
    }
    u = a * odd;
    v = even;
}

void pade13(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v) {
    const auto& b = kPade13;
    const Eigen::Index n = a.rows();
    const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const ComplexMatrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
    u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    const ComplexMatrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
    v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
}

}  // namespace

ComplexMatrix exp_general(const ComplexMatrix& x) {
    require_valid(x, "exp_general input");
    const double nrm = norm1(x);
    ComplexMatrix u, v;
    int squarings = 0;
    if (nrm <= kTheta3) {
        pade_low(x, kPade3, u, v);
    } else if (nrm <= kTheta5) {
        pade_low(x, kPade5, u, v);
    } else if (nrm <= kTheta7) {
        pade_low(x, kPade7, u, v);
    } else if (nrm <= kTheta9) {
        pade_low(x, kPade9, u, v);
    } else {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / kTheta13))));
        pade13(x / std::ldexp(1.0, squarings), u, v);
    }
    ComplexMatrix result = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

Complex principal_log_scalar(Complex z, double cut_band) {
    const double mag = std::abs(z);
    if (z.real() < 0.0 && std::abs(z.imag()) <= cut_band * mag) {
        return {std::log(mag), kPi};
    }
    return std::log(z);
}

namespace {

void require_invertible(const SpectralDecomposition& dec, const Tolerances& tol) {
    const double floor = tol.inv * dec.norm;
    for (const auto& c : dec.clusters) {
        if (std::abs(c.lambda) < floor || c.lambda == Complex{}) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "eigenvalue " << c.lambda << " is below the invertibility floor " << floor;
            throw Singular(msg.str());
        }
    }
}

}  // namespace

ComplexMatrix branch_log(const SpectralDecomposition& dec_n, const BranchShift& shift,
                         const Tolerances& tol) {
    require_invertible(dec_n, tol);
    for (const auto& [index, k] : shift.shifts) {
        if (index >= dec_n.clusters.size()) {
            throw std::out_of_range("branch shift keyed by cluster " + std::to_string(index) +
                                    " of " + std::to_string(dec_n.clusters.size()));
        }
    }
    ComplexMatrix out = ComplexMatrix::Zero(dec_n.n, dec_n.n);
    for (std::size_t j = 0; j < dec_n.clusters.size(); ++j) {
        const auto& c = dec_n.clusters[j];
        const auto it = shift.shifts.find(j);
        const int k = it == shift.shifts.end() ? 0 : it->second;
        out += (principal_log_scalar(c.lambda, tol.boundary) + Complex(0.0, 2.0 * kPi * k)) *
               c.proj;
    }
    return out;
}

ComplexMatrix principal_log(const ComplexMatrix& n, const Tolerances& tol) {
    return branch_log(normal_eig(n, tol), BranchShift{}, tol);
}

KurepaDecomposition kurepa_decompose(const ComplexMatrix& y, const Tolerances& tol) {
    require_valid(y, "kurepa_decompose input");
    const ComplexMatrix e = exp_general(y);
    if (!is_normal(e, tol)) throw ExpNotNormal("e^Y fails the normality test");

    KurepaDecomposition out;
    out.n0 = principal_log(e, tol);
    out.w = (y - out.n0) / Complex(0.0, 2.0 * kPi);
    out.reconstruction_residual =
        frob(out.n0 + Complex(0.0, 2.0 * kPi) * out.w - y) / std::max(1.0, frob(y));
    out.commute_residual = frob(commutator(out.n0, out.w)) /
                           (std::max(1.0, frob(out.n0)) * std::max(1.0, frob(out.w)));

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(out.w, false);
    if (solver.info() != Eigen::Success) throw NoConvergence("eigenvalues of W did not converge");
    const auto& mu = solver.eigenvalues();
    std::set<long long> integers;
    for (Eigen::Index j = 0; j < mu.size(); ++j) {
        out.w_eigenvalues.push_back(mu(j));
        const double nearest = std::round(mu(j).real());
        out.integer_spectrum_residual =
            std::max(out.integer_spectrum_residual, std::abs(mu(j) - Complex(nearest, 0.0)));
        integers.insert(static_cast<long long>(nearest));
    }
    std::sort(out.w_eigenvalues.begin(), out.w_eigenvalues.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    const Eigen::Index dim = y.rows();
    const ComplexMatrix ident = ComplexMatrix::Identity(dim, dim);
    ComplexMatrix product = ident;
    double scale = 1.0;
    for (long long k : integers) {
        const ComplexMatrix factor = out.w - static_cast<double>(k) * ident;
        product = product * factor;
        scale *= std::max(1.0, frob(factor));
    }
    out.diagonalizable_residual = frob(product) / scale;
    return out;
}

}  // namespace normlog
