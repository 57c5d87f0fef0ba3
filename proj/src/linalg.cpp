#include "normlog/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/SVD>

#include "normlog/errors.hpp"

namespace normlog {

void require_valid(const ComplexMatrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw InvalidMatrix(std::string(what) + " must be square and non-empty, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        throw InvalidMatrix(std::string(what) + " has non-finite entries");
    }
}

double frob(const ComplexMatrix& m) { return m.norm(); }

ComplexMatrix real_part(const ComplexMatrix& x) { return (x + x.adjoint()) * 0.5; }

ComplexMatrix imag_part(const ComplexMatrix& x) {
    return (x - x.adjoint()) / Complex(0.0, 2.0);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

namespace {

double off_diagonal_mass(const ComplexMatrix& h) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
        for (Eigen::Index i = 0; i < h.rows(); ++i) {
            if (i != j) sum += std::norm(h(i, j));
        }
    }
    return std::sqrt(sum);
}

// Zeroes h(p, q) with a complex rotation G; H <- G* H G, V <- V G.
void rotate(ComplexMatrix& h, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
    const Complex b = h(p, q);
    const double mag = std::abs(b);
    if (mag == 0.0) return;
    const Complex u = b / mag;
    const double app = h(p, p).real();
    const double aqq = h(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex ubar = std::conj(u);

    // G = [[c, s], [-s*conj(u), c*conj(u)]]
    const Complex g00 = c, g01 = s, g10 = -s * ubar, g11 = c * ubar;

    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        const Complex hp = h(k, p), hq = h(k, q);
        h(k, p) = hp * g00 + hq * g10;
        h(k, q) = hp * g01 + hq * g11;
    }
    for (Eigen::Index k = 0; k < h.cols(); ++k) {
        const Complex hp = h(p, k), hq = h(q, k);
        h(p, k) = std::conj(g00) * hp + std::conj(g10) * hq;
        h(q, k) = std::conj(g01) * hp + std::conj(g11) * hq;
    }
    for (Eigen::Index k = 0; k < v.rows(); ++k) {
        const Complex vp = v(k, p), vq = v(k, q);
        v(k, p) = vp * g00 + vq * g10;
        v(k, q) = vp * g01 + vq * g11;
    }
    h(p, q) = 0.0;
    h(q, p) = 0.0;
    h(p, p) = h(p, p).real();
    h(q, q) = h(q, q).real();
}

template <class Svd>
bool null_space(const Svd& svd, const ComplexMatrix& map, double rank_tol, ComplexMatrix& out) {
    if (svd.info() != Eigen::Success) return false;
    const RealVector& sigma = svd.singularValues();
    const double cutoff = rank_tol * (sigma.size() > 0 ? sigma(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
    out = svd.matrixV().rightCols(map.cols() - rank);
    if (out.cols() == 0) return true;
    const double image = (map * out).colwise().norm().maxCoeff();
    const double ortho = (out.adjoint() * out - ComplexMatrix::Identity(out.cols(), out.cols())).norm();
    return image <= std::max(cutoff, 1e-300) && ortho <= 1e-8;
}

}  // namespace

HermEig herm_eig(const ComplexMatrix& input, const Tolerances& tol) {
    require_valid(input, "herm_eig input");
    const double norm_h = frob(input);
    if (frob(input - input.adjoint()) > tol.herm * norm_h) {
        throw NotHermitian("||H - H*||_F exceeds tol_herm * ||H||_F");
    }
    const Eigen::Index n = input.rows();
    ComplexMatrix h = (input + input.adjoint()) * 0.5;
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    const double stop = tol.jacobi_stop * norm_h;
    int sweep = 0;
    while (off_diagonal_mass(h) > stop) {
        if (sweep++ >= tol.max_sweeps) {
            throw NoConvergence("Jacobi sweep cap of " + std::to_string(tol.max_sweeps) +
                                " exceeded");
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                rotate(h, v, p, q);
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return h(a, a).real() < h(b, b).real();
    });
    HermEig out{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto src = order[static_cast<std::size_t>(j)];
        out.values(j) = h(src, src).real();
        out.vectors.col(j) = v.col(src);
    }
    return out;
}

ComplexMatrix simultaneous_diagonalize(const ComplexMatrix& a, const ComplexMatrix& b,
                                       const Tolerances& tol, double cluster_radius) {
    require_valid(a, "simultaneous_diagonalize A");
    require_valid(b, "simultaneous_diagonalize B");
    if (a.rows() != b.rows()) throw InvalidMatrix("A and B differ in dimension");
    const double na = frob(a), nb = frob(b);
    // Same scale as the normality test for A + iB; never smaller than ||A|| ||B||.
    if (frob(commutator(a, b)) > tol.comm * 0.5 * (na * na + nb * nb)) {
        throw NotCommuting("||AB - BA||_F exceeds tol_comm * (||A||_F^2 + ||B||_F^2) / 2");
    }
    if (cluster_radius < 0.0) cluster_radius = tol.cluster * std::max(1.0, na + nb);

    const HermEig ea = herm_eig(a, tol);
    ComplexMatrix v = ea.vectors;
    const Eigen::Index n = a.rows();
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && ea.values(end) - ea.values(end - 1) <= cluster_radius) ++end;
        const Eigen::Index m = end - start;
        if (m > 1) {
            const ComplexMatrix basis = v.middleCols(start, m);
            ComplexMatrix compressed = basis.adjoint() * b * basis;
            compressed = ((compressed + compressed.adjoint()) * 0.5).eval();
            const HermEig eb = herm_eig(compressed, tol);
            v.middleCols(start, m) = basis * eb.vectors;
        }
        start = end;
    }
    return v;
}

bool is_normal(const ComplexMatrix& x, const Tolerances& tol) {
    require_valid(x, "is_normal input");
    const double nx = frob(x);
    return frob(x.adjoint() * x - x * x.adjoint()) <= tol.norm * nx * nx;
}

ComplexMatrix modulus(const ComplexMatrix& x, const Tolerances& tol) {
    require_valid(x, "modulus input");
    const ComplexMatrix gram = x.adjoint() * x;
    const HermEig e = herm_eig((gram + gram.adjoint()) * 0.5, tol);
    RealVector roots = e.values.unaryExpr([](double l) { return std::sqrt(std::max(l, 0.0)); });
    ComplexMatrix m = e.vectors * roots.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    return (m + m.adjoint()) * 0.5;
}

CommutantBasis commutant_basis(const ComplexMatrix& y, const Tolerances& tol) {
    require_valid(y, "commutant_basis input");
    const Eigen::Index n = y.rows();
    const Eigen::Index nn = n * n;
    // Column-major vec: vec(YZ - ZY) = (I (x) Y - Y^T (x) I) vec(Z).
    ComplexMatrix map = ComplexMatrix::Zero(nn, nn);
    for (Eigen::Index j = 0; j < n; ++j) {
        map.block(j * n, j * n, n, n) += y;
        for (Eigen::Index i = 0; i < n; ++i) {
            const Complex yji = y(j, i);
            if (yji == Complex{}) continue;
            for (Eigen::Index k = 0; k < n; ++k) map(i * n + k, j * n + k) -= yji;
        }
    }
    // BDCSVD in Eigen 3.4 can return wrong singular vectors for clustered
    // singular values; verify the null vectors and fall back to JacobiSVD.
    ComplexMatrix null_vectors;
    if (!null_space(Eigen::BDCSVD<ComplexMatrix>(map, Eigen::ComputeFullV), map, tol.rank, null_vectors)) {
        using Jacobi = Eigen::JacobiSVD<ComplexMatrix, Eigen::NoQRPreconditioner>;
        if (!null_space(Jacobi(map, Eigen::ComputeFullV), map, tol.rank, null_vectors)) {
            throw NoConvergence("SVD of the commutation map failed");
        }
    }
    CommutantBasis out;
    for (Eigen::Index i = 0; i < null_vectors.cols(); ++i) {
        ComplexMatrix z(n, n);
        for (Eigen::Index c = 0; c < n; ++c) z.col(c) = null_vectors.col(i).segment(c * n, n);
        out.basis.push_back(std::move(z));
    }
    out.dim = static_cast<int>(out.basis.size());
    return out;
}

DoubleCommutantResult in_double_commutant(const ComplexMatrix& w, const CommutantBasis& commutant,
                                          const Tolerances& tol) {
    require_valid(w, "in_double_commutant W");
    const double nw = frob(w);
    DoubleCommutantResult out;
    if (nw == 0.0) {
        out.member = true;
        return out;
    }
    for (const auto& z : commutant.basis) {
        const double nz = frob(z);
        if (nz == 0.0) continue;
        out.residual = std::max(out.residual, frob(commutator(w, z)) / (nw * nz));
    }
    out.member = out.residual <= tol.check;
    return out;
}

DoubleCommutantResult in_double_commutant(const ComplexMatrix& w, const ComplexMatrix& y,
                                          const Tolerances& tol) {
    return in_double_commutant(w, commutant_basis(y, tol), tol);
}

}  // namespace normlog
