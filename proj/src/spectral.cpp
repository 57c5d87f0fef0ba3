#include "normlog/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "normlog/errors.hpp"

namespace normlog {

ComplexMatrix SpectralDecomposition::reconstruct() const {
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    for (const auto& c : clusters) x += c.lambda * c.proj;
    return x;
}

std::vector<Complex> SpectralDecomposition::eigenvalues() const {
    std::vector<Complex> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) out.push_back(c.lambda);
    return out;
}

DecompositionResiduals decomposition_residuals(const SpectralDecomposition& dec,
                                               const ComplexMatrix& x) {
    DecompositionResiduals r;
    r.min_separation = std::numeric_limits<double>::infinity();
    ComplexMatrix sum = ComplexMatrix::Zero(dec.n, dec.n);
    for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
        const auto& p = dec.clusters[i].proj;
        r.idempotency = std::max(r.idempotency, frob(p * p - p));
        r.hermiticity = std::max(r.hermiticity, frob(p - p.adjoint()));
        sum += p;
        for (std::size_t j = i + 1; j < dec.clusters.size(); ++j) {
            r.orthogonality = std::max(r.orthogonality, frob(p * dec.clusters[j].proj));
            r.min_separation = std::min(r.min_separation,
                                        std::abs(dec.clusters[i].lambda - dec.clusters[j].lambda));
        }
    }
    r.resolution = frob(sum - ComplexMatrix::Identity(dec.n, dec.n));
    r.reconstruction = frob(dec.reconstruct() - x);
    return r;
}

namespace {

struct DisjointSet {
    std::vector<std::size_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

SpectralDecomposition normal_eig(const ComplexMatrix& x, const Tolerances& tol) {
    require_valid(x, "normal_eig input");
    if (!is_normal(x, tol)) throw NotNormal("||X*X - XX*||_F exceeds tol_norm * ||X||_F^2");
    const Eigen::Index n = x.rows();
    const double norm_x = frob(x);
    const double radius = tol.cluster * std::max(1.0, norm_x);

    const ComplexMatrix v = simultaneous_diagonalize(real_part(x), imag_part(x), tol, radius);
    const ComplexMatrix d = v.adjoint() * x * v;

    DisjointSet sets(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(d(i, i) - d(j, j)) <= radius) {
                sets.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            }
        }
    }
    std::map<std::size_t, std::vector<Eigen::Index>> groups;
    for (Eigen::Index i = 0; i < n; ++i) groups[sets.find(static_cast<std::size_t>(i))].push_back(i);

    SpectralDecomposition dec;
    dec.n = static_cast<int>(n);
    dec.norm = norm_x;
    for (const auto& [root, members] : groups) {
        SpectralCluster c;
        c.mult = static_cast<int>(members.size());
        c.basis.resize(n, c.mult);
        Complex sum{};
        for (std::size_t k = 0; k < members.size(); ++k) {
            c.basis.col(static_cast<Eigen::Index>(k)) = v.col(members[k]);
            sum += d(members[k], members[k]);
        }
        c.lambda = sum / static_cast<double>(c.mult);
        c.proj = c.basis * c.basis.adjoint();
        dec.clusters.push_back(std::move(c));
    }
    std::sort(dec.clusters.begin(), dec.clusters.end(),
              [](const SpectralCluster& a, const SpectralCluster& b) {
                  if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
                  return a.lambda.imag() < b.lambda.imag();
              });
    return dec;
}

ComplexMatrix spectral_measure(const SpectralDecomposition& dec, const Region& omega,
                               const Tolerances& tol) {
    ComplexMatrix out = ComplexMatrix::Zero(dec.n, dec.n);
    for (const auto& c : dec.clusters) {
        switch (omega.membership(c.lambda, tol.boundary, tol.snap)) {
            case Membership::Inside:
                out += c.proj;
                break;
            case Membership::Outside:
                break;
            case Membership::Ambiguous: {
                std::ostringstream msg;
                msg.precision(17);
                msg << "eigenvalue " << c.lambda << " lies within the boundary band of an "
                    << "excluded edge";
                throw AmbiguousBoundary(msg.str());
            }
        }
    }
    return out;
}

ComplexMatrix borel_calculus(const SpectralDecomposition& dec, const ScalarFunction& f) {
    ComplexMatrix out = ComplexMatrix::Zero(dec.n, dec.n);
    for (const auto& c : dec.clusters) out += f(c.lambda) * c.proj;
    return out;
}

CheckReport verify_pushforward(const SpectralDecomposition& dec, const ScalarFunction& f,
                               const Region& omega, const Tolerances& tol) {
    CheckReport report;
    report.check_name = "verify_pushforward";
    report.hypothesis_met = true;

    const ComplexMatrix fx = borel_calculus(dec, f);
    const ComplexMatrix lhs = spectral_measure(normal_eig(fx, tol), omega, tol);

    ComplexMatrix rhs = ComplexMatrix::Zero(dec.n, dec.n);
    for (const auto& c : dec.clusters) {
        const Membership m = omega.membership(f(c.lambda), tol.boundary, tol.snap);
        if (m == Membership::Ambiguous) {
            throw AmbiguousBoundary("f(lambda) lies within the boundary band of an excluded edge");
        }
        if (m == Membership::Inside) rhs += c.proj;
    }
    const double limit = tol.check * dec.n;
    report.set_residual("pushforward", frob(lhs - rhs));
    report.tolerances["pushforward"] = limit;
    report.passed = report.residuals["pushforward"] <= limit;
    return report;
}

namespace {

// k with t in ((2k-1)pi, (2k+1)pi]; `on_line` reports t snapped onto (2k+1)pi.
double fold_index(double t, const Tolerances& tol, bool& on_line) {
    const double q = (t - kPi) / (2.0 * kPi);
    const double k_near = std::round(q);
    on_line = std::abs(t - (2.0 * k_near + 1.0) * kPi) <= tol.snap * std::max(1.0, std::abs(t));
    return on_line ? k_near : std::ceil(q);
}

}  // namespace

double fold_scalar(double t, int k_lo, int k_hi, const Tolerances& tol) {
    bool on_line = false;
    const double k = fold_index(t, tol, on_line);
    if (!std::isfinite(t) || k < k_lo - 1 || k > k_hi) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "t = " << t << " outside the fold window [" << k_lo << ", " << k_hi << "]";
        throw OutOfFoldRange(msg.str());
    }
    return on_line ? kPi : t - 2.0 * k * kPi;
}

std::pair<int, int> fold_window(const std::vector<double>& ts) {
    if (ts.empty()) return {1, 0};
    const Tolerances tol;
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (double t : ts) {
        bool on_line = false;
        const int k = static_cast<int>(fold_index(t, tol, on_line));
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    return {lo + 1, hi};
}

ComplexMatrix fold_matrix(const SpectralDecomposition& dec, int k_lo, int k_hi,
                          const Tolerances& tol) {
    return borel_calculus(dec, [&](Complex z) {
        return Complex(fold_scalar(z.real(), k_lo, k_hi, tol), 0.0);
    });
}

namespace {

double coverage(const std::map<int, ComplexMatrix>& open, const std::map<int, ComplexMatrix>& lines) {
    if (open.empty()) return 0.0;
    const Eigen::Index n = open.begin()->second.rows();
    ComplexMatrix sum = -ComplexMatrix::Identity(n, n);
    for (const auto& [k, p] : open) sum += p;
    for (const auto& [k, e] : lines) sum += e;
    return frob(sum);
}

void require_window(const SpectralDecomposition& dec, int k_lo, int k_hi, const Tolerances& tol,
                    const char* which) {
    const double lo = (2.0 * k_lo + 1.0) * kPi - tol.boundary;
    const double hi = (2.0 * k_hi + 1.0) * kPi + tol.boundary;
    for (const auto& c : dec.clusters) {
        if (c.lambda.imag() < lo || c.lambda.imag() > hi) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "spectrum of " << which << " has Im = " << c.lambda.imag()
                << " outside [(2*" << k_lo << "+1)pi, (2*" << k_hi << "+1)pi]";
            throw SpectrumOutOfRange(msg.str());
        }
    }
}

}  // namespace

double StripProjections::coverage_residual_x() const { return coverage(P, E); }
double StripProjections::coverage_residual_y() const { return coverage(Q, F); }

StripProjections strip_projections(const SpectralDecomposition& dec_x,
                                   const SpectralDecomposition& dec_y, int k_lo, int k_hi,
                                   const Tolerances& tol) {
    if (k_lo > k_hi) throw SpectrumOutOfRange("empty window: k_lo > k_hi");
    require_window(dec_x, k_lo, k_hi, tol, "X");
    require_window(dec_y, k_lo, k_hi, tol, "Y");
    StripProjections sp;
    sp.k_lo = k_lo;
    sp.k_hi = k_hi;
    for (int k = k_lo; k <= k_hi; ++k) {
        const Region band = Region::open_band((2.0 * k - 1.0) * kPi, (2.0 * k + 1.0) * kPi);
        const Region line = Region::hline((2.0 * k + 1.0) * kPi);
        sp.P[k] = spectral_measure(dec_x, band, tol);
        sp.Q[k] = spectral_measure(dec_y, band, tol);
        sp.E[k] = spectral_measure(dec_x, line, tol);
        sp.F[k] = spectral_measure(dec_y, line, tol);
    }
    return sp;
}

bool spectrum_in_strip(const SpectralDecomposition& dec, const Tolerances& tol) {
    return std::all_of(dec.clusters.begin(), dec.clusters.end(), [&](const SpectralCluster& c) {
        return std::abs(c.lambda.imag()) <= kPi + tol.boundary;
    });
}

}  // namespace normlog
