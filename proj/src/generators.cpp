#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "normlog/errors.hpp"
#include "normlog/harness.hpp"
#include "normlog/logs.hpp"
#include "normlog/spectral.hpp"

namespace normlog {

std::uint64_t CounterRng::next_u64() {
    ++counter_;
    std::uint64_t z = seed_ + counter_ * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int CounterRng::uniform_int(int lo, int hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<double>(hi - lo + 1);
    return lo + std::min(static_cast<int>(uniform() * span), hi - lo);
}

double CounterRng::normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Complex CounterRng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::sqrt(2.0);
}

const std::vector<Family>& all_families() {
    static const std::vector<Family> families = {
        Family::InteriorPair,           Family::BoundaryFlipPair,
        Family::DistinctProjectionPair, Family::ShiftedBranchPair,
        Family::NonNormalLogPair,       Family::SelfAdjointCongruenceFree,
        Family::OddPiEigenvalue};
    return families;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::InteriorPair: return "InteriorPair";
        case Family::BoundaryFlipPair: return "BoundaryFlipPair";
        case Family::DistinctProjectionPair: return "DistinctProjectionPair";
        case Family::ShiftedBranchPair: return "ShiftedBranchPair";
        case Family::NonNormalLogPair: return "NonNormalLogPair";
        case Family::SelfAdjointCongruenceFree: return "SelfAdjointCongruenceFree";
        case Family::OddPiEigenvalue: return "OddPiEigenvalue";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    for (Family f : all_families()) {
        if (family_name(f) == name) return f;
    }
    throw std::invalid_argument("unknown family: " + name);
}

ComplexMatrix random_unitary(int n, CounterRng& rng) {
    if (n < 1) throw std::invalid_argument("random_unitary needs n >= 1");
    ComplexMatrix g(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
    }
    // Modified Gram-Schmidt, two passes. R = Q*G then has a positive real
    // diagonal, which makes Q Haar distributed.
    ComplexMatrix q = g;
    for (int j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                const Complex proj = q.col(k).dot(q.col(j));
                q.col(j) -= proj * q.col(k);
            }
        }
        q.col(j).normalize();
    }
    return q;
}

ComplexMatrix random_unitary(int n, std::uint64_t seed) {
    CounterRng rng(seed);
    return random_unitary(n, rng);
}

namespace {

constexpr double kInteriorMargin = 0.05;

double param(const InstanceSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

ComplexMatrix conjugate_diag(const ComplexMatrix& u, const std::vector<Complex>& d) {
    Eigen::VectorXcd diag(static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) diag(static_cast<Eigen::Index>(i)) = d[i];
    return u * diag.asDiagonal() * u.adjoint();
}

// Draws values with `draw`, repeating an earlier one with probability repeat_prob.
template <typename Draw>
auto draw_with_repeats(CounterRng& rng, int count, double repeat_prob, Draw draw) {
    std::vector<decltype(draw())> out;
    for (int i = 0; i < count; ++i) {
        if (!out.empty() && rng.uniform() < repeat_prob) {
            out.push_back(out[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(out.size()) - 1))]);
        } else {
            out.push_back(draw());
        }
    }
    return out;
}

Complex interior_value(CounterRng& rng) {
    const double re = rng.uniform(-2.0, 2.0);
    const double im = rng.uniform(-kPi + kInteriorMargin, kPi - kInteriorMargin);
    return {re, im};
}

// I + strictly upper triangular part with entries in [-1, 1], resampled until
// its condition number is at most `cap`.
ComplexMatrix unit_upper(CounterRng& rng, int m, double cap) {
    double scale = 1.0;
    for (int attempt = 0;; ++attempt) {
        ComplexMatrix t = ComplexMatrix::Identity(m, m);
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) t(i, j) = scale * rng.uniform(-1.0, 1.0);
        }
        const HermEig e = herm_eig(t.adjoint() * t);
        const double cond = std::sqrt(e.values(m - 1) / e.values(0));
        if (cond <= cap) return t;
        if (attempt % 20 == 19) scale *= 0.5;
    }
}

// Real values in [lo, hi], pairwise either equal or at least `margin` apart
// modulo 2 pi, and at least `margin` away from every odd multiple of pi.
std::vector<double> congruence_free_values(CounterRng& rng, int count, double lo, double hi,
                                           double margin, double repeat_prob,
                                           std::vector<double> taken = {}) {
    auto acceptable = [&](double x) {
        const double k_odd = std::round((x - kPi) / (2.0 * kPi));
        if (std::abs(x - (2.0 * k_odd + 1.0) * kPi) < margin) return false;
        for (double v : taken) {
            const double d = x - v;
            const double k = std::round(d / (2.0 * kPi));
            if (std::abs(d - 2.0 * k * kPi) < margin) return false;
        }
        return true;
    };
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        if (!out.empty() && rng.uniform() < repeat_prob) {
            out.push_back(out[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(out.size()) - 1))]);
            continue;
        }
        double x = 0.0;
        bool found = false;
        for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
            x = rng.uniform(lo, hi);
            found = acceptable(x);
        }
        if (!found) {
            if (out.empty()) throw ConstructionFailed("no congruence-free value available");
            x = out.back();
        } else {
            taken.push_back(x);
        }
        out.push_back(x);
    }
    return out;
}

std::vector<Complex> i_fold(const std::vector<double>& xs) {
    const auto [k_lo, k_hi] = fold_window(xs);
    std::vector<Complex> out;
    for (double x : xs) out.emplace_back(0.0, fold_scalar(x, k_lo, k_hi));
    return out;
}

InstancePair interior_pair(const InstanceSpec& spec, CounterRng& rng) {
    const double repeat = param(spec, "repeat_prob", 0.2);
    const ComplexMatrix u = random_unitary(spec.n, rng);
    const auto d = draw_with_repeats(rng, spec.n, repeat, [&] { return interior_value(rng); });
    InstancePair p;
    p.x = conjugate_diag(u, d);
    p.y = p.x;
    p.metadata["k_lo"] = -1;
    p.metadata["k_hi"] = 0;
    return p;
}

InstancePair boundary_flip_pair(const InstanceSpec& spec, CounterRng& rng) {
    const int n = spec.n;
    const double repeat = param(spec, "repeat_prob", 0.2);
    const int m = std::clamp(static_cast<int>(param(spec, "boundary_count", rng.uniform_int(1, n))), 1, n);
    const double sign = param(spec, "flip_sign", rng.uniform() < 0.5 ? 1.0 : -1.0) >= 0 ? 1.0 : -1.0;
    const ComplexMatrix u = random_unitary(n, rng);

    const auto re = draw_with_repeats(rng, m, repeat, [&] { return rng.uniform(-2.0, 2.0); });
    std::vector<bool> flip(static_cast<std::size_t>(m));
    int flipped = 0;
    for (int j = 0; j < m; ++j) flipped += (flip[static_cast<std::size_t>(j)] = rng.uniform() < 0.5);
    if (flipped == 0) {
        flip[static_cast<std::size_t>(rng.uniform_int(0, m - 1))] = true;
        flipped = 1;
    }
    const auto interior = draw_with_repeats(rng, n - m, repeat, [&] { return interior_value(rng); });

    std::vector<Complex> dx, dy;
    for (int j = 0; j < m; ++j) {
        const auto js = static_cast<std::size_t>(j);
        dx.emplace_back(re[js], sign * kPi);
        dy.emplace_back(re[js], (flip[js] ? -sign : sign) * kPi);
    }
    for (const auto& z : interior) {
        dx.push_back(z);
        dy.push_back(z);
    }
    InstancePair p;
    p.x = conjugate_diag(u, dx);
    p.y = conjugate_diag(u, dy);
    p.metadata["k_lo"] = -1;
    p.metadata["k_hi"] = 0;
    p.metadata["boundary_count"] = m;
    p.metadata["flipped_count"] = flipped;
    p.metadata["flip_sign"] = sign;
    return p;
}

ComplexMatrix block_embed(const ComplexMatrix& block, int n) {
    ComplexMatrix out = ComplexMatrix::Identity(n, n);
    out.topLeftCorner(block.rows(), block.cols()) = block;
    return out;
}

InstancePair distinct_projection_pair(const InstanceSpec& spec, CounterRng& rng) {
    const int n = spec.n;
    const double repeat = param(spec, "repeat_prob", 0.2);
    const int m = std::clamp(static_cast<int>(param(spec, "boundary_count", n >= 2 ? std::max(2, n / 2) : 1)), 1, n);
    const double a = param(spec, "boundary_re", 0.0);

    std::vector<Complex> d;
    for (int j = 0; j < m; ++j) {
        const double sign = j == 0 ? 1.0 : j == 1 ? -1.0 : (rng.uniform() < 0.5 ? 1.0 : -1.0);
        d.emplace_back(a, sign * kPi);
    }
    for (const auto& z : draw_with_repeats(rng, n - m, repeat, [&] { return interior_value(rng); })) {
        d.push_back(z);
    }
    const ComplexMatrix w = random_unitary(n, rng);
    const ComplexMatrix ub = block_embed(random_unitary(m, rng), n);
    const ComplexMatrix vb = block_embed(random_unitary(m, rng), n);
    InstancePair p;
    p.x = conjugate_diag(w * ub, d);
    p.y = conjugate_diag(w * vb, d);
    p.metadata["k_lo"] = -1;
    p.metadata["k_hi"] = 0;
    p.metadata["boundary_count"] = m;
    p.metadata["boundary_re"] = a;
    return p;
}

InstancePair shifted_branch_pair(const InstanceSpec& spec, CounterRng& rng) {
    const int n = spec.n;
    const double repeat = param(spec, "repeat_prob", 0.2);
    const int default_lo = rng.uniform_int(-3, 2);
    const int k_lo = static_cast<int>(param(spec, "k_lo", default_lo));
    const int k_hi = static_cast<int>(param(spec, "k_hi", rng.uniform_int(k_lo + 1, std::max(k_lo + 1, 3))));
    if (k_hi <= k_lo) throw std::invalid_argument("ShiftedBranchPair needs k_hi > k_lo");
    const bool same = param(spec, "same_shifts", 0.0) != 0.0;
    const double boundary_prob = param(spec, "boundary_prob", 0.25);

    const ComplexMatrix u = random_unitary(n, rng);
    struct Slot {
        Complex base;
        bool boundary;
    };
    const auto slots = draw_with_repeats(rng, n, repeat, [&] {
        if (rng.uniform() < boundary_prob) return Slot{Complex(rng.uniform(-2.0, 2.0), 0.0), true};
        return Slot{interior_value(rng), false};
    });
    std::vector<Complex> dx, dy;
    for (const auto& s : slots) {
        // Boundary slots sit on Im = (2k+1) pi for k in [k_lo, k_hi]; interior
        // slots are shifted by 2 pi k for k in [k_lo + 1, k_hi].
        const int lo = s.boundary ? k_lo : k_lo + 1;
        const int kx = rng.uniform_int(lo, k_hi);
        const int ky = same ? kx : rng.uniform_int(lo, k_hi);
        if (s.boundary) {
            dx.emplace_back(s.base.real(), (2.0 * kx + 1.0) * kPi);
            dy.emplace_back(s.base.real(), (2.0 * ky + 1.0) * kPi);
        } else {
            dx.push_back(s.base + Complex(0.0, 2.0 * kPi * kx));
            dy.push_back(s.base + Complex(0.0, 2.0 * kPi * ky));
        }
    }
    InstancePair p;
    p.x = conjugate_diag(u, dx);
    p.y = conjugate_diag(u, dy);
    p.metadata["k_lo"] = k_lo;
    p.metadata["k_hi"] = k_hi;
    return p;
}

InstancePair non_normal_log_pair(const InstanceSpec& spec, CounterRng& rng) {
    const int n = spec.n;
    const int m = std::clamp(static_cast<int>(param(spec, "boundary_count", rng.uniform_int(1, n))), 1, n);
    const int max_shift = static_cast<int>(param(spec, "max_shift", 1.0));
    const double cap = param(spec, "cond_cap", 100.0);

    ComplexMatrix x0 = ComplexMatrix::Zero(n, n);
    ComplexMatrix y0 = ComplexMatrix::Zero(n, n);
    std::vector<double> planted;

    // Boundary block: e^X = e^Y = -I there.
    {
        std::vector<Complex> dx, dy;
        for (int j = 0; j < m; ++j) {
            dx.emplace_back(0.0, (rng.uniform() < 0.5 ? 1.0 : -1.0) * kPi);
            const double sy = rng.uniform() < 0.5 ? 1.0 : -1.0;
            const int k = rng.uniform_int(-max_shift, max_shift);
            dy.emplace_back(0.0, sy * kPi + 2.0 * kPi * k);
            planted.push_back(k + (sy - 1.0) / 2.0);
        }
        x0.topLeftCorner(m, m) = conjugate_diag(random_unitary(m, rng), dx);
        const ComplexMatrix t = unit_upper(rng, m, cap);
        Eigen::VectorXcd diag(m);
        for (int j = 0; j < m; ++j) diag(j) = dy[static_cast<std::size_t>(j)];
        y0.topLeftCorner(m, m) = t * diag.asDiagonal() * t.inverse();
    }

    // Real blocks: e^X = e^Y = e^rho I on each.
    std::vector<double> used;
    int start = m;
    while (start < n) {
        const int size = std::min(rng.uniform_int(1, 3), n - start);
        double rho = 0.0;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            rho = rng.uniform(-2.0, 2.0);
            if (std::none_of(used.begin(), used.end(), [&](double v) { return std::abs(v - rho) < 0.05; })) break;
        }
        used.push_back(rho);
        Eigen::VectorXcd diag(size);
        for (int j = 0; j < size; ++j) {
            const int k = rng.uniform_int(-max_shift, max_shift);
            diag(j) = Complex(rho, 2.0 * kPi * k);
            planted.push_back(k);
        }
        const ComplexMatrix t = unit_upper(rng, size, cap);
        x0.block(start, start, size, size) = rho * ComplexMatrix::Identity(size, size);
        y0.block(start, start, size, size) = t * diag.asDiagonal() * t.inverse();
        start += size;
    }
    const ComplexMatrix w = random_unitary(n, rng);
    InstancePair p;
    p.x = w * x0 * w.adjoint();
    p.y = w * y0 * w.adjoint();
    std::sort(planted.begin(), planted.end());
    p.metadata["k_lo"] = -1;
    p.metadata["k_hi"] = 0;
    p.metadata["boundary_count"] = m;
    p.metadata["planted_w_eigenvalues"] = planted;
    return p;
}

InstancePair self_adjoint_congruence_free(const InstanceSpec& spec, CounterRng& rng) {
    const double spread = param(spec, "spread", 3.0);
    const double margin = param(spec, "margin", 0.1);
    const double repeat = param(spec, "repeat_prob", 0.2);
    const auto xs = congruence_free_values(rng, spec.n, -spread * kPi, spread * kPi, margin, repeat);
    const ComplexMatrix u = random_unitary(spec.n, rng);
    std::vector<Complex> dx(xs.begin(), xs.end());
    InstancePair p;
    p.link = Link::ExpI;
    p.x = conjugate_diag(u, dx);
    p.x = ((p.x + p.x.adjoint()) * 0.5).eval();
    p.y = conjugate_diag(u, i_fold(xs));
    return p;
}

InstancePair odd_pi_eigenvalue(const InstanceSpec& spec, CounterRng& rng) {
    const int n = spec.n;
    const double margin = param(spec, "margin", 0.1);
    const double repeat = param(spec, "repeat_prob", 0.2);
    const int odd_mult = std::clamp(static_cast<int>(param(spec, "odd_mult", rng.uniform_int(1, std::min(2, n)))), 1, n);
    const int odd_k = static_cast<int>(param(spec, "odd_k", rng.uniform_int(-2, 1)));
    const double odd = (2.0 * odd_k + 1.0) * kPi;

    std::vector<double> xs(static_cast<std::size_t>(odd_mult), odd);
    for (double v : congruence_free_values(rng, n - odd_mult, -3.0 * kPi, 3.0 * kPi, margin, repeat)) {
        xs.push_back(v);
    }
    const ComplexMatrix u = random_unitary(n, rng);
    std::vector<Complex> dx(xs.begin(), xs.end());

    // Y = i fold(X) maps the odd eigenspace to +i pi; a random subspace of it is
    // moved to -i pi.
    const int flipped = rng.uniform_int(0, odd_mult);
    const ComplexMatrix q = random_unitary(odd_mult, rng);
    const ComplexMatrix sub = u.leftCols(odd_mult) * q.leftCols(flipped);
    InstancePair p;
    p.link = Link::ExpI;
    p.x = conjugate_diag(u, dx);
    p.x = ((p.x + p.x.adjoint()) * 0.5).eval();
    p.y = conjugate_diag(u, i_fold(xs)) - Complex(0.0, 2.0 * kPi) * (sub * sub.adjoint());
    p.metadata["odd_value_k"] = odd_k;
    p.metadata["odd_mult"] = odd_mult;
    p.metadata["flipped_dim"] = flipped;
    return p;
}

}  // namespace

InstancePair make_pair(const InstanceSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("InstanceSpec.n must be >= 1");
    CounterRng rng(spec.seed);
    InstancePair p;
    switch (spec.family) {
        case Family::InteriorPair: p = interior_pair(spec, rng); break;
        case Family::BoundaryFlipPair: p = boundary_flip_pair(spec, rng); break;
        case Family::DistinctProjectionPair: p = distinct_projection_pair(spec, rng); break;
        case Family::ShiftedBranchPair: p = shifted_branch_pair(spec, rng); break;
        case Family::NonNormalLogPair: p = non_normal_log_pair(spec, rng); break;
        case Family::SelfAdjointCongruenceFree: p = self_adjoint_congruence_free(spec, rng); break;
        case Family::OddPiEigenvalue: p = odd_pi_eigenvalue(spec, rng); break;
    }
    const ComplexMatrix ex = exp_general(p.link == Link::ExpI ? ComplexMatrix(kI * p.x) : p.x);
    const double gap = frob(ex - exp_general(p.y)) / frob(ex);
    if (!(gap <= 1e-10)) {
        throw ConstructionFailed(family_name(spec.family) + " n=" + std::to_string(spec.n) +
                                 " seed=" + std::to_string(spec.seed) +
                                 ": self-test residual " + std::to_string(gap));
    }
    p.metadata["link"] = p.link == Link::Exp ? "exp" : "exp_i";
    p.metadata["self_test_residual"] = gap;
    return p;
}

}  // namespace normlog
