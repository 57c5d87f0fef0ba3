#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "normlog/errors.hpp"
#include "normlog/region.hpp"
#include "normlog/spectral.hpp"
#include "oracles.hpp"

using namespace normlog;
using oracle::diag;
using oracle::mat2;

namespace {

const Complex I1{0.0, 1.0};
const Tolerances kTol;

std::vector<Complex> random_strip_values(oracle::Rng& rng, int n) {
    std::vector<Complex> d;
    for (int i = 0; i < n; ++i) d.emplace_back(rng.uniform(-2, 2), rng.uniform(-3.0, 3.0));
    return d;
}

}  // namespace

TEST_CASE("normal_eig examples") {
    SUBCASE("repeated diagonal entry") {
        const auto dec = normal_eig(diag({Complex(1, 1), Complex(1, 1), 2.0}));
        REQUIRE(dec.clusters.size() == 2);
        CHECK(dec.clusters[0].lambda.real() == doctest::Approx(1.0));
        CHECK(dec.clusters[0].mult == 2);
        CHECK(dec.clusters[1].mult == 1);
    }
    SUBCASE("rotation generator") {
        const ComplexMatrix x = mat2(0, 1, -1, 0);
        const auto dec = normal_eig(x);
        REQUIRE(dec.clusters.size() == 2);
        const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
        for (const auto& c : dec.clusters) {
            // hand eigenvectors (1, +-i)/sqrt2 give P = (I -+ iX)/2 for lambda = +-i
            const ComplexMatrix expected = c.lambda.imag() > 0 ? ComplexMatrix((id - I1 * x) / 2.0)
                                                               : ComplexMatrix((id + I1 * x) / 2.0);
            CHECK(std::abs(std::abs(c.lambda.imag()) - 1.0) < 1e-13);
            CHECK(frob(c.proj - expected) < 1e-13);
        }
    }
    SUBCASE("zero matrix") {
        const auto dec = normal_eig(ComplexMatrix::Zero(3, 3));
        REQUIRE(dec.clusters.size() == 1);
        CHECK(std::abs(dec.clusters[0].lambda) == 0.0);
        CHECK(frob(dec.clusters[0].proj - ComplexMatrix::Identity(3, 3)) < 1e-14);
    }
}

TEST_CASE("normal_eig rejects non-normal input") {
    CHECK_THROWS_AS(normal_eig(mat2(0, 1, 0, 0)), NotNormal);
}

TEST_CASE("decomposition invariants on random normal matrices") {
    oracle::Rng rng(101);
    for (int n : {1, 2, 4, 8, 16, 32}) {
        for (int trial = 0; trial < 3; ++trial) {
            auto d = random_strip_values(rng, n);
            if (n > 2) d[1] = d[0];  // force one repeated eigenvalue
            const ComplexMatrix x = rng.normal_with(d);
            const auto dec = normal_eig(x);
            const auto r = decomposition_residuals(dec, x);
            const double bound = 1e-10 * n * std::max(1.0, frob(x));
            CHECK(r.idempotency <= bound);
            CHECK(r.hermiticity <= bound);
            CHECK(r.orthogonality <= bound);
            CHECK(r.resolution <= bound);
            CHECK(r.reconstruction <= bound);
            CHECK(r.min_separation > kTol.cluster * std::max(1.0, frob(x)));
            int total = 0;
            for (const auto& c : dec.clusters) total += c.mult;
            CHECK(total == n);
            if (n > 2) CHECK(static_cast<int>(dec.clusters.size()) == n - 1);
        }
    }
}

TEST_CASE("region membership at the strip edges") {
    const Region s = Region::strip();
    const Region open = Region::strip_interior();
    const Region lines = Region::strip_boundary();
    const double b = kTol.boundary, snap = kTol.snap;
    CHECK(s.membership({3.0, kPi}, b, snap) == Membership::Inside);
    CHECK(open.membership({3.0, kPi}, b, snap) == Membership::Outside);
    CHECK(lines.membership({3.0, -kPi}, b, snap) == Membership::Inside);
    CHECK(open.membership({0.0, kPi - 1e-10}, b, snap) == Membership::Ambiguous);
    CHECK(open.membership({0.0, kPi - 1e-6}, b, snap) == Membership::Inside);
    CHECK(s.membership({0.0, kPi + 1e-6}, b, snap) == Membership::Outside);
    CHECK(Region::plane().membership({1e300, -1e300}, b, snap) == Membership::Inside);
    CHECK(Region::empty().membership({0.0, 0.0}, b, snap) == Membership::Outside);
}

TEST_CASE("region combinators") {
    const double b = kTol.boundary, snap = kTol.snap;
    const Region upper = Region::rect(0, 1, 0, 1);
    CHECK(Region::conjugate(upper).membership({0.5, -0.5}, b, snap) == Membership::Inside);
    CHECK(Region::negate(upper).membership({-0.5, -0.5}, b, snap) == Membership::Inside);
    CHECK(Region::shift(upper, {0.0, 2.0 * kPi}).membership({0.5, 2.0 * kPi + 0.5}, b, snap) ==
          Membership::Inside);
    const Region u = Region::union_of({Region::hline(kPi), Region::points({{5.0, 0.0}}, kTol.point)});
    CHECK(u.membership({5.0, 0.0}, b, snap) == Membership::Inside);
    CHECK(u.membership({-2.0, kPi}, b, snap) == Membership::Inside);
    CHECK(u.membership({-2.0, 0.0}, b, snap) == Membership::Outside);
}

TEST_CASE("spectral_measure examples") {
    const auto dec = normal_eig(diag({Complex(1, kPi), 2.0}));
    CHECK(frob(spectral_measure(dec, Region::hline(kPi)) - diag({1.0, 0.0})) < 1e-14);
    CHECK(frob(spectral_measure(dec, Region::strip_interior()) - diag({0.0, 1.0})) < 1e-14);

    const auto dec3 = normal_eig(diag({I1, 2.0 * I1, 3.0 * I1}));
    const Region band = Region::rect(-Region::kInf, Region::kInf, 1, 3, true, true, false, true);
    CHECK(frob(spectral_measure(dec3, band) - diag({0.0, 1.0, 1.0})) < 1e-14);
}

TEST_CASE("spectral_measure refuses eigenvalues in an excluded edge band") {
    const auto dec = normal_eig(diag({Complex(0, kPi - 5e-10), 0.0}));
    CHECK_THROWS_AS(spectral_measure(dec, Region::strip_interior()), AmbiguousBoundary);
}

TEST_CASE("spectral measure properties") {
    oracle::Rng rng(7);
    for (int n : {2, 5, 9}) {
        auto d = random_strip_values(rng, n);
        d[0] = Complex(0.3, kPi);
        const ComplexMatrix x = rng.normal_with(d);
        const auto dec = normal_eig(x);
        const ComplexMatrix id = ComplexMatrix::Identity(n, n);
        CHECK(frob(spectral_measure(dec, Region::plane()) - id) < 1e-10);
        CHECK(frob(spectral_measure(dec, Region::empty())) == 0.0);
        const Region left = Region::rect(-Region::kInf, 0, -Region::kInf, Region::kInf, true, true, true, true);
        const Region right = Region::rect(0, Region::kInf, -Region::kInf, Region::kInf, false, true, true, true);
        const ComplexMatrix el = spectral_measure(dec, left);
        const ComplexMatrix er = spectral_measure(dec, right);
        CHECK(frob(spectral_measure(dec, Region::union_of({left, right})) - el - er) <= kTol.check);
        CHECK(frob(el + er - id) <= kTol.check);
        for (const ComplexMatrix& e : {el, er, spectral_measure(dec, Region::strip_boundary())}) {
            CHECK(frob(e * e - e) <= kTol.check);
            CHECK(frob(e - e.adjoint()) <= kTol.check);
            CHECK(frob(e * x - x * e) <= kTol.check * frob(x));
        }
    }
}

TEST_CASE("borel_calculus examples") {
    oracle::Rng rng(2);
    const ComplexMatrix x = rng.normal_with({1.0, I1, Complex(-1, 2)});
    const auto dec = normal_eig(x);
    CHECK(frob(borel_calculus(dec, [](Complex z) { return z; }) - x) <= kTol.check);
    const auto ez = [](Complex z) { return std::exp(z); };
    CHECK(frob(borel_calculus(normal_eig(diag({0.0, kPi * I1})), ez) - diag({1.0, -1.0})) < 1e-14);
    CHECK(frob(borel_calculus(normal_eig(diag({Complex(1, 1)})), [](Complex z) { return z * z; }) -
               diag({Complex(0, 2)})) < 1e-14);
    CHECK(frob(borel_calculus(dec, ez) - oracle::taylor_exp(x)) < 1e-12);
}

TEST_CASE("verify_pushforward examples") {
    const auto ez = [](Complex z) { return std::exp(z); };
    const auto sq = [](Complex z) { return z * z; };
    const Region minus_one = Region::points({{-1.0, 0.0}}, kTol.point);
    auto r = verify_pushforward(normal_eig(diag({0.0, kPi * I1})), ez, minus_one);
    CHECK(r.passed);
    r = verify_pushforward(normal_eig(oracle::Rng(4).normal_with({1.0, I1})), [](Complex z) { return z; },
                           Region::plane());
    CHECK(r.passed);
    r = verify_pushforward(normal_eig(diag({I1, -I1})), sq, minus_one);
    CHECK(r.passed);
}

TEST_CASE("fold_scalar examples and errors") {
    CHECK(fold_scalar(0.0, -1, 0) == 0.0);
    CHECK(fold_scalar(3.0 * kPi, -1, 1) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(fold_scalar(-kPi, -1, 0) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK_THROWS_AS(fold_scalar(3.5 * kPi, -1, 1), OutOfFoldRange);
    CHECK_THROWS_AS(fold_scalar(-3.5 * kPi, 0, 1), OutOfFoldRange);
}

TEST_CASE("fold_scalar agrees with the scanning oracle and preserves e^{it}") {
    oracle::Rng rng(43);
    for (int i = 0; i < 2000; ++i) {
        const double t = rng.uniform(-9.0 * kPi, 9.0 * kPi);
        const double f = fold_scalar(t, -5, 5);
        CHECK(f == doctest::Approx(oracle::brute_fold(t)).epsilon(1e-12));
        CHECK(f > -kPi);
        CHECK(f <= kPi);
        CHECK(std::abs(std::exp(Complex(0, f)) - std::exp(Complex(0, t))) <= 1e-12);
    }
    for (int k = -4; k <= 4; ++k) {
        CHECK(fold_scalar((2 * k + 1) * kPi, -5, 5) == kPi);
    }
}

TEST_CASE("fold_window covers its inputs") {
    const std::vector<double> ts = {-4.0, 0.5, 7.0};
    const auto [lo, hi] = fold_window(ts);
    for (double t : ts) CHECK_NOTHROW(fold_scalar(t, lo, hi));
}

TEST_CASE("fold_matrix on a Hermitian matrix") {
    oracle::Rng rng(47);
    const ComplexMatrix u = rng.unitary(4);
    const std::vector<Complex> d = {-5.0, 0.5, 4.0, 8.0};
    const ComplexMatrix x = u * diag(d) * u.adjoint();
    std::vector<Complex> folded;
    for (auto v : d) folded.push_back(oracle::brute_fold(v.real()));
    const ComplexMatrix expected = u * diag(folded) * u.adjoint();
    CHECK(frob(fold_matrix(normal_eig(x), -2, 2) - expected) < 1e-10);
}

TEST_CASE("strip_projections examples") {
    SUBCASE("opposite boundary points") {
        const ComplexMatrix x = diag({kPi * I1, -kPi * I1});
        const auto sp = strip_projections(normal_eig(x), normal_eig(-x), -1, 0);
        CHECK(frob(sp.E.at(0) - diag({1.0, 0.0})) < 1e-14);
        CHECK(frob(sp.F.at(0) - diag({0.0, 1.0})) < 1e-14);
        CHECK(frob(sp.E.at(-1) - diag({0.0, 1.0})) < 1e-14);
        CHECK(frob(sp.F.at(-1) - diag({1.0, 0.0})) < 1e-14);
        for (const auto& [k, p] : sp.P) CHECK(frob(p) == 0.0);
        for (const auto& [k, q] : sp.Q) CHECK(frob(q) == 0.0);
        CHECK(sp.coverage_residual_x() < 1e-14);
        CHECK(sp.coverage_residual_y() < 1e-14);
    }
    SUBCASE("zero scalar") {
        const auto dec = normal_eig(diag({0.0}));
        const auto sp = strip_projections(dec, dec, -1, 0);
        CHECK(frob(sp.P.at(0) - diag({1.0})) == 0.0);
        CHECK(frob(sp.Q.at(0) - diag({1.0})) == 0.0);
        for (const auto& [k, e] : sp.E) CHECK(frob(e) == 0.0);
    }
    SUBCASE("3 lies in (-pi, pi) and 3 - 2 pi below -pi") {
        const auto dx = normal_eig(diag({3.0 * I1}));
        const auto dy = normal_eig(diag({3.0 * I1 - 2.0 * kPi * I1}));
        CHECK_THROWS_AS(strip_projections(dx, dy, -1, 1), SpectrumOutOfRange);
        const auto sp = strip_projections(dx, dy, -2, 1);
        CHECK(frob(sp.P.at(0) - diag({1.0})) == 0.0);
        CHECK(frob(sp.Q.at(-1) - diag({1.0})) == 0.0);
    }
}

TEST_CASE("strip_projections rejects empty windows") {
    const auto dec = normal_eig(diag({0.0}));
    CHECK_THROWS_AS(strip_projections(dec, dec, 1, 0), SpectrumOutOfRange);
}

TEST_CASE("strip projection coverage on random spectra") {
    oracle::Rng rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform_int(1, 8);
        const int k_lo = rng.uniform_int(-3, 1);
        const int k_hi = rng.uniform_int(k_lo + 1, 3);
        std::vector<Complex> d;
        for (int i = 0; i < n; ++i) {
            if (rng.uniform(0, 1) < 0.3) {
                d.emplace_back(rng.uniform(-1, 1), (2 * rng.uniform_int(k_lo, k_hi) + 1) * kPi);
            } else {
                d.emplace_back(rng.uniform(-1, 1), (2 * rng.uniform_int(k_lo + 1, k_hi) + rng.uniform(-0.9, 0.9)) * kPi);
            }
        }
        const auto dec = normal_eig(rng.normal_with(d));
        const auto sp = strip_projections(dec, dec, k_lo, k_hi);
        CHECK(sp.coverage_residual_x() <= kTol.check);
    }
}

TEST_CASE("spectrum_in_strip") {
    CHECK(spectrum_in_strip(normal_eig(diag({Complex(5, kPi), Complex(-1, -kPi)}))));
    CHECK_FALSE(spectrum_in_strip(normal_eig(diag({Complex(0, 3.2)}))));
}
