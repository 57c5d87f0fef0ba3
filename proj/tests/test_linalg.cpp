#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "normlog/errors.hpp"
#include "normlog/linalg.hpp"
#include "oracles.hpp"

using namespace normlog;
using oracle::diag;
using oracle::mat2;

namespace {

const Complex I1{0.0, 1.0};

double unitarity(const ComplexMatrix& v) {
    return frob(v.adjoint() * v - ComplexMatrix::Identity(v.rows(), v.cols()));
}

bool is_diagonal(const ComplexMatrix& m, double tol) {
    ComplexMatrix off = m;
    off.diagonal().setZero();
    return frob(off) <= tol;
}

}  // namespace

TEST_CASE("herm_eig on diagonal input sorts eigenvalues") {
    const HermEig e = herm_eig(diag({3.0, 1.0}));
    CHECK(e.values(0) == doctest::Approx(1.0));
    CHECK(e.values(1) == doctest::Approx(3.0));
    CHECK(frob(e.vectors.cwiseAbs() - mat2(0, 1, 1, 0).cwiseAbs()) < 1e-14);
}

TEST_CASE("herm_eig of the swap matrix") {
    const HermEig e = herm_eig(mat2(0, 1, 1, 0));
    const Eigen::VectorXd ref = oracle::eigvalsh(mat2(0, 1, 1, 0));
    CHECK(e.values(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(e.values(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((e.values - ref).norm() < 1e-14);
}

TEST_CASE("herm_eig of the identity") {
    const HermEig e = herm_eig(ComplexMatrix::Identity(4, 4));
    for (int i = 0; i < 4; ++i) CHECK(e.values(i) == doctest::Approx(1.0));
    CHECK(unitarity(e.vectors) < 1e-14);
}

TEST_CASE("herm_eig rejects non-Hermitian and invalid input") {
    CHECK_THROWS_AS(herm_eig(mat2(0, 1, 0, 0)), NotHermitian);
    CHECK_THROWS_AS(herm_eig(ComplexMatrix(2, 3)), InvalidMatrix);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(herm_eig(bad), InvalidMatrix);
}

TEST_CASE("herm_eig on random Hermitian matrices matches the tridiagonal solver") {
    oracle::Rng rng(11);
    for (int n : {1, 2, 3, 5, 8, 16, 32}) {
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexMatrix h = oracle::hermitian_from(rng.gaussian(n));
            const HermEig e = herm_eig(h);
            const double nh = frob(h);
            const ComplexMatrix rebuilt = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
            CHECK(frob(rebuilt - h) <= 1e-10 * n * nh);
            CHECK(unitarity(e.vectors) <= 1e-10 * n);
            CHECK((e.values - oracle::eigvalsh(h)).norm() <= 1e-10 * n * nh);
        }
    }
}

TEST_CASE("simultaneous_diagonalize examples") {
    SUBCASE("already diagonal") {
        const ComplexMatrix v = simultaneous_diagonalize(diag({1.0, 2.0}), diag({3.0, 4.0}));
        CHECK(frob(v.cwiseAbs() - ComplexMatrix::Identity(2, 2).cwiseAbs()) < 1e-14);
    }
    SUBCASE("identity and swap") {
        const ComplexMatrix b = mat2(0, 1, 1, 0);
        const ComplexMatrix v = simultaneous_diagonalize(ComplexMatrix::Identity(2, 2), b);
        // hand eigenvectors of B are (1, 1)/sqrt2 and (1, -1)/sqrt2
        const double s = 1.0 / std::sqrt(2.0);
        for (int c = 0; c < 2; ++c) {
            CHECK(std::abs(v(0, c)) == doctest::Approx(s));
            CHECK(std::abs(v(1, c)) == doctest::Approx(s));
        }
        CHECK(is_diagonal(v.adjoint() * b * v, 1e-13));
    }
    SUBCASE("B = A") {
        const ComplexMatrix a = mat2(0, 1, 1, 0);
        const ComplexMatrix v = simultaneous_diagonalize(a, a);
        CHECK(is_diagonal(v.adjoint() * a * v, 1e-13));
    }
}

TEST_CASE("simultaneous_diagonalize rejects non-commuting pairs") {
    CHECK_THROWS_AS(simultaneous_diagonalize(diag({1.0, 2.0}), mat2(0, 1, 1, 0)), NotCommuting);
}

TEST_CASE("simultaneous_diagonalize on random commuting pairs with repeated eigenvalues") {
    oracle::Rng rng(5);
    for (int n : {2, 4, 8, 16}) {
        const ComplexMatrix u = rng.unitary(n);
        std::vector<Complex> da, db;
        for (int i = 0; i < n; ++i) {
            da.push_back(static_cast<double>(i / 2));  // pairs of repeated values in A
            db.push_back(rng.uniform(-3, 3));
        }
        const ComplexMatrix a = u * diag(da) * u.adjoint();
        const ComplexMatrix b = u * diag(db) * u.adjoint();
        const ComplexMatrix v = simultaneous_diagonalize(oracle::hermitian_from(a), oracle::hermitian_from(b));
        const double bound = 1e-12 * n * (frob(a) + frob(b));
        CHECK(is_diagonal(v.adjoint() * a * v, bound));
        CHECK(is_diagonal(v.adjoint() * b * v, bound));
        CHECK(unitarity(v) <= 1e-10 * n);
    }
}

TEST_CASE("is_normal examples") {
    CHECK_FALSE(is_normal(mat2(0, 1, 0, 0)));
    CHECK(is_normal(diag({1.0, I1, Complex(2, -3)})));
    CHECK(is_normal(mat2(0, 1, -1, 0)));
    oracle::Rng rng(3);
    CHECK(is_normal(rng.normal_with({1.0, I1, Complex(-2, 0.5), 4.0})));
}

TEST_CASE("modulus examples") {
    CHECK(frob(modulus(diag({kPi * I1, -kPi * I1})) - diag({kPi, kPi})) < 1e-13);
    CHECK(frob(modulus(ComplexMatrix::Zero(3, 3))) == 0.0);
    CHECK(frob(modulus(mat2(0, 2, 0, 0)) - diag({0.0, 2.0})) < 1e-13);
}

TEST_CASE("modulus is idempotent and squares to X*X") {
    oracle::Rng rng(17);
    for (int n : {1, 3, 6, 12}) {
        const ComplexMatrix x = rng.gaussian(n);
        const ComplexMatrix m = modulus(x);
        CHECK(frob(modulus(m) - m) <= 1e-10 * frob(m));
        CHECK(frob(m * m - x.adjoint() * x) <= 1e-10 * frob(x) * frob(x));
    }
}

TEST_CASE("commutant_basis examples") {
    SUBCASE("distinct diagonal") {
        const CommutantBasis b = commutant_basis(diag({1.0, 2.0}));
        CHECK(b.dim == 2);
        for (const auto& z : b.basis) CHECK(is_diagonal(z, 1e-12));
    }
    SUBCASE("identity") { CHECK(commutant_basis(ComplexMatrix::Identity(3, 3)).dim == 9); }
    SUBCASE("nilpotent Jordan block") {
        const ComplexMatrix y = mat2(0, 1, 0, 0);
        const CommutantBasis b = commutant_basis(y);
        REQUIRE(b.dim == 2);
        // span{I, Y}: every basis element is a I + b Y
        for (const auto& z : b.basis) {
            CHECK(std::abs(z(1, 0)) < 1e-12);
            CHECK(std::abs(z(0, 0) - z(1, 1)) < 1e-12);
        }
    }
}

TEST_CASE("commutant dimension is the sum of squared multiplicities") {
    oracle::Rng rng(23);
    const std::vector<std::vector<int>> patterns = {{1, 1, 1}, {2, 1}, {3}, {2, 2, 1}, {4, 1, 1}, {3, 3, 2}};
    for (const auto& mults : patterns) {
        std::vector<Complex> d;
        int expected = 0;
        for (std::size_t j = 0; j < mults.size(); ++j) {
            for (int r = 0; r < mults[j]; ++r) d.push_back(Complex(static_cast<double>(j), 0.5 * static_cast<double>(j)));
            expected += mults[j] * mults[j];
        }
        const ComplexMatrix y = rng.normal_with(d);
        const CommutantBasis b = commutant_basis(y);
        CHECK(b.dim == expected);
        CHECK(b.dim == oracle::commutant_dim(y));
        for (const auto& z : b.basis) CHECK(frob(commutator(y, z)) <= 1e-10 * frob(y));
    }
}

TEST_CASE("commutant dimension of non-normal matrices matches the rank oracle") {
    oracle::Rng rng(29);
    for (int n : {2, 3, 4, 5}) {
        ComplexMatrix y = ComplexMatrix::Zero(n, n);
        for (int i = 0; i + 1 < n; ++i) y(i, i + 1) = 1.0;  // single Jordan block
        const ComplexMatrix t = rng.gaussian(n) + 3.0 * ComplexMatrix::Identity(n, n);
        const ComplexMatrix ys = t * y * t.inverse();
        CHECK(commutant_basis(ys).dim == n);
        CHECK(oracle::commutant_dim(ys) == n);
    }
}

TEST_CASE("in_double_commutant examples") {
    oracle::Rng rng(31);
    CHECK(in_double_commutant(ComplexMatrix::Identity(3, 3), rng.gaussian(3)).member);
    const auto yes = in_double_commutant(diag({1.0, 2.0}), diag({3.0, 7.0}));
    CHECK(yes.member);
    CHECK(yes.residual < 1e-12);
    const auto no = in_double_commutant(mat2(0, 1, 0, 0), diag({1.0, 2.0}));
    CHECK_FALSE(no.member);
    CHECK(no.residual > Tolerances{}.check);
}

TEST_CASE("spectral projections of a normal Y lie in its double commutant") {
    oracle::Rng rng(37);
    for (int n : {2, 4, 6}) {
        const ComplexMatrix u = rng.unitary(n);
        std::vector<Complex> d;
        for (int i = 0; i < n; ++i) d.push_back(Complex(i % 3, -(i % 3)));
        const ComplexMatrix y = u * diag(d) * u.adjoint();
        const CommutantBasis basis = commutant_basis(y);
        for (int value = 0; value < 3; ++value) {
            ComplexMatrix e = ComplexMatrix::Zero(n, n);
            for (int i = 0; i < n; ++i) {
                if (i % 3 == value) e += u.col(i) * u.col(i).adjoint();
            }
            CHECK(in_double_commutant(e, basis).member);
        }
    }
}

TEST_CASE("scalar matrices are supported") {
    const HermEig e = herm_eig(diag({2.5}));
    CHECK(e.values(0) == doctest::Approx(2.5));
    CHECK(commutant_basis(diag({Complex(1, 1)})).dim == 1);
    CHECK(frob(modulus(diag({Complex(3, 4)})) - diag({5.0})) < 1e-14);
}
