#include "normlog/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "normlog/errors.hpp"
#include "normlog/logs.hpp"

namespace normlog {

namespace {

constexpr const char* kFiniteDimNote =
    "finite-dimensional instance: X is a bounded self-adjoint matrix";

double guard(double v) { return std::max(1.0, v); }

double rel1(double num, const ComplexMatrix& a) { return num / guard(frob(a)); }

double rel2(double num, const ComplexMatrix& a, const ComplexMatrix& b) {
    return num / (guard(frob(a)) * guard(frob(b)));
}

CheckReport start(const char* name) {
    CheckReport r;
    r.check_name = name;
    r.hypothesis_met = true;
    return r;
}

// Records a failed hypothesis; returns false so callers can `if (!require(...)) return r;`.
bool require(CheckReport& r, bool condition, const std::string& note) {
    if (!condition) {
        r.hypothesis_met = false;
        r.passed = false;
        r.append_note("hypothesis not met: " + note);
    }
    return condition;
}

void conclude(CheckReport& r, const std::string& name, double residual, double limit) {
    r.set_residual(name, residual);
    r.tolerances[name] = limit;
}

// passed iff the hypothesis holds and every residual with a tolerance is within it.
CheckReport& finish(CheckReport& r) {
    r.passed = r.hypothesis_met;
    for (const auto& [name, limit] : r.tolerances) {
        const auto it = r.residuals.find(name);
        if (it == r.residuals.end() || !(it->second <= limit)) r.passed = false;
    }
    return r;
}

// ||e^A - e^B||_F / ||e^A||_F, recorded as the gate residual.
bool exp_gate(CheckReport& r, const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol,
              const char* label) {
    const ComplexMatrix ea = exp_general(a);
    const ComplexMatrix eb = exp_general(b);
    const double gap = frob(ea - eb) / frob(ea);
    r.set_residual("gate_exp", gap);
    return require(r, gap <= tol.check, std::string(label) + " fails within tol_check");
}

bool is_hermitian(const ComplexMatrix& x, const Tolerances& tol) {
    return frob(x - x.adjoint()) <= tol.herm * guard(frob(x));
}

double cluster_radius(const SpectralDecomposition& dec, const Tolerances& tol) {
    return tol.cluster * guard(dec.norm);
}

// Distinct eigenvalues of a Hermitian decomposition equal to an odd multiple of pi.
int odd_pi_count(const SpectralDecomposition& dec, const Tolerances& tol) {
    const double radius = cluster_radius(dec, tol);
    int count = 0;
    for (const auto& c : dec.clusters) {
        const double t = c.lambda.real();
        const double k = std::round((t - kPi) / (2.0 * kPi));
        if (std::abs(t - (2.0 * k + 1.0) * kPi) <= radius) ++count;
    }
    return count;
}

ComplexMatrix i_times(const ComplexMatrix& x) { return kI * x; }

}  // namespace

CheckReport check_real_part(const ComplexMatrix& x, const ComplexMatrix& y, const Tolerances& tol) {
    CheckReport r = start("check_real_part");
    if (!require(r, is_normal(x, tol) && is_normal(y, tol), "X and Y must be normal")) return r;
    if (!exp_gate(r, x, y, tol, "e^X = e^Y")) return r;
    conclude(r, "real_part", rel1(frob(real_part(x) - real_part(y)), x), tol.check);
    return finish(r);
}

CheckReport check_spectral_agreement(const ComplexMatrix& x, const ComplexMatrix& y,
                                     const Tolerances& tol) {
    CheckReport r = start("check_spectral_agreement");
    if (!require(r, is_normal(x, tol) && is_normal(y, tol), "X and Y must be normal")) return r;
    const SpectralDecomposition dx = normal_eig(x, tol);
    const SpectralDecomposition dy = normal_eig(y, tol);
    if (!require(r, spectrum_in_strip(dx, tol) && spectrum_in_strip(dy, tol),
                 "spectra must lie in the strip |Im z| <= pi")) {
        return r;
    }
    const double n = static_cast<double>(x.rows());

    // Regions inside the open strip: one point region per interior eigenvalue,
    // and half-strips split at midpoints between distinct real and imaginary parts.
    const Region interior = Region::strip_interior();
    const double radius = std::max(cluster_radius(dx, tol), cluster_radius(dy, tol));
    std::vector<Complex> inside;
    for (const auto* dec : {&dx, &dy}) {
        for (const auto& c : dec->clusters) {
            if (interior.membership(c.lambda, tol.boundary, tol.snap) == Membership::Inside) {
                inside.push_back(c.lambda);
            }
        }
    }
    std::vector<Region> family{interior};
    for (const auto& z : inside) family.push_back(Region::points({z}, radius));
    auto split_points = [&](auto coord) {
        std::vector<double> v;
        for (const auto& z : inside) v.push_back(coord(z));
        std::sort(v.begin(), v.end());
        std::vector<double> mids;
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (v[i] - v[i - 1] > 2.0 * radius) mids.push_back(0.5 * (v[i] + v[i - 1]));
        }
        return mids;
    };
    for (double m : split_points([](Complex z) { return z.real(); })) {
        family.push_back(Region::rect(-Region::kInf, m, -kPi, kPi, true, true, false, false));
    }
    for (double m : split_points([](Complex z) { return z.imag(); })) {
        family.push_back(Region::rect(-Region::kInf, Region::kInf, -kPi, m, true, true, false, true));
    }
    double interior_residual = 0.0;
    for (const auto& omega : family) {
        interior_residual = std::max(interior_residual, frob(spectral_measure(dx, omega, tol) -
                                                             spectral_measure(dy, omega, tol)));
    }
    const Region lines = Region::strip_boundary();
    const double boundary_residual =
        frob(spectral_measure(dx, lines, tol) - spectral_measure(dy, lines, tol));
    const double re_residual = rel1(frob(real_part(x) - real_part(y)), x);
    const ComplexMatrix ex = exp_general(x);
    const double exp_residual = frob(ex - exp_general(y)) / frob(ex);

    const double limit = tol.check * n;
    const bool exp_equal = exp_residual <= tol.check;
    const bool conditions = interior_residual <= limit && re_residual <= limit;
    r.append_note("regions tested: " + std::to_string(family.size()));
    if (!require(r, exp_equal || conditions,
                 "neither e^X = e^Y nor the spectral conditions hold")) {
        r.set_residual("exp", exp_residual);
        return r;
    }
    r.append_note(exp_equal ? "direction: e^X = e^Y implies conditions"
                            : "direction: conditions imply e^X = e^Y");
    conclude(r, "interior_projections", interior_residual, limit);
    conclude(r, "boundary_sum", boundary_residual, limit);
    conclude(r, "real_part", re_residual, limit);
    conclude(r, "exp", exp_residual, tol.check);
    return finish(r);
}

CheckReport check_modulus_equal(const ComplexMatrix& x, const ComplexMatrix& y,
                                const Tolerances& tol) {
    CheckReport r = start("check_modulus_equal");
    if (!require(r, is_normal(x, tol) && is_normal(y, tol), "X and Y must be normal")) return r;
    if (!require(r,
                 spectrum_in_strip(normal_eig(x, tol), tol) &&
                     spectrum_in_strip(normal_eig(y, tol), tol),
                 "spectra must lie in the strip |Im z| <= pi")) {
        return r;
    }
    if (!exp_gate(r, x, y, tol, "e^X = e^Y")) return r;
    conclude(r, "modulus", rel1(frob(modulus(x, tol) - modulus(y, tol)), x), tol.check);
    return finish(r);
}

CheckReport check_modulus_commute(const ComplexMatrix& x, const ComplexMatrix& y,
                                  const Tolerances& tol) {
    CheckReport r = start("check_modulus_commute");
    require_valid(y, "Y");
    if (!require(r, is_normal(x, tol), "X must be normal")) return r;
    if (!require(r, spectrum_in_strip(normal_eig(x, tol), tol),
                 "spectrum of X must lie in the strip |Im z| <= pi")) {
        return r;
    }
    if (!exp_gate(r, x, y, tol, "e^X = e^Y")) return r;
    const ComplexMatrix mx = modulus(x, tol);
    conclude(r, "modulus_commutator", rel2(frob(commutator(mx, y)), x, y), tol.check);
    return finish(r);
}

CheckReport check_square_commute(const ComplexMatrix& x, const ComplexMatrix& y,
                                 const Tolerances& tol) {
    CheckReport r = start("check_square_commute");
    require_valid(y, "Y");
    if (!require(r, is_normal(x, tol), "X must be normal")) return r;
    const SpectralDecomposition dx = normal_eig(x, tol);
    if (!require(r, spectrum_in_strip(dx, tol),
                 "spectrum of X must lie in the strip |Im z| <= pi")) {
        return r;
    }
    if (!exp_gate(r, x, y, tol, "e^X = e^Y")) return r;

    const Region lines = Region::strip_boundary();
    const double radius = cluster_radius(dx, tol);
    int conjugate_pairs = 0;
    for (const auto& c : dx.clusters) {
        if (lines.membership(c.lambda, tol.boundary, tol.snap) != Membership::Inside) continue;
        if (std::abs(c.lambda - Complex(0.0, kPi)) <= tol.boundary ||
            std::abs(c.lambda - Complex(0.0, -kPi)) <= tol.boundary) {
            continue;
        }
        const Complex mirror = std::conj(c.lambda);
        for (const auto& other : dx.clusters) {
            if (std::abs(other.lambda - mirror) <= radius) ++conjugate_pairs;
        }
    }
    r.set_residual("conjugate_boundary_eigenvalues", conjugate_pairs);
    if (!require(r, conjugate_pairs == 0,
                 "a boundary eigenvalue of X other than +-i pi has its conjugate in the spectrum")) {
        return r;
    }
    const ComplexMatrix x2 = x * x;
    conclude(r, "square_commutator",
             frob(commutator(x2, y)) / (guard(frob(x)) * guard(frob(x)) * guard(frob(y))),
             tol.check);
    return finish(r);
}

CheckReport check_difference_formula(const ComplexMatrix& x, const ComplexMatrix& y, int k_lo,
                                     int k_hi, const Tolerances& tol) {
    CheckReport r = start("check_difference_formula");
    if (!require(r, is_normal(x, tol) && is_normal(y, tol), "X and Y must be normal")) return r;
    if (!exp_gate(r, x, y, tol, "e^X = e^Y")) return r;
    const StripProjections sp =
        strip_projections(normal_eig(x, tol), normal_eig(y, tol), k_lo, k_hi, tol);
    const Eigen::Index n = x.rows();
    ComplexMatrix rhs = ComplexMatrix::Zero(n, n);
    for (int k = k_lo; k <= k_hi; ++k) {
        rhs += Complex(0.0, 2.0 * k * kPi) * (sp.P.at(k) - sp.Q.at(k)) +
               Complex(0.0, (2.0 * k + 1.0) * kPi) * (sp.E.at(k) - sp.F.at(k));
    }
    const double limit = tol.check * static_cast<double>(n);
    conclude(r, "difference", rel1(frob((x - y) - rhs), x), limit);
    r.set_residual("coverage_x", sp.coverage_residual_x());
    r.set_residual("coverage_y", sp.coverage_residual_y());
    r.tolerances["coverage_x"] = limit;
    r.tolerances["coverage_y"] = limit;
    r.append_note("window [" + std::to_string(k_lo) + ", " + std::to_string(k_hi) + "]");
    return finish(r);
}

CheckReport check_corollary_cases(const ComplexMatrix& x, const ComplexMatrix& y,
                                  const Tolerances& tol) {
    CheckReport r = start("check_corollary_cases");
    if (!require(r, is_normal(x, tol) && is_normal(y, tol), "X and Y must be normal")) return r;
    const SpectralDecomposition dx = normal_eig(x, tol);
    const SpectralDecomposition dy = normal_eig(y, tol);
    if (!require(r, spectrum_in_strip(dx, tol) && spectrum_in_strip(dy, tol),
                 "spectra must lie in the strip |Im z| <= pi")) {
        return r;
    }
    if (!exp_gate(r, x, y, tol, "e^X = e^Y")) return r;
    const StripProjections sp = strip_projections(dx, dy, -1, 0, tol);
    const ComplexMatrix& e_plus = sp.E.at(0);
    const ComplexMatrix& e_minus = sp.E.at(-1);
    const ComplexMatrix& f_plus = sp.F.at(0);
    const ComplexMatrix& f_minus = sp.F.at(-1);
    const bool case_i = frob(e_plus) <= tol.check;
    const bool case_ii = frob(e_minus) <= tol.check;
    if (!require(r, case_i || case_ii, "E_1 and E_{-1} are both nonzero")) return r;

    const ComplexMatrix diff = x - y;
    const Complex two_pi_i(0.0, 2.0 * kPi);
    conclude(r, "commutator", rel2(frob(commutator(x, y)), x, y), tol.check);
    if (case_i) {
        conclude(r, "case_i_difference", rel1(frob(diff + two_pi_i * f_plus), x), tol.check);
        r.append_note("case i (E_1 = 0)");
    }
    if (case_ii) {
        conclude(r, "case_ii_difference", rel1(frob(diff - two_pi_i * f_minus), x), tol.check);
        r.append_note("case ii (E_{-1} = 0)");
    }
    if (case_i && case_ii) {
        conclude(r, "case_iii_equal", rel1(frob(diff), x), tol.check);
        r.append_note("case iii (E_1 = E_{-1} = 0)");
    }
    return finish(r);
}

CheckReport check_congruence_free(const SpectralDecomposition& dec_x, const Tolerances& tol) {
    CheckReport r = start("check_congruence_free");
    const double radius = cluster_radius(dec_x, tol);
    for (const auto& c : dec_x.clusters) {
        if (!require(r, std::abs(c.lambda.imag()) <= radius, "X must be self-adjoint")) return r;
    }
    int collisions = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dec_x.clusters.size(); ++i) {
        for (std::size_t j = i + 1; j < dec_x.clusters.size(); ++j) {
            const double d = dec_x.clusters[i].lambda.real() - dec_x.clusters[j].lambda.real();
            const double k = std::round(d / (2.0 * kPi));
            if (k == 0.0) continue;
            const double gap = std::abs(d - 2.0 * k * kPi);
            min_gap = std::min(min_gap, gap);
            if (gap <= radius) ++collisions;
        }
    }
    conclude(r, "congruent_pairs", collisions, 0.0);
    if (std::isfinite(min_gap)) r.set_residual("min_2pi_shift_gap", min_gap);
    return finish(r);
}

CheckReport check_congruence_free(const ComplexMatrix& x, const Tolerances& tol) {
    require_valid(x, "X");
    if (!is_hermitian(x, tol)) {
        CheckReport r = start("check_congruence_free");
        require(r, false, "X must be self-adjoint");
        return r;
    }
    return check_congruence_free(normal_eig(x, tol), tol);
}

CheckReport check_double_commutant(const ComplexMatrix& x, const ComplexMatrix& y,
                                   const Tolerances& tol) {
    CheckReport r = start("check_double_commutant");
    r.append_note(kFiniteDimNote);
    require_valid(y, "Y");
    if (!require(r, is_hermitian(x, tol), "X must be self-adjoint")) return r;
    if (!exp_gate(r, i_times(x), y, tol, "e^{iX} = e^Y")) return r;
    const SpectralDecomposition dx = normal_eig(x, tol);
    const CheckReport free = check_congruence_free(dx, tol);
    if (!require(r, free.passed, "X is not generalized 2 pi-congruence-free")) return r;

    const CommutantBasis commutant = commutant_basis(y, tol);
    double worst = 0.0;
    for (const auto& c : dx.clusters) {
        worst = std::max(worst, in_double_commutant(c.proj, commutant, tol).residual);
    }
    r.set_residual("commutant_dim", commutant.dim);
    conclude(r, "double_commutant", worst, tol.check);
    conclude(r, "commutator", rel2(frob(commutator(x, y)), x, y), tol.check);
    return finish(r);
}

CheckReport check_one_boundary_eigenvalue(const ComplexMatrix& x, const ComplexMatrix& y,
                                          const Tolerances& tol) {
    CheckReport r = start("check_one_boundary_eigenvalue");
    r.append_note(kFiniteDimNote);
    require_valid(y, "Y");
    if (!require(r, is_hermitian(x, tol), "X must be self-adjoint")) return r;
    if (!require(r, is_normal(y, tol), "Y must be normal")) return r;
    if (!require(r, spectrum_in_strip(normal_eig(y, tol), tol),
                 "spectrum of Y must lie in the strip |Im z| <= pi")) {
        return r;
    }
    if (!exp_gate(r, i_times(x), y, tol, "e^{iX} = e^Y")) return r;
    const int count = odd_pi_count(normal_eig(x, tol), tol);
    r.set_residual("odd_pi_eigenvalues", count);
    if (!require(r, count <= 1, "X has more than one eigenvalue in {(2k+1) pi}")) return r;
    conclude(r, "commutator", rel2(frob(commutator(x, y)), x, y), tol.check);
    return finish(r);
}

CheckReport check_y_in_bicommutant_of_exp(const ComplexMatrix& x, const ComplexMatrix& y,
                                          const Tolerances& tol) {
    CheckReport r = start("check_y_in_bicommutant_of_exp");
    r.append_note(kFiniteDimNote);
    require_valid(y, "Y");
    if (!require(r, is_hermitian(x, tol), "X must be self-adjoint")) return r;
    if (!require(r, is_normal(y, tol), "Y must be normal")) return r;
    if (!require(r, spectrum_in_strip(normal_eig(y, tol), tol),
                 "spectrum of Y must lie in the strip |Im z| <= pi")) {
        return r;
    }
    if (!exp_gate(r, i_times(x), y, tol, "e^{iX} = e^Y")) return r;
    const SpectralDecomposition dx = normal_eig(x, tol);
    const int count = odd_pi_count(dx, tol);
    r.set_residual("odd_pi_eigenvalues", count);
    if (!require(r, count == 0, "X has an eigenvalue in {(2k+1) pi}")) return r;

    const auto dc = in_double_commutant(y, exp_general(i_times(x)), tol);
    conclude(r, "double_commutant", dc.residual, tol.check);

    std::vector<double> spectrum;
    for (const auto& c : dx.clusters) spectrum.push_back(c.lambda.real());
    const auto [k_lo, k_hi] = fold_window(spectrum);
    const ComplexMatrix folded = fold_matrix(dx, k_lo, k_hi, tol);
    conclude(r, "fold_identity", rel1(frob(i_times(folded) - y), x), tol.check);
    return finish(r);
}

CheckReport check_kurepa(const ComplexMatrix& y, const Tolerances& tol) {
    CheckReport r = start("kurepa_decompose");
    KurepaDecomposition k;
    try {
        k = kurepa_decompose(y, tol);
    } catch (const ExpNotNormal& e) {
        require(r, false, "e^Y is not normal");
        return r;
    }
    conclude(r, "commute", k.commute_residual, tol.check);
    conclude(r, "integer_spectrum", k.integer_spectrum_residual, tol.integer);
    conclude(r, "reconstruction", k.reconstruction_residual, tol.check);
    // Diagonalizability is reported, not certified.
    r.set_residual("diagonalizable", k.diagonalizable_residual);
    return finish(r);
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {
        "check_real_part",          "check_spectral_agreement",
        "check_modulus_equal",      "check_modulus_commute",
        "check_square_commute",     "check_difference_formula",
        "check_corollary_cases",    "check_congruence_free",
        "check_double_commutant",   "check_one_boundary_eigenvalue",
        "check_y_in_bicommutant_of_exp", "kurepa_decompose"};
    return names;
}

CheckReport run_check(const std::string& name, const ComplexMatrix& x, const ComplexMatrix& y,
                      int k_lo, int k_hi, const Tolerances& tol) {
    using Pair = std::function<CheckReport(const ComplexMatrix&, const ComplexMatrix&,
                                           const Tolerances&)>;
    static const std::map<std::string, Pair> table = {
        {"check_real_part", check_real_part},
        {"check_spectral_agreement", check_spectral_agreement},
        {"check_modulus_equal", check_modulus_equal},
        {"check_modulus_commute", check_modulus_commute},
        {"check_square_commute", check_square_commute},
        {"check_corollary_cases", check_corollary_cases},
        {"check_double_commutant", check_double_commutant},
        {"check_one_boundary_eigenvalue", check_one_boundary_eigenvalue},
        {"check_y_in_bicommutant_of_exp", check_y_in_bicommutant_of_exp},
    };
    std::string key = name;
    if (key.rfind("check_", 0) != 0 && key != "kurepa_decompose" && key != "kurepa") {
        key = "check_" + key;
    }
    if (key == "check_difference_formula") return check_difference_formula(x, y, k_lo, k_hi, tol);
    if (key == "check_congruence_free") return check_congruence_free(x, tol);
    if (key == "kurepa_decompose" || key == "kurepa") return check_kurepa(y, tol);
    const auto it = table.find(key);
    if (it == table.end()) throw std::invalid_argument("unknown check: " + name);
    return it->second(x, y, tol);
}

}  // namespace normlog
