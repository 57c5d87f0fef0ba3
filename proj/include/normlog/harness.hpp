#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "normlog/linalg.hpp"

namespace normlog {

/// Counter-based generator: the i-th output (i = 1, 2, ...) is
/// splitmix64_finalize(seed + i * 0x9E3779B97F4A7C15). Uniform doubles take the
/// top 53 bits; normal variates use the cosine branch of Box-Muller on
/// (1 - u1, u2) drawn in that order.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    int uniform_int(int lo, int hi);        // inclusive
    double normal();
    Complex complex_normal();               // E|z|^2 = 1

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

enum class Family {
    InteriorPair,
    BoundaryFlipPair,
    DistinctProjectionPair,
    ShiftedBranchPair,
    NonNormalLogPair,
    SelfAdjointCongruenceFree,
    OddPiEigenvalue,
};

const std::vector<Family>& all_families();
std::string family_name(Family f);
/// Throws std::invalid_argument for unknown names.
Family family_from_name(const std::string& name);

struct InstanceSpec {
    Family family = Family::InteriorPair;
    int n = 2;
    std::uint64_t seed = 0;
    /// Family-specific overrides; see make_pair.
    std::map<std::string, double> params;
};

/// How X and Y are linked: e^X = e^Y, or e^{iX} = e^Y for self-adjoint X.
enum class Link { Exp, ExpI };

struct InstancePair {
    ComplexMatrix x;
    ComplexMatrix y;
    Link link = Link::Exp;
    nlohmann::json metadata = nlohmann::json::object();
};

/// Haar-distributed unitary from QR (Gram-Schmidt, twice) of a seeded complex Gaussian matrix.
ComplexMatrix random_unitary(int n, std::uint64_t seed);
ComplexMatrix random_unitary(int n, CounterRng& rng);

/// Builds a pair for the family and self-tests its defining equation; throws
/// ConstructionFailed when ||e^X - e^Y||_F > 1e-10 ||e^X||_F (e^{iX} for ExpI).
///
/// Recognized params (all optional):
///   every family      repeat_prob      chance an eigenvalue repeats an earlier one (0.2)
///   BoundaryFlipPair  boundary_count, flip_sign (+1: X on Im = pi, -1: X on Im = -pi)
///   DistinctProjectionPair  boundary_count, boundary_re (shared real part, default 0)
///   ShiftedBranchPair k_lo, k_hi, same_shifts (0/1), boundary_prob (0.25)
///   NonNormalLogPair  boundary_count, max_shift (1), cond_cap (100)
///   SelfAdjointCongruenceFree  spread (3, eigenvalues in [-spread pi, spread pi]), margin (0.1)
///   OddPiEigenvalue   odd_mult, odd_k, margin (0.1)
InstancePair make_pair(const InstanceSpec& spec);

}  // namespace normlog
