#pragma once

#include <vector>

#include "toriheights/fan.hpp"
#include "toriheights/lattice.hpp"

namespace toriheights {

/// Finite group of lattice automorphisms preserving a fan, closed under
/// multiplication, with the induced ray permutation cached per element.
struct GaloisAction {
    int rank = 0;
    std::vector<IntMatrix> elements;                 // element 0 is the identity
    std::vector<std::vector<int>> ray_permutations;  // perm[g][i] = image ray of ray i
    std::size_t size() const { return elements.size(); }
};

/// Partition of ray indices into orbits, each sorted ascending, orbits ordered
/// by their minimal ray index. This fixes the canonical variable order used by
/// trace polynomials and Euler factors.
struct OrbitPartition {
    std::vector<std::vector<int>> orbits;
    std::vector<int> orbit_of; // ray index -> orbit index

    std::size_t size() const { return orbits.size(); }
};

/// Ray permutation induced by a single lattice automorphism, checking that it
/// maps the fan onto itself; throws DomainError("FanNotInvariant") otherwise.
std::vector<int> ray_permutation_of(const Fan& fan, const IntMatrix& g);

/// Closes the generators under multiplication (cap guards runaway input,
/// error GroupTooLarge) and verifies each element is unimodular and maps
/// every cone onto a cone.
GaloisAction close_and_verify(const Fan& fan, const std::vector<IntMatrix>& generators,
                              std::size_t cap = 10000);

OrbitPartition ray_orbits(const GaloisAction& action);

/// Orbits of a single permutation (used for Frobenius elements at one place).
OrbitPartition orbits_of_permutation(const std::vector<int>& perm);

/// True when the fixed sublattice of the action is zero.
bool is_anisotropic(const GaloisAction& action);

/// Fan of cones sigma ∩ N^G expressed in a basis of the fixed sublattice N^G.
/// Rank 0 fixed lattice yields the trivial fan.
Fan invariant_fan(const Fan& fan, const GaloisAction& action);

/// First cohomology of the cyclic group of the given order acting on Z^r via
/// the generator matrix: ker(norm) / im(g - 1). The group order matters, not
/// just the matrix order (an element may act through a quotient).
AbelianInvariants h1_cyclic(const IntMatrix& generator, long order);

/// Action on the character lattice dual to an action on the cocharacter
/// lattice: transpose of the inverse.
IntMatrix m_action(const IntMatrix& n_action);

/// Matrix of the action induced on divisor class coordinates by a ray
/// permutation; pic.projection intertwines it with the permutation action.
IntMatrix induced_pic_action(const PicardLattice& pic, const std::vector<int>& ray_perm);

struct BetaH {
    Int h;    // order of H^1(G, character lattice)
    Int beta; // order of H^1(G, divisor class lattice)
};

/// Both cohomological orders for a cyclic action; DomainError("NonCyclicGroup")
/// when no single element generates the group.
BetaH beta_and_h(const Fan& fan, const GaloisAction& action);

/// Number of ray orbits, which for anisotropic actions equals the invariant
/// divisor class rank; the function cross-checks the two computations.
int picard_rank_over_K(const Fan& fan, const GaloisAction& action);

} // namespace toriheights
