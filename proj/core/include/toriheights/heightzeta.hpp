#pragma once

#include <toriheights/fan.hpp>
#include <toriheights/galois.hpp>
#include <toriheights/sr_ring.hpp>

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace toriheights {

// One place of the ground field: residue field size and the Frobenius action
// on N. Archimedean places carry the identity and use log q = 1.
struct LocalPlace {
    Int q = 0;
    IntMatrix frobenius;
    bool is_archimedean = false;
};

// Unit-modulus character values chi(n_j), one per Frobenius ray orbit. An
// empty vector means the trivial character.
using CharacterPhases = std::vector<std::complex<double>>;

// Canonical local height q^{phi(x)} (resp. e^{phi(x)} at archimedean places)
// of a torus point with logarithmic image x.
double local_height(const Fan& fan, const PLFunction& phi, const LocalPlace& place,
                    const IntVec& x);

// Everything about one local Euler factor that does not depend on q: the
// numerator polynomial with the degenerate orbits (ray sum n_j = 0) divided
// out exactly, the per-orbit data phi(n_j) and phases, and which orbits
// survive in the denominator.
struct EulerFactorData {
    MultigradedPolynomial numerator;
    OrbitPartition orbits;
    std::vector<IntVec> orbit_ray_sums;   // n_j
    std::vector<Rat> phi_values;          // phi(n_j)
    CharacterPhases phases;               // normalized to orbit count
    std::vector<bool> degenerate;         // n_j == 0
    bool cancelled = false;               // some degenerate orbit was divided out
};

EulerFactorData build_euler_factor(const Fan& fan, const IntMatrix& frobenius,
                                   const PLFunction& phi, const CharacterPhases& phases);

// Substitutes z_j = phase_j * q^{-phi(n_j)} into numerator / prod (1 - z_j)
// over the surviving orbits. Throws DivergentFactor when |z_j| >= 1 for a
// surviving orbit.
std::complex<double> evaluate_euler_factor(const EulerFactorData& data, const Int& q);

std::complex<double> local_euler_factor(const Fan& fan, const IntMatrix& frobenius,
                                        const Int& q, const PLFunction& phi,
                                        const CharacterPhases& phases);

// 1 / det(I - q^{-s} Phi_M), the local Artin L-factor of the torus.
double artin_local_factor(const IntMatrix& phi_m, const Int& q, double s);

// artin_local_factor times the Chow trace polynomial at q^{-s}; equals the
// local Euler factor of the height zeta function on the diagonal phi = s*phi_Sigma.
double local_factor_diagonal(const Fan& fan, const IntMatrix& frobenius, const Int& q,
                             double s);

// Assignment of a Frobenius matrix to each rational prime; nullopt marks a
// ramified prime to skip.
struct SplittingRule {
    std::function<std::optional<IntMatrix>(long)> frobenius_at;

    static SplittingRule all_split(int rank);
    // Kronecker symbol (D/p) picks the split or inert matrix; p | D skipped.
    static SplittingRule quadratic(const Int& discriminant, const IntMatrix& split_frobenius,
                                   const IntMatrix& inert_frobenius);
};

// prod over primes p <= prime_bound of the local factor with trivial phases.
// Requires phi(n_j) > 1 on every nondegenerate orbit at every unramified
// prime (absolute convergence); DivergentFactor otherwise.
double truncated_global_product(const Fan& fan, const SplittingRule& splitting,
                                const PLFunction& phi, long prime_bound);

// Complex-place Fourier transform of H^{-phi}: sum over maximal cones of
// prod_{e_j in sigma} 1/(s_j + 2*pi*i*<y,e_j>). Throws PoleHit when a factor
// vanishes.
std::complex<double> archimedean_fourier(const Fan& fan,
                                         const std::vector<std::complex<double>>& s,
                                         const std::vector<double>& y);

std::vector<long> primes_up_to(long bound);

// Kronecker symbol (a/p) for prime p (Legendre symbol at odd p, the standard
// 2-adic rule at p = 2).
int kronecker_symbol(const Int& a, long p);

}  // namespace toriheights
