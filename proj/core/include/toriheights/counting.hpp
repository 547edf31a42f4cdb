#pragma once

#include <toriheights/fan.hpp>
#include <toriheights/lattice.hpp>

namespace toriheights {

// A Frobenius element acting on the cocharacter lattice N, together with the
// size q of the residue field.
struct FrobeniusDatum {
    IntMatrix matrix;
    Int q;
};

// Number of rational points of the d-dimensional torus whose Frobenius acts
// on N by phi.matrix: (-1)^d * det(phi - q*I).
Int count_torus(const FrobeniusDatum& phi, int d);

// Number of rational points of the complete toric variety attached to `fan`
// when Frobenius acts by phi.matrix. The action must permute the rays of the
// fan (FanNotInvariant otherwise). Sums, over the cones sigma whose ray set
// is stable, the torus-orbit counts (-1)^{d-dim sigma} det(phi_sigma - q*I)
// where phi_sigma is the induced action on M intersected with sigma-perp.
Int count_toric(const Fan& fan, const FrobeniusDatum& phi);

// Enumeration oracle for the norm-one torus of the degree-m extension of
// F_p. Builds F_{p^m} as F_p[x]/(f) for a searched irreducible f, walks all
// units and counts the kernel of a -> a^(1+p+...+p^(m-1)).
// Requires m in {2,3}, p prime, p^m <= 10^6.
Int brute_force_norm_torus(long p, int m);

}  // namespace toriheights
