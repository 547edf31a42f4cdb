#pragma once

#include <toriheights/fan.hpp>
#include <toriheights/galois.hpp>
#include <toriheights/polyhedra.hpp>

#include <vector>

namespace toriheights {

// Pointed full-dimensional rational cone, stored canonically: `generators`
// are the primitive extreme rays in lex order and `facets` the primitive
// inner facet normals in lex order. Both lists come out of the same double
// description computation, so dualizing is a swap.
struct PolyhedralCone {
    int ambient_rank = 0;
    std::vector<IntVec> generators;
    std::vector<IntVec> facets;
};

// Canonicalize a generator list into a PolyhedralCone. Throws NotPointed when
// the cone contains a line and NotFullDimensional when it fails to span.
PolyhedralCone make_cone(int rank, const std::vector<IntVec>& generators);

// The dual cone {y : <x,y> >= 0 for all x in c}.
PolyhedralCone dual_cone(const PolyhedralCone& c);

// X(u) = sum_k weight_k / prod_i <u, f_{k,i}>, one term per simplicial piece
// of a triangulation of the dual cone.
struct SimplicialTerm {
    Rat weight;
    std::vector<IntVec> forms;
};

struct SimplicialTermSum {
    int ambient_rank = 0;
    std::vector<SimplicialTerm> terms;
};

// Characteristic function of c: triangulates the dual cone by pulling at the
// first remaining ray (canonical generator order) and records |det F| and the
// forms of every full-dimensional simplex.
SimplicialTermSum char_function(const PolyhedralCone& c);

// Same with an explicit pull priority: `priority[i]` is the rank of the i-th
// dual-cone generator when choosing the vertex to pull. Used to check
// triangulation independence.
SimplicialTermSum char_function_ordered(const PolyhedralCone& c, const std::vector<int>& priority);

// Exact evaluation. Throws PoleHit when u lies on a pole hyperplane of some
// form.
Rat eval_char(const SimplicialTermSum& x, const RatVec& u);

// The effective cone of the fan over the ground field: orbit-sums of the
// boundary divisor classes, written in a basis of the invariant part of the
// Picard lattice. The measure normalization of alpha is exactly "coordinates
// in that lattice".
struct InvariantEffectiveCone {
    PicardLattice pic;
    OrbitPartition orbits;
    IntMatrix invariant_basis;           // columns: basis of Pic^G inside Pic
    std::vector<IntVec> orbit_classes;   // orbit-sum divisor classes, invariant coordinates
    IntVec anticanonical;                // class of the anticanonical divisor
    PolyhedralCone cone;                 // generated by orbit_classes
};

InvariantEffectiveCone invariant_effective_cone(const Fan& fan, const GaloisAction& action);

// alpha = X_{Lambda_eff}(anticanonical), with Haar measure normalized to the
// dual of the invariant Picard lattice. Throws AnticanonicalOnBoundary when
// the anticanonical class is not interior to the effective cone.
Rat alpha(const Fan& fan, const GaloisAction& action);

struct ABInvariants {
    Rat a;
    long b = 0;
};

// a = inf{lambda : lambda*[L] + [K] effective}, computed from the facet
// inequalities of the invariant effective cone; b = codimension of the
// minimal face containing a*[L] + [K]. Throws ClassNotInterior when [L] is
// not interior to the effective cone.
ABInvariants a_b_invariants(const Fan& fan, const GaloisAction& action, const PLFunction& ell);

}  // namespace toriheights
