#pragma once

#include <vector>

#include "toriheights/lattice.hpp"

namespace toriheights {

/// Cone of a simplicial fan, stored as the sorted list of indices of its
/// generating rays. The zero cone has an empty index list.
struct Cone {
    std::vector<int> ray_indices;

    int dim() const { return static_cast<int>(ray_indices.size()); }
    bool operator==(const Cone& other) const = default;
};

/// Complete regular fan. Construct via build_and_validate (or trivial() for
/// the rank-0 fan); instances are immutable after construction.
class Fan {
public:
    int rank() const { return rank_; }
    const std::vector<IntVec>& rays() const { return rays_; }
    /// All cones, including the zero cone and every face, deduplicated and
    /// sorted by (dimension, ray indices).
    const std::vector<Cone>& cones() const { return cones_; }
    const std::vector<Cone>& maximal_cones() const { return maximal_; }
    /// Inverse of the ray matrix of maximal cone k (columns = its rays);
    /// integral because the cone is regular.
    const IntMatrix& maximal_cone_inverse(int k) const { return inverses_[k]; }

    /// Index into cones() of the cone with the given sorted ray set, or -1.
    int cone_index(const std::vector<int>& sorted_ray_indices) const;

    static Fan trivial(); // the rank-0 fan: a single zero cone

private:
    friend Fan build_and_validate(int, std::vector<IntVec>, std::vector<std::vector<int>>);
    Fan() = default;

    int rank_ = 0;
    std::vector<IntVec> rays_;
    std::vector<Cone> cones_;
    std::vector<Cone> maximal_;
    std::vector<IntMatrix> inverses_;
};

/// Validates primitivity, regularity, proper pairwise intersections, and
/// completeness, then assembles the face lattice. Throws DomainError with
/// names NotPrimitive, NotRegular, BadIntersection, NotComplete, UnusedRay,
/// DuplicateRay.
Fan build_and_validate(int rank, std::vector<IntVec> rays,
                       std::vector<std::vector<int>> max_cones);

/// Piecewise linear function given by one rational value per ray.
struct PLFunction {
    RatVec values;

    static PLFunction anticanonical(std::size_t n_rays) {
        return PLFunction{RatVec(n_rays, Rat(1))};
    }
    static PLFunction constant(std::size_t n_rays, const Rat& v) {
        return PLFunction{RatVec(n_rays, v)};
    }
};

/// Point located in its unique relatively-interior cone, with the strictly
/// positive integral coordinates on that cone's rays.
struct LocateResult {
    Cone cone;
    IntVec coords; // aligned with cone.ray_indices
};

LocateResult locate(const Fan& fan, const IntVec& x);

Rat pl_eval(const Fan& fan, const PLFunction& phi, const IntVec& x);

/// Divisor class lattice Z^rays / M with the projection in chosen coordinates.
struct PicardLattice {
    int rank = 0;            // rays - fan rank when torsion-free
    IntMatrix projection;    // rank x rays, surjective
    IntMatrix section;       // rays x rank, projection * section = Id
    AbelianInvariants torsion_part; // torsion of the quotient (empty for regular fans)
};

PicardLattice picard_lattice(const Fan& fan);

/// Classes of the prime invariant divisors D_i: column i is the class of the
/// divisor attached to ray i. Duplicates are retained.
std::vector<IntVec> effective_cone_generators(const Fan& fan, const PicardLattice& pic);

/// Fan of projective d-space: rays e_1..e_d and -(e_1+...+e_d), maximal cones
/// all d-subsets of the rays.
Fan projective_space_fan(int d);

} // namespace toriheights
