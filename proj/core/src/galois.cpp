#include "toriheights/galois.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toriheights/errors.hpp"
#include "toriheights/polyhedra.hpp"

namespace toriheights {

std::vector<int> ray_permutation_of(const Fan& fan, const IntMatrix& g) {
    const auto& rays = fan.rays();
    const int n = static_cast<int>(rays.size());
    std::vector<int> perm(n, -1);
    for (int i = 0; i < n; ++i) {
        IntVec image = g.apply(rays[i]);
        int j = -1;
        for (int k = 0; k < n; ++k)
            if (rays[k] == image) { j = k; break; }
        if (j < 0)
            throw DomainError("FanNotInvariant",
                              "image of ray " + std::to_string(i) + " is not a ray");
        perm[i] = j;
    }
    // A permutation of rays must also permute the maximal cones.
    std::set<std::vector<int>> max_sets;
    for (const Cone& c : fan.maximal_cones()) max_sets.insert(c.ray_indices);
    for (const Cone& c : fan.maximal_cones()) {
        std::vector<int> image;
        for (int i : c.ray_indices) image.push_back(perm[i]);
        std::sort(image.begin(), image.end());
        if (!max_sets.count(image))
            throw DomainError("FanNotInvariant", "a maximal cone maps outside the fan");
    }
    return perm;
}

GaloisAction close_and_verify(const Fan& fan, const std::vector<IntMatrix>& generators,
                              std::size_t cap) {
    const int d = fan.rank();
    for (const IntMatrix& g : generators) {
        if (g.rows() != d || g.cols() != d)
            throw DomainError("DimensionMismatch", "generator shape differs from fan rank");
        Int det = determinant(g);
        if (det != 1 && det != -1)
            throw DomainError("NotUnimodular", "generator determinant is not +-1");
    }

    // Breadth-first closure under multiplication, keyed by entries.
    auto key = [d](const IntMatrix& m) {
        IntVec k;
        k.reserve(d * d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) k.push_back(m.at(i, j));
        return k;
    };
    auto lex = [](const IntVec& a, const IntVec& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = cmp(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return false;
    };

    std::vector<IntMatrix> elements{IntMatrix::identity(d)};
    std::map<IntVec, int, decltype(lex)> seen(lex);
    seen.emplace(key(elements[0]), 0);
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const IntMatrix& g : generators) {
            IntMatrix prod = g * elements[head];
            IntVec k = key(prod);
            if (seen.count(k)) continue;
            if (elements.size() >= cap)
                throw DomainError("GroupTooLarge",
                                  "closure exceeded " + std::to_string(cap) + " elements");
            seen.emplace(std::move(k), static_cast<int>(elements.size()));
            elements.push_back(std::move(prod));
        }
    }

    GaloisAction action;
    action.rank = d;
    action.elements = std::move(elements);
    for (const IntMatrix& g : action.elements)
        action.ray_permutations.push_back(ray_permutation_of(fan, g));
    return action;
}

OrbitPartition ray_orbits(const GaloisAction& action) {
    if (action.ray_permutations.empty()) return OrbitPartition{};
    const int n = static_cast<int>(action.ray_permutations[0].size());
    OrbitPartition part;
    part.orbit_of.assign(n, -1);
    for (int start = 0; start < n; ++start) {
        if (part.orbit_of[start] >= 0) continue;
        // breadth-first over all permutations; start is minimal in its orbit
        std::vector<int> orbit{start};
        part.orbit_of[start] = static_cast<int>(part.orbits.size());
        for (std::size_t h = 0; h < orbit.size(); ++h)
            for (const std::vector<int>& perm : action.ray_permutations) {
                int img = perm[orbit[h]];
                if (part.orbit_of[img] < 0) {
                    part.orbit_of[img] = part.orbit_of[start];
                    orbit.push_back(img);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        part.orbits.push_back(std::move(orbit));
    }
    return part;
}

OrbitPartition orbits_of_permutation(const std::vector<int>& perm) {
    GaloisAction single;
    single.ray_permutations.push_back(perm);
    return ray_orbits(single);
}

bool is_anisotropic(const GaloisAction& action) {
    return fixed_sublattice(action.elements, action.rank).empty();
}

Fan invariant_fan(const Fan& fan, const GaloisAction& action) {
    const int d = fan.rank();
    std::vector<IntVec> basis = fixed_sublattice(action.elements, d);
    const int k = static_cast<int>(basis.size());
    if (k == 0) return Fan::trivial();
    if (k == d) return fan; // only the identity acts

    IntMatrix b = IntMatrix::from_cols(basis);

    // Slice each maximal cone by the fixed subspace; the full-dimensional
    // slices are the maximal cones of the invariant fan.
    std::map<IntVec, int> ray_index;
    std::vector<IntVec> inv_rays;
    std::set<std::vector<int>> inv_max;
    for (std::size_t c = 0; c < fan.maximal_cones().size(); ++c) {
        IntMatrix rows = fan.maximal_cone_inverse(static_cast<int>(c)) * b; // d x k
        std::vector<IntVec> ineq;
        for (long i = 0; i < rows.rows(); ++i) ineq.push_back(rows.row(i));
        std::vector<IntVec> ext = extreme_rays_of_inequalities(k, ineq);
        if (static_cast<int>(ext.size()) < k) continue;
        if (integer_rank(IntMatrix::from_cols(ext)) < k) continue; // lower-dimensional slice
        std::vector<int> idxs;
        for (const IntVec& r : ext) {
            auto it = ray_index.find(r);
            int idx;
            if (it == ray_index.end()) {
                idx = static_cast<int>(inv_rays.size());
                ray_index.emplace(r, idx);
                inv_rays.push_back(r);
            } else {
                idx = it->second;
            }
            idxs.push_back(idx);
        }
        std::sort(idxs.begin(), idxs.end());
        inv_max.insert(idxs);
    }

    std::vector<std::vector<int>> max_list(inv_max.begin(), inv_max.end());
    return build_and_validate(k, inv_rays, max_list);
}

IntMatrix m_action(const IntMatrix& n_action) {
    return unimodular_inverse(n_action).transposed();
}

AbelianInvariants h1_cyclic(const IntMatrix& generator, long order) {
    const long r = generator.rows();
    if (generator.cols() != r)
        throw DomainError("DimensionMismatch", "cyclic generator must be square");
    if (order < 1) throw DomainError("NotFiniteOrder", "order must be positive");

    IntMatrix norm(r, r);
    IntMatrix power = IntMatrix::identity(r);
    for (long i = 0; i < order; ++i) {
        norm = norm + power;
        power = power * generator;
    }
    if (!power.is_identity())
        throw DomainError("NotFiniteOrder", "generator^order is not the identity");

    std::vector<IntVec> kernel = integer_kernel(norm);
    if (kernel.empty()) return AbelianInvariants{};

    // Coordinates of the coboundary lattice im(g - 1) inside the (saturated)
    // kernel basis; integrality is guaranteed.
    IntMatrix kb = IntMatrix::from_cols(kernel);
    IntMatrix gm1 = generator - IntMatrix::identity(r);
    std::vector<IntVec> coords;
    for (long j = 0; j < r; ++j) {
        auto c = solve_integral(kb, gm1.col(j));
        if (!c)
            throw DomainError("InternalError", "coboundary outside cocycle lattice");
        coords.push_back(*c);
    }
    AbelianInvariants inv = quotient_invariants(static_cast<long>(kernel.size()), coords);
    if (inv.free_rank != 0)
        throw DomainError("InternalError", "first cohomology of a finite action must be finite");
    return inv;
}

IntMatrix induced_pic_action(const PicardLattice& pic, const std::vector<int>& ray_perm) {
    const long n = pic.projection.cols();
    if (static_cast<long>(ray_perm.size()) != n)
        throw DomainError("DimensionMismatch", "permutation length differs from ray count");
    // Permutation matrix sending basis vector i to basis vector perm[i].
    IntMatrix p(n, n);
    for (long i = 0; i < n; ++i) p.at(ray_perm[i], i) = 1;
    IntMatrix induced = pic.projection * p * pic.section;
    if (induced * pic.projection != pic.projection * p)
        throw DomainError("InternalError", "permutation action does not descend to classes");
    return induced;
}

namespace {

// Index of a cyclic generator of the whole group, or -1.
int cyclic_generator_index(const GaloisAction& action) {
    const std::size_t size = action.size();
    for (std::size_t g = 0; g < size; ++g) {
        auto ord = matrix_order(action.elements[g], static_cast<long>(size));
        if (!ord) continue;
        // the group generated by an element of full order is the whole group
        if (static_cast<std::size_t>(*ord) == size) return static_cast<int>(g);
    }
    return -1;
}

} // namespace

BetaH beta_and_h(const Fan& fan, const GaloisAction& action) {
    int gi = cyclic_generator_index(action);
    if (gi < 0) throw DomainError("NonCyclicGroup", "no element generates the whole group");
    const long order = static_cast<long>(action.size());

    AbelianInvariants h1m = h1_cyclic(m_action(action.elements[gi]), order);

    PicardLattice pic = picard_lattice(fan);
    if (!pic.torsion_part.torsion.empty())
        throw DomainError("PicardTorsion", "divisor class group has torsion");
    IntMatrix bp = induced_pic_action(pic, action.ray_permutations[gi]);
    AbelianInvariants h1p = h1_cyclic(bp, order);

    return BetaH{h1m.torsion_order(), h1p.torsion_order()};
}

int picard_rank_over_K(const Fan& fan, const GaloisAction& action) {
    if (!is_anisotropic(action))
        throw DomainError("NotAnisotropic", "action has nonzero fixed vectors");
    int l = static_cast<int>(ray_orbits(action).size());

    PicardLattice pic = picard_lattice(fan);
    std::vector<IntMatrix> induced;
    for (const std::vector<int>& perm : action.ray_permutations)
        induced.push_back(induced_pic_action(pic, perm));
    int fixed = static_cast<int>(fixed_sublattice(induced, pic.rank).size());
    if (fixed != l)
        throw DomainError("InternalError", "orbit count and invariant class rank disagree");
    return l;
}

} // namespace toriheights
