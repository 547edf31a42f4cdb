#include "toriheights/fan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "toriheights/errors.hpp"
#include "toriheights/polyhedra.hpp"

namespace toriheights {

namespace {

std::string indices_str(const std::vector<int>& idx) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
    os << "}";
    return os.str();
}

std::string vec_str(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

} // namespace

Fan Fan::trivial() {
    Fan f;
    f.rank_ = 0;
    f.cones_.push_back(Cone{});
    f.maximal_.push_back(Cone{});
    return f;
}

int Fan::cone_index(const std::vector<int>& sorted_ray_indices) const {
    for (std::size_t i = 0; i < cones_.size(); ++i)
        if (cones_[i].ray_indices == sorted_ray_indices) return static_cast<int>(i);
    return -1;
}

Fan build_and_validate(int rank, std::vector<IntVec> rays,
                       std::vector<std::vector<int>> max_cones) {
    if (rank < 1) throw DomainError("DimensionMismatch", "fan rank must be >= 1");
    if (rays.empty()) throw DomainError("DimensionMismatch", "fan needs at least one ray");
    const int n = static_cast<int>(rays.size());
    for (const IntVec& r : rays)
        if (static_cast<int>(r.size()) != rank)
            throw DomainError("DimensionMismatch", "ray length differs from fan rank");

    // Primitive, nonzero, pairwise distinct rays.
    for (int i = 0; i < n; ++i) {
        if (is_zero_vector(rays[i]))
            throw DomainError("NotPrimitive", "ray " + std::to_string(i) + " is zero");
        if (content(rays[i]) != 1)
            throw DomainError("NotPrimitive",
                              "ray " + std::to_string(i) + " = " + vec_str(rays[i]));
        for (int j = 0; j < i; ++j)
            if (rays[i] == rays[j])
                throw DomainError("DuplicateRay", "rays " + std::to_string(j) + " and " +
                                                      std::to_string(i) + " coincide");
    }

    // Normalize and deduplicate the maximal cone index sets.
    std::set<std::vector<int>> max_sets;
    for (std::vector<int>& c : max_cones) {
        for (int i : c)
            if (i < 0 || i >= n)
                throw DomainError("DimensionMismatch", "ray index out of range in cone");
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end())
            throw DomainError("NotRegular", "repeated ray in cone " + indices_str(c));
        if (c.empty())
            throw DomainError("DimensionMismatch", "empty maximal cone");
        max_sets.insert(c);
    }
    if (max_sets.empty()) throw DomainError("DimensionMismatch", "fan needs a maximal cone");

    std::vector<std::vector<int>> maxv(max_sets.begin(), max_sets.end());

    // Regularity of maximal cones: generators extend to a Z-basis. For
    // full-dimensional cones that means |det| = 1; lower-dimensional maximal
    // cones are dimension failures reported under completeness.
    for (const std::vector<int>& c : maxv) {
        std::vector<IntVec> gens;
        for (int i : c) gens.push_back(rays[i]);
        IntMatrix g = IntMatrix::from_cols(gens);
        std::vector<Int> diag = smith_diagonal(g);
        bool extends = std::all_of(diag.begin(), diag.end(), [](const Int& d) { return d == 1; });
        if (static_cast<int>(c.size()) > rank || !extends) {
            if (static_cast<int>(c.size()) == rank) {
                throw DomainError("NotRegular", "cone " + indices_str(c) +
                                                    " is not generated by a lattice basis");
            }
            throw DomainError("NotRegular",
                              "cone " + indices_str(c) + " generators are not part of a basis");
        }
    }
    for (const std::vector<int>& c : maxv)
        if (static_cast<int>(c.size()) != rank)
            throw DomainError("NotComplete",
                              "maximal cone " + indices_str(c) + " is not full-dimensional");

    // Cached inverses of the ray matrices (integral: the cones are regular).
    std::vector<IntMatrix> inverses;
    for (const std::vector<int>& c : maxv) {
        std::vector<IntVec> gens;
        for (int i : c) gens.push_back(rays[i]);
        inverses.push_back(unimodular_inverse(IntMatrix::from_cols(gens)));
    }

    // Every ray must support some maximal cone.
    {
        std::vector<bool> used(n, false);
        for (const std::vector<int>& c : maxv)
            for (int i : c) used[i] = true;
        for (int i = 0; i < n; ++i)
            if (!used[i])
                throw DomainError("UnusedRay",
                                  "ray " + std::to_string(i) + " lies in no maximal cone");
    }

    // Pairwise intersections must be common faces. For regular cones this is
    // checked exactly: the extreme rays of sigma ∩ tau (a pointed cone cut out
    // by both coordinate systems) must be supported on the shared rays.
    const int m = static_cast<int>(maxv.size());
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            std::vector<int> common;
            std::set_intersection(maxv[a].begin(), maxv[a].end(), maxv[b].begin(),
                                  maxv[b].end(), std::back_inserter(common));
            std::vector<IntVec> ineq;
            for (int i = 0; i < rank; ++i) ineq.push_back(inverses[a].row(i));
            for (int i = 0; i < rank; ++i) ineq.push_back(inverses[b].row(i));
            std::vector<IntVec> ext = extreme_rays_of_inequalities(rank, ineq);
            for (const IntVec& v : ext) {
                IntVec coords = inverses[a].apply(v);
                bool ok = true;
                for (int i = 0; i < rank; ++i) {
                    if (coords[i] == 0) continue;
                    int ray = maxv[a][i];
                    if (!std::binary_search(common.begin(), common.end(), ray)) ok = false;
                }
                if (!ok)
                    throw DomainError("BadIntersection",
                                      "cones " + indices_str(maxv[a]) + " and " +
                                          indices_str(maxv[b]) +
                                          " do not meet in a common face");
            }
        }

    // Completeness: every facet lies in exactly two maximal cones and the
    // facet-adjacency graph is connected. Together with proper pairwise
    // intersections this forces the support to be all of R^rank.
    if (rank == 1) {
        if (m != 2)
            throw DomainError("NotComplete", "rank-1 fan must have exactly the two rays");
    } else {
        std::map<std::vector<int>, std::vector<int>> facet_owners;
        for (int a = 0; a < m; ++a)
            for (int drop = 0; drop < rank; ++drop) {
                std::vector<int> f = maxv[a];
                f.erase(f.begin() + drop);
                facet_owners[f].push_back(a);
            }
        for (const auto& [f, owners] : facet_owners)
            if (owners.size() != 2)
                throw DomainError("NotComplete",
                                  "facet " + indices_str(f) + " lies in " +
                                      std::to_string(owners.size()) + " maximal cones");
        // adjacency connectivity
        std::vector<int> comp(m, -1);
        std::vector<int> stack{0};
        comp[0] = 0;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (const auto& [f, owners] : facet_owners)
                if (owners[0] == a || owners[1] == a) {
                    int b = owners[0] == a ? owners[1] : owners[0];
                    if (comp[b] < 0) {
                        comp[b] = 0;
                        stack.push_back(b);
                    }
                }
        }
        for (int a = 0; a < m; ++a)
            if (comp[a] < 0)
                throw DomainError("NotComplete", "maximal cones form a disconnected complex");
    }

    // Face lattice: all subsets of each maximal cone (the cones are
    // simplicial), deduplicated; the zero cone is stored explicitly.
    std::set<std::vector<int>> faces;
    for (const std::vector<int>& c : maxv) {
        const int k = static_cast<int>(c.size());
        for (int mask = 0; mask < (1 << k); ++mask) {
            std::vector<int> f;
            for (int i = 0; i < k; ++i)
                if (mask & (1 << i)) f.push_back(c[i]);
            faces.insert(f);
        }
    }

    Fan fan;
    fan.rank_ = rank;
    fan.rays_ = std::move(rays);
    for (const std::vector<int>& c : maxv) fan.maximal_.push_back(Cone{c});
    fan.inverses_ = std::move(inverses);
    std::vector<Cone> cones;
    for (const std::vector<int>& f : faces) cones.push_back(Cone{f});
    std::sort(cones.begin(), cones.end(), [](const Cone& x, const Cone& y) {
        if (x.dim() != y.dim()) return x.dim() < y.dim();
        return x.ray_indices < y.ray_indices;
    });
    fan.cones_ = std::move(cones);
    return fan;
}

LocateResult locate(const Fan& fan, const IntVec& x) {
    if (static_cast<int>(x.size()) != fan.rank())
        throw DomainError("DimensionMismatch", "point length differs from fan rank");
    if (fan.rank() == 0 || is_zero_vector(x)) return LocateResult{Cone{}, IntVec{}};

    const auto& maxv = fan.maximal_cones();
    for (std::size_t k = 0; k < maxv.size(); ++k) {
        IntVec coords = fan.maximal_cone_inverse(static_cast<int>(k)).apply(x);
        bool inside = std::all_of(coords.begin(), coords.end(),
                                  [](const Int& c) { return c >= 0; });
        if (!inside) continue;
        Cone face;
        IntVec pos;
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] > 0) {
                face.ray_indices.push_back(maxv[k].ray_indices[i]);
                pos.push_back(coords[i]);
            }
        // ray_indices of the maximal cone are sorted, so the face is too
        return LocateResult{std::move(face), std::move(pos)};
    }
    throw DomainError("NotComplete", "point " + vec_str(x) + " lies in no cone");
}

Rat pl_eval(const Fan& fan, const PLFunction& phi, const IntVec& x) {
    if (phi.values.size() != fan.rays().size())
        throw DomainError("DimensionMismatch", "one value per ray required");
    LocateResult loc = locate(fan, x);
    Rat s = 0;
    for (std::size_t i = 0; i < loc.coords.size(); ++i)
        s += Rat(loc.coords[i]) * phi.values[loc.cone.ray_indices[i]];
    s.canonicalize();
    return s;
}

PicardLattice picard_lattice(const Fan& fan) {
    const int n = static_cast<int>(fan.rays().size());
    const int d = fan.rank();
    // Embedding of the character lattice: m -> (<m, ray_i>)_i, an n x d matrix
    // whose rows are the rays.
    IntMatrix e = IntMatrix::from_rows(fan.rays());
    SmithForm f = smith_normal_form(e);

    long nonzero = 0;
    AbelianInvariants tor;
    for (long i = 0; i < std::min<long>(n, d); ++i)
        if (f.s.at(i, i) != 0) {
            ++nonzero;
            if (f.s.at(i, i) >= 2) tor.torsion.push_back(f.s.at(i, i));
        }
    // Completeness makes the rays span, so nonzero == d.
    if (nonzero != d)
        throw DomainError("InternalError", "rays of a complete fan must span");

    PicardLattice pic;
    pic.rank = n - d;
    pic.torsion_part = tor;
    pic.projection = IntMatrix(n - d, n);
    pic.section = IntMatrix(n, n - d);
    for (int i = 0; i < n - d; ++i)
        for (int j = 0; j < n; ++j) pic.projection.at(i, j) = f.u.at(d + i, j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n - d; ++j) pic.section.at(i, j) = f.u_inv.at(i, d + j);
    return pic;
}

std::vector<IntVec> effective_cone_generators(const Fan&, const PicardLattice& pic) {
    std::vector<IntVec> gens;
    for (long j = 0; j < pic.projection.cols(); ++j) gens.push_back(pic.projection.col(j));
    return gens;
}

Fan projective_space_fan(int d) {
    if (d < 1) throw DomainError("InvalidInput", "projective_space_fan: d must be positive");
    std::vector<IntVec> rays;
    for (int i = 0; i < d; ++i) {
        IntVec e(static_cast<size_t>(d), Int(0));
        e[static_cast<size_t>(i)] = 1;
        rays.push_back(std::move(e));
    }
    IntVec last(static_cast<size_t>(d), Int(-1));
    rays.push_back(std::move(last));

    // maximal cones: drop one ray at a time
    std::vector<std::vector<int>> max_cones;
    for (int skip = 0; skip <= d; ++skip) {
        std::vector<int> cone;
        for (int i = 0; i <= d; ++i)
            if (i != skip) cone.push_back(i);
        max_cones.push_back(std::move(cone));
    }
    return build_and_validate(d, std::move(rays), std::move(max_cones));
}

} // namespace toriheights
