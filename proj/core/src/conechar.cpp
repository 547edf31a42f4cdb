#include <toriheights/conechar.hpp>

#include <toriheights/errors.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace toriheights {

namespace {

std::string vec_str(const IntVec& v) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",";
        out << v[i].get_str();
    }
    out << ")";
    return out.str();
}

IntMatrix rows_from(const std::vector<IntVec>& vs, int rank) {
    IntMatrix m(static_cast<long>(vs.size()), rank);
    for (size_t i = 0; i < vs.size(); ++i)
        for (int j = 0; j < rank; ++j) m.at(static_cast<long>(i), j) = vs[i][static_cast<size_t>(j)];
    return m;
}

}  // namespace

PolyhedralCone make_cone(int rank, const std::vector<IntVec>& generators) {
    if (rank < 1) throw DomainError("NotFullDimensional", "make_cone: ambient rank must be positive");
    std::vector<IntVec> gens;
    for (const IntVec& g : generators) {
        if (static_cast<int>(g.size()) != rank)
            throw DomainError("InvalidInput", "make_cone: generator of wrong length");
        if (!is_zero_vector(g)) gens.push_back(g);
    }
    if (gens.empty())
        throw DomainError("NotFullDimensional", "make_cone: no nonzero generators");

    // Facets of the cone are the extreme rays of its dual; the dual has a
    // lineality space exactly when the primal fails to span.
    std::vector<IntVec> facets;
    try {
        facets = extreme_rays_of_inequalities(rank, gens);
    } catch (const DomainError& e) {
        if (e.name() == "NotPointed")
            throw DomainError("NotFullDimensional", "make_cone: generators do not span");
        throw;
    }
    if (facets.empty())
        throw DomainError("NotPointed", "make_cone: cone is the whole space");
    if (integer_rank(rows_from(facets, rank)) < rank)
        throw DomainError("NotPointed", "make_cone: cone contains a line");

    PolyhedralCone c;
    c.ambient_rank = rank;
    c.facets = facets;
    // Second pass canonicalizes the generators: primitive extreme rays only,
    // deduplicated and lex sorted.
    c.generators = extreme_rays_of_inequalities(rank, facets);
    if (c.generators.empty())
        throw DomainError("InternalError", "make_cone: lost the generators");
    return c;
}

PolyhedralCone dual_cone(const PolyhedralCone& c) {
    PolyhedralCone d;
    d.ambient_rank = c.ambient_rank;
    d.generators = c.facets;
    d.facets = c.generators;
    std::sort(d.generators.begin(), d.generators.end());
    std::sort(d.facets.begin(), d.facets.end());
    return d;
}

namespace {

// Pulling triangulation of a cone presented by the rays `gen` and the global
// facet normals `facets`. Faces are ray index sets; the facets of a face are
// the maximal proper subsets cut out by the global facet hyperplanes.
struct Triangulator {
    const std::vector<IntVec>& gen;
    const std::vector<IntVec>& facets;
    const std::vector<int>& priority;  // smaller value pulls first
    std::map<std::vector<int>, std::vector<std::vector<int>>> memo;

    long face_rank(const std::vector<int>& s) const {
        IntMatrix m(static_cast<long>(s.size()), static_cast<long>(gen[0].size()));
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = 0; j < gen[0].size(); ++j)
                m.at(static_cast<long>(i), static_cast<long>(j)) = gen[static_cast<size_t>(s[i])][j];
        return integer_rank(m);
    }

    const std::vector<std::vector<int>>& pull(const std::vector<int>& s) {
        auto it = memo.find(s);
        if (it != memo.end()) return it->second;

        std::vector<std::vector<int>> out;
        if (static_cast<long>(s.size()) == face_rank(s)) {
            out.push_back(s);
            return memo.emplace(s, std::move(out)).first->second;
        }

        int vertex = s[0];
        for (int i : s)
            if (priority[static_cast<size_t>(i)] < priority[static_cast<size_t>(vertex)]) vertex = i;

        // candidate faces s ∩ h-perp, keep the inclusion-maximal proper ones
        std::set<std::vector<int>> candidates;
        for (const IntVec& h : facets) {
            std::vector<int> tight;
            for (int i : s)
                if (dot(h, gen[static_cast<size_t>(i)]) == 0) tight.push_back(i);
            if (tight.size() == s.size() || tight.empty()) continue;
            candidates.insert(tight);
        }
        for (const std::vector<int>& f : candidates) {
            bool maximal = true;
            for (const std::vector<int>& other : candidates) {
                if (&other == &f || other.size() <= f.size()) continue;
                if (std::includes(other.begin(), other.end(), f.begin(), f.end())) {
                    maximal = false;
                    break;
                }
            }
            if (!maximal) continue;
            if (std::binary_search(f.begin(), f.end(), vertex)) continue;
            for (const std::vector<int>& simplex : pull(f)) {
                std::vector<int> joined = simplex;
                joined.insert(std::lower_bound(joined.begin(), joined.end(), vertex), vertex);
                out.push_back(std::move(joined));
            }
        }
        if (out.empty())
            throw DomainError("InternalError", "char_function: pulling produced no pieces");
        return memo.emplace(s, std::move(out)).first->second;
    }
};

SimplicialTermSum triangulate_dual(const PolyhedralCone& c, const std::vector<int>& priority) {
    PolyhedralCone d = dual_cone(c);
    const int r = d.ambient_rank;
    if (priority.size() != d.generators.size())
        throw DomainError("InvalidInput", "char_function: priority list of wrong length");

    std::vector<int> all(d.generators.size());
    std::iota(all.begin(), all.end(), 0);

    Triangulator tri{d.generators, d.facets, priority, {}};
    SimplicialTermSum x;
    x.ambient_rank = r;
    for (const std::vector<int>& simplex : tri.pull(all)) {
        if (static_cast<int>(simplex.size()) != r)
            throw DomainError("InternalError", "char_function: piece of wrong dimension");
        SimplicialTerm term;
        IntMatrix f(r, r);
        for (int i = 0; i < r; ++i) {
            const IntVec& ray = d.generators[static_cast<size_t>(simplex[static_cast<size_t>(i)])];
            term.forms.push_back(ray);
            for (int j = 0; j < r; ++j) f.at(i, j) = ray[static_cast<size_t>(j)];
        }
        Int det = determinant(f);
        if (det == 0)
            throw DomainError("InternalError", "char_function: degenerate piece");
        if (det < 0) det = -det;
        term.weight = Rat(det);
        x.terms.push_back(std::move(term));
    }
    return x;
}

}  // namespace

SimplicialTermSum char_function(const PolyhedralCone& c) {
    PolyhedralCone d = dual_cone(c);
    std::vector<int> priority(d.generators.size());
    std::iota(priority.begin(), priority.end(), 0);
    return triangulate_dual(c, priority);
}

SimplicialTermSum char_function_ordered(const PolyhedralCone& c, const std::vector<int>& priority) {
    return triangulate_dual(c, priority);
}

Rat eval_char(const SimplicialTermSum& x, const RatVec& u) {
    if (static_cast<int>(u.size()) != x.ambient_rank)
        throw DomainError("InvalidInput", "eval_char: point of wrong length");
    Rat total = 0;
    for (const SimplicialTerm& term : x.terms) {
        Rat denom = 1;
        for (const IntVec& f : term.forms) {
            Rat d = dot(u, f);
            if (d == 0)
                throw DomainError("PoleHit", "eval_char: <u,f> = 0 for form " + vec_str(f));
            denom *= d;
        }
        total += term.weight / denom;
    }
    total.canonicalize();
    return total;
}

InvariantEffectiveCone invariant_effective_cone(const Fan& fan, const GaloisAction& action) {
    InvariantEffectiveCone out;
    out.pic = picard_lattice(fan);
    if (!out.pic.torsion_part.is_trivial())
        throw DomainError("InternalError", "invariant_effective_cone: Picard group has torsion");
    out.orbits = ray_orbits(action);

    const long l = out.pic.rank;
    std::vector<IntMatrix> induced;
    induced.reserve(action.ray_permutations.size());
    for (const auto& perm : action.ray_permutations)
        induced.push_back(induced_pic_action(out.pic, perm));
    std::vector<IntVec> basis = fixed_sublattice(induced, l);
    if (basis.empty())
        throw DomainError("NotFullDimensional",
                          "invariant_effective_cone: invariant Picard lattice is trivial");
    out.invariant_basis = IntMatrix::from_cols(basis);
    const long r = out.invariant_basis.cols();

    auto in_invariant_coords = [&](const IntVec& pic_class) {
        auto coords = solve_integral(out.invariant_basis, pic_class);
        if (!coords)
            throw DomainError("InternalError",
                              "invariant_effective_cone: class outside the invariant lattice");
        return *coords;
    };

    for (const auto& orbit : out.orbits.orbits) {
        IntVec cls(static_cast<size_t>(l), Int(0));
        for (int i : orbit)
            for (long k = 0; k < l; ++k) cls[static_cast<size_t>(k)] += out.pic.projection.at(k, i);
        out.orbit_classes.push_back(in_invariant_coords(cls));
    }

    IntVec anti(static_cast<size_t>(l), Int(0));
    for (long k = 0; k < l; ++k)
        for (long i = 0; i < out.pic.projection.cols(); ++i) anti[static_cast<size_t>(k)] += out.pic.projection.at(k, i);
    out.anticanonical = in_invariant_coords(anti);

    out.cone = make_cone(static_cast<int>(r), out.orbit_classes);
    return out;
}

Rat alpha(const Fan& fan, const GaloisAction& action) {
    InvariantEffectiveCone iec = invariant_effective_cone(fan, action);
    RatVec u0(iec.anticanonical.begin(), iec.anticanonical.end());
    for (const IntVec& h : iec.cone.facets) {
        if (dot(u0, h) <= 0)
            throw DomainError("AnticanonicalOnBoundary",
                              "alpha: anticanonical class is not interior to the effective cone");
    }
    return eval_char(char_function(iec.cone), u0);
}

ABInvariants a_b_invariants(const Fan& fan, const GaloisAction& action, const PLFunction& ell) {
    InvariantEffectiveCone iec = invariant_effective_cone(fan, action);
    const long l = iec.pic.rank;
    if (ell.values.size() != fan.rays().size())
        throw DomainError("InvalidInput", "a_b_invariants: wrong number of line bundle values");

    // class of the divisor sum ell(e_i) D_i in Pic, then in invariant coords
    RatVec pic_class(static_cast<size_t>(l), Rat(0));
    for (long k = 0; k < l; ++k)
        for (long i = 0; i < iec.pic.projection.cols(); ++i)
            pic_class[static_cast<size_t>(k)] += Rat(iec.pic.projection.at(k, i)) * ell.values[static_cast<size_t>(i)];

    RatVec basis_coords;
    {
        const long r = iec.invariant_basis.cols();
        auto sol = solve_rational(iec.invariant_basis, pic_class);
        if (!sol)
            throw DomainError("InvalidInput", "a_b_invariants: class is not Galois-invariant");
        basis_coords = *sol;
        for (long i = 0; i < l; ++i) {
            Rat acc = 0;
            for (long j = 0; j < r; ++j)
                acc += Rat(iec.invariant_basis.at(i, j)) * basis_coords[static_cast<size_t>(j)];
            if (acc != pic_class[static_cast<size_t>(i)])
                throw DomainError("InvalidInput", "a_b_invariants: class is not Galois-invariant");
        }
    }

    RatVec u0(iec.anticanonical.begin(), iec.anticanonical.end());
    for (const IntVec& h : iec.cone.facets)
        if (dot(u0, h) <= 0)
            throw DomainError("AnticanonicalOnBoundary",
                              "a_b_invariants: anticanonical class is not interior");

    Rat a(0);
    for (const IntVec& h : iec.cone.facets) {
        Rat hc = 0, hu = 0;
        for (size_t j = 0; j < h.size(); ++j) {
            hc += basis_coords[j] * Rat(h[j]);
            hu += Rat(u0[j]) * Rat(h[j]);
        }
        if (hc <= 0)
            throw DomainError("ClassNotInterior",
                              "a_b_invariants: class is not interior to the effective cone");
        Rat ratio = hu / hc;
        ratio.canonicalize();
        if (ratio > a) a = ratio;
    }

    // minimal face containing a*[L] + [K]
    RatVec z(u0.size());
    for (size_t j = 0; j < z.size(); ++j) z[j] = a * basis_coords[j] - u0[j];
    std::vector<const IntVec*> tight;
    for (const IntVec& h : iec.cone.facets) {
        Rat hz = 0;
        for (size_t j = 0; j < h.size(); ++j) hz += z[j] * Rat(h[j]);
        hz.canonicalize();
        if (hz == 0) tight.push_back(&h);
    }
    std::vector<IntVec> face_gens;
    for (const IntVec& g : iec.cone.generators) {
        bool on_face = true;
        for (const IntVec* h : tight)
            if (dot(*h, g) != 0) {
                on_face = false;
                break;
            }
        if (on_face) face_gens.push_back(g);
    }
    long face_dim = face_gens.empty()
                        ? 0
                        : integer_rank(rows_from(face_gens, iec.cone.ambient_rank));

    ABInvariants out;
    out.a = a;
    out.b = iec.cone.ambient_rank - face_dim;
    return out;
}

}  // namespace toriheights
