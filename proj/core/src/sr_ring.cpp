#include <toriheights/sr_ring.hpp>

#include <toriheights/errors.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace toriheights {

long profile_degree(const Profile& p) {
    long s = 0;
    for (long e : p) s += e;
    return s;
}

Int MultigradedPolynomial::coefficient(const Profile& p) const {
    auto it = terms.find(p);
    return it == terms.end() ? Int(0) : it->second;
}

namespace {

void append_monomial(std::ostringstream& out, const Profile& p, const Int& coeff, bool first) {
    Int a = coeff;
    if (first) {
        if (a < 0) {
            out << "-";
            a = -a;
        }
    } else {
        out << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
    }
    bool constant = profile_degree(p) == 0;
    bool wrote_coeff = false;
    if (constant || a != 1) {
        out << a.get_str();
        wrote_coeff = true;
    }
    bool need_star = wrote_coeff;
    for (size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0) continue;
        if (need_star) out << "*";
        out << "t" << (j + 1);
        if (p[j] > 1) out << "^" << p[j];
        need_star = true;
    }
}

}  // namespace

std::string MultigradedPolynomial::str() const {
    if (terms.empty()) return "0";
    std::vector<Profile> order;
    order.reserve(terms.size());
    for (const auto& kv : terms) order.push_back(kv.first);
    std::sort(order.begin(), order.end(), [](const Profile& a, const Profile& b) {
        long da = profile_degree(a), db = profile_degree(b);
        if (da != db) return da < db;
        return a < b;
    });
    std::ostringstream out;
    bool first = true;
    for (const Profile& p : order) {
        append_monomial(out, p, terms.at(p), first);
        first = false;
    }
    return out.str();
}

ExponentVector monomial_of_point(const Fan& fan, const IntVec& x) {
    LocateResult loc = locate(fan, x);
    ExponentVector exps(fan.rays().size(), Int(0));
    for (size_t i = 0; i < loc.cone.ray_indices.size(); ++i) {
        const Int& c = loc.coords[i];
        if (c < 0)
            throw DomainError("NonIntegralCoordinates",
                              "monomial_of_point: negative cone coordinate");
        exps[static_cast<size_t>(loc.cone.ray_indices[i])] = c;
    }
    return exps;
}

namespace {

struct CycleData {
    long size;
    // how many rays of the cycle fall in each orbit of the given partition
    std::vector<std::pair<size_t, long>> orbit_weights;
};

// Fixed monomials supported exactly on a permutation-stable ray set are
// constant on the permutation cycles of that set; enumerate the positive
// cycle values with bounded total degree.
void enumerate_assignments(const std::vector<CycleData>& cycles, size_t idx, long budget,
                           Profile& profile, std::map<Profile, Int>& terms) {
    if (idx == cycles.size()) {
        terms[profile] += 1;
        return;
    }
    const CycleData& cy = cycles[idx];
    for (long value = 1; value * cy.size <= budget; ++value) {
        for (const auto& [orbit, weight] : cy.orbit_weights)
            profile[orbit] += value * weight;
        enumerate_assignments(cycles, idx + 1, budget - value * cy.size, profile, terms);
        for (const auto& [orbit, weight] : cy.orbit_weights)
            profile[orbit] -= value * weight;
    }
}

MultigradedPolynomial trace_series_of_perm(const Fan& fan, const std::vector<int>& perm,
                                           const OrbitPartition& orbits, long degree_cap) {
    MultigradedPolynomial result;
    result.orbit_sizes.reserve(orbits.orbits.size());
    for (const auto& orbit : orbits.orbits)
        result.orbit_sizes.push_back(static_cast<long>(orbit.size()));

    const Profile zero(orbits.orbits.size(), 0);
    result.terms[zero] = 1;  // the empty monomial

    for (const Cone& sigma : fan.cones()) {
        if (sigma.ray_indices.empty()) continue;
        std::vector<int> image;
        image.reserve(sigma.ray_indices.size());
        for (int r : sigma.ray_indices) image.push_back(perm[static_cast<size_t>(r)]);
        std::sort(image.begin(), image.end());
        if (image != sigma.ray_indices) continue;

        // cycle decomposition of the permutation restricted to the cone rays
        std::vector<CycleData> cycles;
        std::set<int> seen;
        for (int start : sigma.ray_indices) {
            if (seen.count(start)) continue;
            CycleData cy;
            cy.size = 0;
            std::map<size_t, long> weights;
            int cur = start;
            do {
                seen.insert(cur);
                ++cy.size;
                ++weights[static_cast<size_t>(orbits.orbit_of[static_cast<size_t>(cur)])];
                cur = perm[static_cast<size_t>(cur)];
            } while (cur != start);
            cy.orbit_weights.assign(weights.begin(), weights.end());
            cycles.push_back(std::move(cy));
        }

        Profile profile = zero;
        enumerate_assignments(cycles, 0, degree_cap, profile, result.terms);
    }
    return result;
}

}  // namespace

MultigradedPolynomial trace_series(const Fan& fan, const IntMatrix& phi,
                                   const OrbitPartition& orbits, long degree_cap) {
    if (degree_cap < 0)
        throw DomainError("InvalidInput", "trace_series: negative degree cap");
    std::vector<int> perm = ray_permutation_of(fan, phi);
    return trace_series_of_perm(fan, perm, orbits, degree_cap);
}

MultigradedPolynomial q_polynomial(const Fan& fan, const IntMatrix& phi,
                                   const OrbitPartition& orbits) {
    const long n = static_cast<long>(fan.rays().size());
    long max_d = 0;
    for (const auto& orbit : orbits.orbits)
        max_d = std::max(max_d, static_cast<long>(orbit.size()));
    const long cap = n + max_d + 2;

    MultigradedPolynomial q = trace_series(fan, phi, orbits, cap);

    // Multiply by prod_j (1 - t_j^{d_j}), truncating above the cap. The
    // truncated coefficients stay exact because the multiplier only raises
    // degrees.
    for (size_t j = 0; j < q.orbit_sizes.size(); ++j) {
        std::map<Profile, Int> next = q.terms;
        for (const auto& [p, c] : q.terms) {
            Profile shifted = p;
            shifted[j] += q.orbit_sizes[j];
            if (profile_degree(shifted) <= cap) next[shifted] -= c;
        }
        for (auto it = next.begin(); it != next.end();) {
            if (it->second == 0)
                it = next.erase(it);
            else
                ++it;
        }
        q.terms = std::move(next);
    }

    // Certificates from the resolution argument: the product is a polynomial
    // of total degree n. Anything in the window (n, cap] disproves that.
    long top_count = 0;
    Int top_coeff = 0;
    for (const auto& [p, c] : q.terms) {
        const long deg = profile_degree(p);
        if (deg > n)
            throw DomainError("PolynomialityCheckFailed",
                              "q_polynomial: term of degree " + std::to_string(deg) +
                                  " above the expected degree " + std::to_string(n));
        if (deg == 1)
            throw DomainError("PolynomialityCheckFailed",
                              "q_polynomial: nonconstant term of degree < 2");
        for (size_t j = 0; j < p.size(); ++j)
            if (p[j] % q.orbit_sizes[j] != 0)
                throw DomainError("PolynomialityCheckFailed",
                                  "q_polynomial: exponent not a multiple of the orbit length");
        if (deg == n) {
            ++top_count;
            top_coeff = c;
        }
    }
    Profile zero(q.orbit_sizes.size(), 0);
    if (q.coefficient(zero) != 1)
        throw DomainError("PolynomialityCheckFailed", "q_polynomial: constant term is not 1");
    if (n > 0 && (top_count != 1 || (top_coeff != 1 && top_coeff != -1)))
        throw DomainError("PolynomialityCheckFailed",
                          "q_polynomial: top degree term is not unique with coefficient +-1");
    return q;
}

std::vector<Int> chow_trace_polynomial(const Fan& fan, const IntMatrix& phi) {
    const long d = fan.rank();
    const long cap = 2 * d + 2;

    std::vector<int> perm = ray_permutation_of(fan, phi);
    OrbitPartition cycles = orbits_of_permutation(perm);
    MultigradedPolynomial series = trace_series_of_perm(fan, perm, cycles, cap);

    // collapse all orbit variables to a single t
    std::vector<Int> p_univ(static_cast<size_t>(cap) + 1, Int(0));
    for (const auto& [p, c] : series.terms) p_univ[static_cast<size_t>(profile_degree(p))] += c;

    const std::vector<Int> det = det_identity_minus_t(m_action(phi));

    std::vector<Int> product(static_cast<size_t>(cap) + 1, Int(0));
    for (size_t i = 0; i < det.size(); ++i) {
        if (det[i] == 0) continue;
        for (size_t k = 0; i + k <= static_cast<size_t>(cap); ++k)
            product[i + k] += det[i] * p_univ[k];
    }

    for (size_t k = static_cast<size_t>(d) + 1; k < product.size(); ++k)
        if (product[k] != 0)
            throw DomainError("PolynomialityCheckFailed",
                              "chow_trace_polynomial: nonzero coefficient above degree d");
    product.resize(static_cast<size_t>(d) + 1);
    if (product[0] != 1)
        throw DomainError("PolynomialityCheckFailed",
                          "chow_trace_polynomial: constant term is not 1");
    if (product.back() == 0)
        throw DomainError("PolynomialityCheckFailed",
                          "chow_trace_polynomial: degree is below the rank");
    return product;
}

MultigradedPolynomial divide_by_one_minus_power(const MultigradedPolynomial& q, size_t j,
                                                long power) {
    if (j >= q.orbit_sizes.size())
        throw DomainError("InvalidInput", "divide_by_one_minus_power: variable out of range");
    if (power <= 0)
        throw DomainError("InvalidInput", "divide_by_one_minus_power: nonpositive power");

    long max_j = 0;
    for (const auto& [p, c] : q.terms) max_j = std::max(max_j, p[j]);

    // Long division from the bottom in the t_j direction: the minimal
    // remaining term must come from the quotient, so peel it off and push its
    // shadow one power up.
    auto cmp = [j](const Profile& a, const Profile& b) {
        if (a[j] != b[j]) return a[j] < b[j];
        return a < b;
    };
    std::map<Profile, Int, decltype(cmp)> work(cmp);
    for (const auto& [p, c] : q.terms) work[p] = c;

    MultigradedPolynomial result;
    result.orbit_sizes = q.orbit_sizes;
    while (!work.empty()) {
        auto it = work.begin();
        Profile p = it->first;
        Int c = it->second;
        work.erase(it);
        if (c == 0) continue;
        if (p[j] + power > max_j)
            throw DomainError("InternalError",
                              "divide_by_one_minus_power: division is not exact");
        result.terms[p] += c;
        Profile up = p;
        up[j] += power;
        Int& slot = work[up];
        slot += c;
        if (slot == 0) work.erase(up);
    }
    for (auto it = result.terms.begin(); it != result.terms.end();) {
        if (it->second == 0)
            it = result.terms.erase(it);
        else
            ++it;
    }

    // multiply back and compare, so an inexact division can never slip out
    std::map<Profile, Int> check;
    for (const auto& [p, c] : result.terms) {
        check[p] += c;
        Profile up = p;
        up[j] += power;
        check[up] -= c;
    }
    for (auto it = check.begin(); it != check.end();) {
        if (it->second == 0)
            it = check.erase(it);
        else
            ++it;
    }
    if (check != q.terms)
        throw DomainError("InternalError", "divide_by_one_minus_power: verification failed");
    return result;
}

Int eval_univariate(const std::vector<Int>& coeffs, const Int& t) {
    Int acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

std::string univariate_str(const std::vector<Int>& coeffs, const std::string& var) {
    std::ostringstream out;
    bool first = true;
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        Int a = coeffs[k];
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (k == 0 || a != 1) out << a.get_str();
        if (k > 0) {
            if (a != 1) out << "*";
            out << var;
            if (k > 1) out << "^" << k;
        }
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

}  // namespace toriheights
