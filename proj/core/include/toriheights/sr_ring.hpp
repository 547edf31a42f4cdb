#pragma once

#include <toriheights/fan.hpp>
#include <toriheights/galois.hpp>

#include <map>
#include <string>
#include <vector>

namespace toriheights {

// Exponent vector of a monomial in the ray variables z_1..z_n. Entries are
// nonnegative and the support is always the ray set of some cone of the fan.
using ExponentVector = IntVec;

// Multidegree with respect to a ray-orbit partition: entry j is the total
// z-degree carried by the rays of orbit j.
using Profile = std::vector<long>;

long profile_degree(const Profile& p);

// Integer polynomial in one variable t_j per ray orbit. Zero coefficients
// are never stored.
struct MultigradedPolynomial {
    std::vector<long> orbit_sizes;   // d_j, the length of orbit j
    std::map<Profile, Int> terms;

    Int coefficient(const Profile& p) const;
    long num_variables() const { return static_cast<long>(orbit_sizes.size()); }
    // Canonical rendering, terms ordered by (total degree, lex).
    std::string str() const;

    bool operator==(const MultigradedPolynomial& other) const {
        return orbit_sizes == other.orbit_sizes && terms == other.terms;
    }
};

// The monomial attached to a lattice point: integral coordinates of x in the
// rays of its containing cone, zero elsewhere. Bijective onto the monomial
// basis of the Stanley-Reisner ring.
ExponentVector monomial_of_point(const Fan& fan, const IntVec& x);

// Generating series of the fixed monomials of the ray permutation induced by
// phi, graded by orbit profile, enumerated exhaustively up to total degree
// degree_cap. Every coefficient counts monomials and is >= 0.
MultigradedPolynomial trace_series(const Fan& fan, const IntMatrix& phi,
                                   const OrbitPartition& orbits, long degree_cap);

// The numerator polynomial Q: trace series times prod_j (1 - t_j^{d_j}),
// certified to be a polynomial of total degree n = #rays with constant term
// 1, a unique top term of coefficient +-1, no nonconstant term of degree
// < 2, and all exponents divisible by the orbit lengths. The orbit partition
// must be the cycle partition of the ray permutation of phi for those
// certificates to hold; violations raise PolynomialityCheckFailed.
MultigradedPolynomial q_polynomial(const Fan& fan, const IntMatrix& phi,
                                   const OrbitPartition& orbits);

// Coefficients (degree 0 upward) of det(I - t.phi|M) * P(t,...,t), certified
// to be a polynomial of degree exactly d = rank with constant term 1. The
// coefficient of t^k is the trace of phi on the degree-k Chow group, and
// evaluation at q reproduces count_toric.
std::vector<Int> chow_trace_polynomial(const Fan& fan, const IntMatrix& phi);

// Exact division by (1 - t_j^power). Throws InternalError when the division
// leaves a remainder; the result times the divisor is checked against the
// input before returning.
MultigradedPolynomial divide_by_one_minus_power(const MultigradedPolynomial& q,
                                                size_t j, long power);

// Horner evaluation of a coefficient vector (degree 0 upward).
Int eval_univariate(const std::vector<Int>& coeffs, const Int& t);

// Rendering helper for univariate coefficient vectors, canonical ascending
// degree, e.g. "1 + t + t^2".
std::string univariate_str(const std::vector<Int>& coeffs, const std::string& var = "t");

}  // namespace toriheights
