#pragma once

#include <toriheights/conechar.hpp>
#include <toriheights/integers.hpp>

#include <optional>
#include <string>
#include <vector>

namespace toriheights {

// Built-in point families over Q with elementary closed-form heights.
struct PointFamily {
    enum class Kind { Projective, Conic, NormCubic };

    Kind kind = Kind::Projective;
    int dim = 1;        // projective(d)
    Int discriminant;   // conic(D): x^2 - (D/4) y^2 = z^2, D = 0 mod 4, not a square
    IntVec cubic_low;   // norm_cubic: monic x^3 + c2 x^2 + c1 x + c0 as (c0, c1, c2)
    std::string name;

    static PointFamily projective(int d);
    static PointFamily conic(const Int& big_d);
    static PointFamily norm_cubic(const IntVec& low_coeffs);
    // Accepts "projective(2)", "conic(-4)", "norm_cubic(-2,0,0)"; ':' works
    // in place of parentheses. Throws ParseError on anything else.
    static PointFamily parse(const std::string& text);
};

// Anticanonical height of a primitive point: (max |x_i|)^{d+1} on projective
// space, the max norm on the conic and on the norm-cubic surface. Throws
// NotPrimitive and NotOnVariety.
Int family_height(const PointFamily& family, const IntVec& point);

struct CountSeries {
    std::vector<double> bounds;      // ascending, positive
    std::vector<long long> counts;   // N(bound), nondecreasing
};

// Exact N(B) for each bound by exhaustive search over primitive normalized
// representatives (first nonzero coordinate positive). conic(-4) takes a
// parametrized fast path; everything else walks coordinate boxes, sharded
// across threads. Throws BoundTooLarge above the per-family cap.
CountSeries enumerate_counts(const PointFamily& family, const std::vector<double>& bounds);

// Same counts through the plain box search in every case. Used to validate
// the conic fast path; slower, so keep bounds small.
CountSeries enumerate_counts_naive(const PointFamily& family, const std::vector<double>& bounds);

struct FitResult {
    double a_hat = 0;
    long b_hat = 0;
    double c_hat = 0;
    double residual = 0;
};

// Fits log N = a log B + (b-1) log log B + log c by least squares for each
// candidate integer b (default {1,2,3,4}) and keeps the best. Uses bounds
// with B > 1 and N >= 1; requires at least 8 of them spanning two decades,
// otherwise InsufficientData.
FitResult fit_asymptotic(const CountSeries& series, const std::vector<long>& b_candidates = {});

// Expected (a, b) of the Manin asymptotic from the effective cone of the
// family's compactification; nullopt for the norm-cubic proxy height.
std::optional<ABInvariants> predicted_invariants(const PointFamily& family);

}  // namespace toriheights
