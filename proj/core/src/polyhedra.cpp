#include "toriheights/polyhedra.hpp"

#include <algorithm>
#include <set>

#include "toriheights/errors.hpp"

namespace toriheights {

namespace {

// Lexicographic order on integer vectors of equal length.
bool lex_less(const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

} // namespace

std::vector<IntVec> extreme_rays_of_inequalities(long rank, const std::vector<IntVec>& rows) {
    for (const IntVec& r : rows)
        if (static_cast<long>(r.size()) != rank)
            throw DomainError("DimensionMismatch", "inequality row length");

    if (rank == 0) return {};

    const long m = static_cast<long>(rows.size());
    IntMatrix a = IntMatrix::from_rows(rows);
    if (a.rows() == 0 || integer_rank(a) < rank)
        throw DomainError("NotPointed", "inequality system has a nontrivial lineality space");

    if (rank == 1) {
        bool pos_ok = true, neg_ok = true;
        for (const IntVec& r : rows) {
            if (r[0] < 0) pos_ok = false;
            if (r[0] > 0) neg_ok = false;
        }
        std::vector<IntVec> out;
        if (neg_ok) out.push_back(IntVec{Int(-1)});
        if (pos_ok) out.push_back(IntVec{Int(1)});
        return out; // both present only if rows are all zero, excluded above
    }

    // Candidate extreme rays: kernel vectors of (rank-1)-subsets of the rows.
    // An extreme ray of a pointed cone is tight on at least rank-1 independent
    // inequalities, so enumerating subsets is exhaustive. Problem sizes here
    // are desk scale (m <= ~16), so the binomial loop is fine.
    std::set<IntVec, bool (*)(const IntVec&, const IntVec&)> found(lex_less);
    // iterate over all (rank-1)-subsets of {0..m-1} in lexicographic order
    std::vector<long> c(rank - 1);
    for (long i = 0; i < rank - 1; ++i) c[i] = i;
    if (m >= rank - 1) {
        for (;;) {
            std::vector<IntVec> sub;
            sub.reserve(rank - 1);
            for (long i : c) sub.push_back(rows[i]);
            IntMatrix s = IntMatrix::from_rows(sub);
            std::vector<IntVec> ker = integer_kernel(s);
            if (ker.size() == 1) {
                IntVec v = primitive_vector(ker[0]);
                bool ge = true, le = true;
                for (long i = 0; i < m; ++i) {
                    int sign = sgn(dot(rows[i], v));
                    if (sign < 0) ge = false;
                    if (sign > 0) le = false;
                    if (!ge && !le) break;
                }
                if (ge) found.insert(v);
                else if (le) found.insert(negate(v));
            }
            // next combination
            long j = rank - 2;
            while (j >= 0 && c[j] == m - (rank - 1) + j) --j;
            if (j < 0) break;
            ++c[j];
            for (long k = j + 1; k < rank - 1; ++k) c[k] = c[k - 1] + 1;
        }
    }
    return std::vector<IntVec>(found.begin(), found.end());
}

} // namespace toriheights
