#include "toriheights/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "toriheights/errors.hpp"

namespace toriheights {

IntMatrix IntMatrix::identity(long n) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
    long r = static_cast<long>(rows.size());
    long c = r == 0 ? 0 : static_cast<long>(rows[0].size());
    IntMatrix m(r, c);
    for (long i = 0; i < r; ++i) {
        if (static_cast<long>(rows[i].size()) != c)
            throw DomainError("DimensionMismatch", "ragged row list");
        for (long j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<IntVec>& cols) {
    long c = static_cast<long>(cols.size());
    long r = c == 0 ? 0 : static_cast<long>(cols[0].size());
    IntMatrix m(r, c);
    for (long j = 0; j < c; ++j) {
        if (static_cast<long>(cols[j].size()) != r)
            throw DomainError("DimensionMismatch", "ragged column list");
        for (long i = 0; i < r; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

IntVec IntMatrix::row(long i) const {
    IntVec v(cols_);
    for (long j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

IntVec IntMatrix::col(long j) const {
    IntVec v(rows_);
    for (long i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_)
        throw DomainError("DimensionMismatch", "matrix product shapes");
    IntMatrix r(rows_, other.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (long j = 0; j < other.cols_; ++j)
                r.at(i, j) += aik * other.at(k, j);
        }
    return r;
}

IntVec IntMatrix::apply(const IntVec& x) const {
    if (static_cast<long>(x.size()) != cols_)
        throw DomainError("DimensionMismatch", "matrix-vector shapes");
    IntVec r(rows_, Int(0));
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r[i] += at(i, j) * x[j];
    return r;
}

RatVec IntMatrix::apply(const RatVec& x) const {
    if (static_cast<long>(x.size()) != cols_)
        throw DomainError("DimensionMismatch", "matrix-vector shapes");
    RatVec r(rows_, Rat(0));
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r[i] += Rat(at(i, j)) * x[j];
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DomainError("DimensionMismatch", "matrix sum shapes");
    IntMatrix r(rows_, cols_);
    for (long i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] + other.a_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DomainError("DimensionMismatch", "matrix difference shapes");
    IntMatrix r(rows_, cols_);
    for (long i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] - other.a_[i];
    return r;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix r(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : a_)
        if (x != 0) return false;
    return true;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (long i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        os << "[";
        for (long j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
        os << "]";
        if (i + 1 < rows_) os << "\n";
    }
    os << "]";
    return os.str();
}

namespace {

// Elementary operation helpers for the Smith reduction. Each op is applied to
// the work matrix and mirrored on the transforms so S = U A V stays invariant,
// together with the tracked inverses.
struct SmithWork {
    IntMatrix s, u, v, u_inv, v_inv;

    void swap_rows(long i, long j) {
        if (i == j) return;
        for (long k = 0; k < s.cols(); ++k) std::swap(s.at(i, k), s.at(j, k));
        for (long k = 0; k < u.cols(); ++k) std::swap(u.at(i, k), u.at(j, k));
        for (long k = 0; k < u_inv.rows(); ++k) std::swap(u_inv.at(k, i), u_inv.at(k, j));
    }
    void swap_cols(long i, long j) {
        if (i == j) return;
        for (long k = 0; k < s.rows(); ++k) std::swap(s.at(k, i), s.at(k, j));
        for (long k = 0; k < v.rows(); ++k) std::swap(v.at(k, i), v.at(k, j));
        for (long k = 0; k < v_inv.cols(); ++k) std::swap(v_inv.at(i, k), v_inv.at(j, k));
    }
    // row i += c * row j
    void add_row(long i, long j, const Int& c) {
        for (long k = 0; k < s.cols(); ++k) s.at(i, k) += c * s.at(j, k);
        for (long k = 0; k < u.cols(); ++k) u.at(i, k) += c * u.at(j, k);
        for (long k = 0; k < u_inv.rows(); ++k) u_inv.at(k, j) -= c * u_inv.at(k, i);
    }
    // col i += c * col j
    void add_col(long i, long j, const Int& c) {
        for (long k = 0; k < s.rows(); ++k) s.at(k, i) += c * s.at(k, j);
        for (long k = 0; k < v.rows(); ++k) v.at(k, i) += c * v.at(k, j);
        for (long k = 0; k < v_inv.cols(); ++k) v_inv.at(j, k) -= c * v_inv.at(i, k);
    }
    void negate_row(long i) {
        for (long k = 0; k < s.cols(); ++k) s.at(i, k) = -s.at(i, k);
        for (long k = 0; k < u.cols(); ++k) u.at(i, k) = -u.at(i, k);
        for (long k = 0; k < u_inv.rows(); ++k) u_inv.at(k, i) = -u_inv.at(k, i);
    }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
    const long m = a.rows(), n = a.cols();
    SmithWork w{a, IntMatrix::identity(m), IntMatrix::identity(n),
                IntMatrix::identity(m), IntMatrix::identity(n)};

    const long steps = std::min(m, n);
    for (long t = 0; t < steps; ++t) {
        for (;;) {
            // Pivot: minimal absolute nonzero entry of the trailing block,
            // first hit in row-major scan order (keeps U, V reproducible).
            long pi = -1, pj = -1;
            for (long i = t; i < m; ++i)
                for (long j = t; j < n; ++j) {
                    const Int& x = w.s.at(i, j);
                    if (x == 0) continue;
                    if (pi < 0 || mpz_cmpabs(x.get_mpz_t(), w.s.at(pi, pj).get_mpz_t()) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) { t = steps; break; } // trailing block is zero
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            bool clean = true;
            for (long i = t + 1; i < m; ++i) {
                if (w.s.at(i, t) == 0) continue;
                Int q = w.s.at(i, t) / w.s.at(t, t); // truncating division
                if (q != 0) w.add_row(i, t, -q);
                if (w.s.at(i, t) != 0) clean = false;
            }
            for (long j = t + 1; j < n; ++j) {
                if (w.s.at(t, j) == 0) continue;
                Int q = w.s.at(t, j) / w.s.at(t, t);
                if (q != 0) w.add_col(j, t, -q);
                if (w.s.at(t, j) != 0) clean = false;
            }
            if (!clean) continue; // strictly smaller remainders exist, re-pivot

            // Enforce the divisibility chain: fold any non-multiple into row t.
            bool fixed_div = false;
            for (long i = t + 1; i < m && !fixed_div; ++i)
                for (long j = t + 1; j < n && !fixed_div; ++j)
                    if (w.s.at(i, j) % w.s.at(t, t) != 0) {
                        w.add_row(t, i, Int(1));
                        fixed_div = true;
                    }
            if (!fixed_div) break;
        }
        if (t >= steps) break;
        if (w.s.at(t, t) < 0) w.negate_row(t);
    }
    for (long t = 0; t < steps; ++t)
        if (w.s.at(t, t) < 0) w.negate_row(t);

    return SmithForm{w.s, w.u, w.v, w.u_inv, w.v_inv};
}

std::vector<Int> smith_diagonal(const IntMatrix& a) {
    SmithForm f = smith_normal_form(a);
    long k = std::min(a.rows(), a.cols());
    std::vector<Int> d(k);
    for (long i = 0; i < k; ++i) d[i] = f.s.at(i, i);
    return d;
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols())
        throw DomainError("DimensionMismatch", "determinant of non-square matrix");
    const long n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            long p = -1;
            for (long i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (long j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev; // exact by Sylvester's identity
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

long integer_rank(const IntMatrix& a) {
    std::vector<Int> d = smith_diagonal(a);
    long r = 0;
    for (const Int& x : d)
        if (x != 0) ++r;
    return r;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
    if (a.rows() != a.cols())
        throw DomainError("DimensionMismatch", "inverse of non-square matrix");
    SmithForm f = smith_normal_form(a);
    for (long i = 0; i < a.rows(); ++i)
        if (f.s.at(i, i) != 1)
            throw DomainError("NotUnimodular", "matrix determinant is not +-1");
    // S = U A V = Id, hence A^{-1} = V U.
    return f.v * f.u;
}

std::vector<IntVec> integer_kernel(const IntMatrix& a) {
    SmithForm f = smith_normal_form(a);
    const long n = a.cols();
    const long diag = std::min(a.rows(), n);
    std::vector<IntVec> basis;
    for (long j = 0; j < n; ++j)
        if (j >= diag || f.s.at(j, j) == 0) basis.push_back(f.v.col(j));
    return basis;
}

std::vector<IntVec> fixed_sublattice(const std::vector<IntMatrix>& mats, long rank) {
    std::vector<IntVec> rows;
    for (const IntMatrix& g : mats) {
        if (g.rows() != rank || g.cols() != rank)
            throw DomainError("DimensionMismatch", "fixed sublattice matrix shapes");
        for (long i = 0; i < rank; ++i) {
            IntVec r(rank);
            for (long j = 0; j < rank; ++j) r[j] = g.at(i, j) - (i == j ? 1 : 0);
            rows.push_back(std::move(r));
        }
    }
    if (rows.empty()) {
        std::vector<IntVec> basis;
        for (long i = 0; i < rank; ++i) {
            IntVec e(rank, Int(0));
            e[i] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    return integer_kernel(IntMatrix::from_rows(rows));
}

AbelianInvariants quotient_invariants(long ambient_rank, const std::vector<IntVec>& image) {
    for (const IntVec& v : image)
        if (static_cast<long>(v.size()) != ambient_rank)
            throw DomainError("DimensionMismatch", "quotient image vector length");
    AbelianInvariants inv;
    if (image.empty()) {
        inv.free_rank = ambient_rank;
        return inv;
    }
    std::vector<Int> d = smith_diagonal(IntMatrix::from_cols(image));
    long nonzero = 0;
    for (const Int& x : d)
        if (x != 0) {
            ++nonzero;
            if (x >= 2) inv.torsion.push_back(x);
        }
    inv.free_rank = ambient_rank - nonzero;
    return inv;
}

std::optional<RatVec> solve_rational(const IntMatrix& a, const RatVec& b) {
    const long m = a.rows(), n = a.cols();
    if (static_cast<long>(b.size()) != m)
        throw DomainError("DimensionMismatch", "solve shapes");
    // Gauss-Jordan over Q on the augmented matrix.
    std::vector<RatVec> w(m, RatVec(n + 1));
    for (long i = 0; i < m; ++i) {
        for (long j = 0; j < n; ++j) w[i][j] = Rat(a.at(i, j));
        w[i][n] = b[i];
    }
    std::vector<long> pivot_col;
    long r = 0;
    for (long c = 0; c < n && r < m; ++c) {
        long p = -1;
        for (long i = r; i < m; ++i)
            if (w[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(w[p], w[r]);
        Rat inv = 1 / w[r][c];
        for (long j = c; j <= n; ++j) w[r][j] *= inv;
        for (long i = 0; i < m; ++i) {
            if (i == r || w[i][c] == 0) continue;
            Rat f = w[i][c];
            for (long j = c; j <= n; ++j) w[i][j] -= f * w[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (long i = r; i < m; ++i)
        if (w[i][n] != 0) return std::nullopt;
    RatVec x(n, Rat(0));
    for (long i = 0; i < r; ++i) x[pivot_col[i]] = w[i][n];
    for (Rat& q : x) q.canonicalize();
    return x;
}

std::optional<IntVec> solve_integral(const IntMatrix& a, const IntVec& b) {
    RatVec br(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) br[i] = Rat(b[i]);
    auto x = solve_rational(a, br);
    if (!x) return std::nullopt;
    IntVec r(x->size());
    for (std::size_t i = 0; i < x->size(); ++i) {
        Rat q = (*x)[i];
        q.canonicalize();
        if (q.get_den() != 1) return std::nullopt;
        r[i] = q.get_num();
    }
    return r;
}

std::vector<Int> det_identity_minus_t(const IntMatrix& a) {
    if (a.rows() != a.cols())
        throw DomainError("DimensionMismatch", "characteristic polynomial of non-square matrix");
    const long n = a.rows();
    // Evaluate p(k) = det(Id - k A) for k = 0..n, then interpolate over Q.
    std::vector<Int> values(n + 1);
    for (long k = 0; k <= n; ++k) {
        IntMatrix m = IntMatrix::identity(n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) m.at(i, j) -= Int(k) * a.at(i, j);
        values[k] = determinant(m);
    }
    // Newton's divided differences in exact rationals.
    std::vector<RatVec> table(n + 1, RatVec(n + 1, Rat(0)));
    for (long i = 0; i <= n; ++i) table[0][i] = Rat(values[i]);
    for (long lvl = 1; lvl <= n; ++lvl)
        for (long i = 0; i + lvl <= n; ++i)
            table[lvl][i] = (table[lvl - 1][i + 1] - table[lvl - 1][i]) / Rat(lvl);
    // Expand sum_k table[k][0] * t(t-1)...(t-k+1) into monomial coefficients.
    RatVec coeff(n + 1, Rat(0));
    RatVec basis{Rat(1)}; // falling factorial, as polynomial in t
    for (long k = 0; k <= n; ++k) {
        for (std::size_t j = 0; j < basis.size(); ++j) coeff[j] += table[k][0] * basis[j];
        // multiply basis by (t - k)
        RatVec next(basis.size() + 1, Rat(0));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            next[j + 1] += basis[j];
            next[j] -= Rat(k) * basis[j];
        }
        basis = std::move(next);
    }
    std::vector<Int> out(n + 1);
    for (long k = 0; k <= n; ++k) {
        Rat q = coeff[k];
        q.canonicalize();
        if (q.get_den() != 1)
            throw DomainError("InternalError", "non-integral characteristic coefficient");
        out[k] = q.get_num();
    }
    return out;
}

std::optional<long> matrix_order(const IntMatrix& a, long cap) {
    if (a.rows() != a.cols())
        throw DomainError("DimensionMismatch", "order of non-square matrix");
    IntMatrix p = a;
    for (long e = 1; e <= cap; ++e) {
        if (p.is_identity()) return e;
        p = p * a;
    }
    return std::nullopt;
}

} // namespace toriheights
