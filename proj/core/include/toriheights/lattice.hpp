#pragma once

#include <optional>
#include <vector>

#include "toriheights/integers.hpp"

namespace toriheights {

/// Dense matrix over Z with arbitrary-precision entries, row-major storage.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    static IntMatrix identity(long n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows);
    static IntMatrix from_cols(const std::vector<IntVec>& cols);

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    Int& at(long i, long j) { return a_[i * cols_ + j]; }
    const Int& at(long i, long j) const { return a_[i * cols_ + j]; }

    IntVec row(long i) const;
    IntVec col(long j) const;

    IntMatrix operator*(const IntMatrix& other) const;
    IntVec apply(const IntVec& x) const;      // matrix * column vector
    RatVec apply(const RatVec& x) const;
    IntMatrix operator+(const IntMatrix& other) const;
    IntMatrix operator-(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const = default;

    IntMatrix transposed() const;
    bool is_identity() const;
    bool is_zero() const;

    std::string str() const;

private:
    long rows_, cols_;
    std::vector<Int> a_;
};

/// S = U * A * V with U, V unimodular, S diagonal with nonnegative entries
/// satisfying the divisibility chain d1 | d2 | ... . The inverses are tracked
/// alongside so callers get exact sections without re-inverting.
struct SmithForm {
    IntMatrix s, u, v, u_inv, v_inv;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Diagonal of the Smith form, restricted to the min(rows, cols) entries.
std::vector<Int> smith_diagonal(const IntMatrix& a);

Int determinant(const IntMatrix& a);   // Bareiss, fraction-free
long integer_rank(const IntMatrix& a);

/// Inverse of a matrix with determinant +-1; throws DomainError("NotUnimodular")
/// otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// Basis of { x in Z^cols : A x = 0 }. The basis is saturated: the quotient of
/// the ambient lattice by its span is torsion-free.
std::vector<IntVec> integer_kernel(const IntMatrix& a);

/// Basis of the common fixed sublattice { x : A x = x for every A }.
/// An empty matrix list fixes everything, giving the standard basis.
std::vector<IntVec> fixed_sublattice(const std::vector<IntMatrix>& mats, long rank);

/// Isomorphism class of a finitely generated abelian group
/// Z^free_rank + sum Z/torsion[i], with torsion[i] | torsion[i+1] and all >= 2.
struct AbelianInvariants {
    long free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const AbelianInvariants& other) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    Int torsion_order() const {
        Int t = 1;
        for (const Int& d : torsion) t *= d;
        return t;
    }
};

/// Invariants of Z^ambient_rank / <image vectors>.
AbelianInvariants quotient_invariants(long ambient_rank, const std::vector<IntVec>& image);

/// Unique rational solution of A x = b restricted to the column span; returns
/// nullopt when the system is inconsistent. Free coordinates are set to zero.
std::optional<RatVec> solve_rational(const IntMatrix& a, const RatVec& b);

/// solve_rational specialised to integer right-hand sides with an integrality
/// check; nullopt when no integer solution exists.
std::optional<IntVec> solve_integral(const IntMatrix& a, const IntVec& b);

/// Coefficients of det(Id - t*A), index k = coefficient of t^k. Exact, via
/// evaluation at t = 0..n and Lagrange interpolation.
std::vector<Int> det_identity_minus_t(const IntMatrix& a);

/// Smallest e >= 1 with A^e = Id, or nullopt if none up to the cap.
std::optional<long> matrix_order(const IntMatrix& a, long cap = 10000);

} // namespace toriheights
