#include <doctest.h>

#include <random>

#include <toriheights/errors.hpp>
#include <toriheights/lattice.hpp>

using namespace toriheights;

namespace {

IntMatrix mat2(long a, long b, long c, long d) {
    IntMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

IntMatrix random_matrix(std::mt19937& rng, long rows, long cols, int spread) {
    std::uniform_int_distribution<int> d(-spread, spread);
    IntMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m.at(i, j) = d(rng);
    return m;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("smith normal form of the identity is the identity") {
    SmithForm f = smith_normal_form(IntMatrix::identity(2));
    CHECK(f.s == IntMatrix::identity(2));
    CHECK(f.u * IntMatrix::identity(2) * f.v == f.s);
}

TEST_CASE("smith normal form of diag(2,3) is diag(1,6)") {
    std::vector<Int> d = smith_diagonal(mat2(2, 0, 0, 3));
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 1);
    CHECK(d[1] == 6);
}

TEST_CASE("smith normal form of the 1x1 zero matrix is zero") {
    IntMatrix z(1, 1);
    CHECK(smith_normal_form(z).s == z);
}

TEST_CASE("smith normal form satisfies S = U A V with unimodular transforms") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        long rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
        IntMatrix a = random_matrix(rng, rows, cols, 6);
        SmithForm f = smith_normal_form(a);
        CHECK(f.u * a * f.v == f.s);
        CHECK(abs(determinant(f.u)) == 1);
        CHECK(abs(determinant(f.v)) == 1);
        CHECK(f.u * f.u_inv == IntMatrix::identity(rows));
        CHECK(f.v * f.v_inv == IntMatrix::identity(cols));
        // diagonal with divisibility chain
        Int prev = 0;
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) {
                if (i != j) CHECK(f.s.at(i, j) == 0);
            }
        for (long i = 0; i < std::min(rows, cols); ++i) {
            const Int& cur = f.s.at(i, i);
            CHECK(cur >= 0);
            if (prev != 0) CHECK(cur % prev == 0);
            prev = cur;
        }
    }
}

TEST_CASE("fixed sublattice of -I is zero") {
    IntMatrix minus = mat2(-1, 0, 0, -1);
    CHECK(fixed_sublattice({minus}, 2).empty());
}

TEST_CASE("fixed sublattice of the swap is spanned by (1,1)") {
    std::vector<IntVec> basis = fixed_sublattice({mat2(0, 1, 1, 0)}, 2);
    REQUIRE(basis.size() == 1);
    CHECK(abs(basis[0][0]) == 1);
    CHECK(basis[0][0] == basis[0][1]);
}

TEST_CASE("fixed sublattice of the identity is everything") {
    CHECK(fixed_sublattice({IntMatrix::identity(2)}, 2).size() == 2);
    CHECK(fixed_sublattice({}, 3).size() == 3);
}

TEST_CASE("fixed sublattice output is fixed and saturated") {
    std::mt19937 rng(11);
    std::vector<IntMatrix> candidates = {
        mat2(0, 1, 1, 0), mat2(0, -1, 1, -1), mat2(0, -1, 1, 0), mat2(1, 0, 0, -1)};
    for (const IntMatrix& g : candidates) {
        std::vector<IntVec> basis = fixed_sublattice({g}, 2);
        for (const IntVec& v : basis) CHECK(g.apply(v) == v);
        AbelianInvariants q = quotient_invariants(2, basis);
        CHECK(q.torsion.empty());
        CHECK(q.free_rank == 2 - static_cast<long>(basis.size()));
    }
    (void)rng;
}

TEST_CASE("quotient invariants of known quotients") {
    AbelianInvariants a = quotient_invariants(2, {{Int(2), Int(0)}, {Int(0), Int(3)}});
    CHECK(a.free_rank == 0);
    REQUIRE(a.torsion.size() == 1);
    CHECK(a.torsion[0] == 6);

    AbelianInvariants b = quotient_invariants(3, {{Int(1), Int(0), Int(0)}});
    CHECK(b.free_rank == 2);
    CHECK(b.torsion.empty());

    AbelianInvariants c = quotient_invariants(2, {});
    CHECK(c.free_rank == 2);
    CHECK(c.torsion.empty());
}

TEST_CASE("quotient invariants do not depend on the spanning set") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<IntVec> image = {{Int(2), Int(0), Int(2)}, {Int(0), Int(4), Int(0)}};
    AbelianInvariants base = quotient_invariants(3, image);
    for (int trial = 0; trial < 25; ++trial) {
        // re-span: add a random integer multiple of one vector to the other
        // and append a redundant combination
        std::vector<IntVec> re = image;
        int k = d(rng);
        for (size_t c = 0; c < 3; ++c) re[0][c] += k * re[1][c];
        IntVec sum(3, Int(0));
        for (size_t c = 0; c < 3; ++c) sum[c] = re[0][c] + re[1][c];
        re.push_back(sum);
        CHECK(quotient_invariants(3, re) == base);
    }
}

TEST_CASE("integer kernel vectors are killed and saturated") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix a = random_matrix(rng, 2 + trial % 2, 3 + trial % 2, 4);
        std::vector<IntVec> ker = integer_kernel(a);
        for (const IntVec& v : ker) {
            IntVec img = a.apply(v);
            CHECK(is_zero_vector(img));
        }
        CHECK(static_cast<long>(ker.size()) == a.cols() - integer_rank(a));
        AbelianInvariants q = quotient_invariants(a.cols(), ker);
        CHECK(q.torsion.empty());
    }
}

TEST_CASE("rational and integral solvers round-trip") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix a = random_matrix(rng, 3, 3, 5);
        IntVec x = {Int(d(rng)), Int(d(rng)), Int(d(rng))};
        IntVec b = a.apply(x);
        auto sol = solve_integral(a, b);
        REQUIRE(sol.has_value());
        CHECK(a.apply(*sol) == b);

        RatVec br(b.begin(), b.end());
        auto rsol = solve_rational(a, br);
        REQUIRE(rsol.has_value());
        RatVec back = a.apply(*rsol);
        for (size_t i = 0; i < 3; ++i) CHECK(back[i] == br[i]);
    }
}

TEST_CASE("inconsistent systems are reported") {
    IntMatrix a(2, 1);
    a.at(0, 0) = 1;
    a.at(1, 0) = 1;
    CHECK_FALSE(solve_integral(a, {Int(1), Int(2)}).has_value());
    CHECK_FALSE(solve_rational(a, {Rat(1), Rat(2)}).has_value());
    // 2x = 1 has a rational solution but no integral one
    IntMatrix two(1, 1);
    two.at(0, 0) = 2;
    CHECK_FALSE(solve_integral(two, {Int(1)}).has_value());
    CHECK(solve_rational(two, {Rat(1)}).has_value());
}

TEST_CASE("det(I - tA) matches pointwise determinants") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        long n = 1 + trial % 4;
        IntMatrix a = random_matrix(rng, n, n, 4);
        std::vector<Int> coeffs = det_identity_minus_t(a);
        REQUIRE(static_cast<long>(coeffs.size()) == n + 1);
        for (long t = -3; t <= 3; ++t) {
            IntMatrix m = IntMatrix::identity(n);
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) m.at(i, j) -= Int(t) * a.at(i, j);
            Int direct = determinant(m);
            Int horner = 0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) horner = horner * t + *it;
            CHECK(horner == direct);
        }
    }
}

TEST_CASE("matrix order detects finite and infinite order") {
    CHECK(matrix_order(IntMatrix::identity(3)) == 1);
    CHECK(matrix_order(mat2(-1, 0, 0, -1)) == 2);
    CHECK(matrix_order(mat2(0, -1, 1, -1)) == 3);
    CHECK(matrix_order(mat2(0, -1, 1, 0)) == 4);
    CHECK(matrix_order(mat2(1, -1, 1, 0)) == 6);
    CHECK_FALSE(matrix_order(mat2(1, 1, 0, 1), 100).has_value());
}

TEST_CASE("unimodular inverse round-trips and rejects other matrices") {
    IntMatrix g = mat2(2, 1, 1, 1);
    CHECK(g * unimodular_inverse(g) == IntMatrix::identity(2));
    CHECK_THROWS_WITH_AS(unimodular_inverse(mat2(2, 0, 0, 1)), doctest::Contains("NotUnimodular"),
                         DomainError);
}

}  // TEST_SUITE
