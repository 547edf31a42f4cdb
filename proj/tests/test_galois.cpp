#include <doctest.h>

#include <toriheights/errors.hpp>
#include <toriheights/fan.hpp>
#include <toriheights/galois.hpp>

#include "support/checks.hpp"
#include "support/oracles.hpp"

using namespace toriheights;
using toriheights::testing::error_name;
using toriheights::testing::h1_bar_resolution;

namespace {

IntMatrix mat2(long a, long b, long c, long d) {
    IntMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

IntMatrix minus_identity(long n) {
    IntMatrix m = IntMatrix::identity(n);
    for (long i = 0; i < n; ++i) m.at(i, i) = -1;
    return m;
}

Fan p1xp1() {
    return build_and_validate(
        2, {{Int(1), Int(0)}, {Int(-1), Int(0)}, {Int(0), Int(1)}, {Int(0), Int(-1)}},
        {{0, 2}, {2, 1}, {1, 3}, {3, 0}});
}

const IntMatrix rot3 = mat2(0, -1, 1, -1);

}  // namespace

TEST_SUITE("galois") {

TEST_CASE("sign action on the line closes to a group of order two") {
    Fan f = projective_space_fan(1);
    GaloisAction a = close_and_verify(f, {minus_identity(1)});
    CHECK(a.size() == 2);
    CHECK(a.elements[0].is_identity());
    // the nontrivial element swaps the two rays
    CHECK(a.ray_permutations[1] == std::vector<int>{1, 0});
}

TEST_CASE("order-3 rotation of the projective plane fan") {
    Fan f = projective_space_fan(2);
    GaloisAction a = close_and_verify(f, {rot3});
    CHECK(a.size() == 3);
}

TEST_CASE("generators that move rays off the fan are rejected") {
    Fan f = projective_space_fan(2);
    // finite order, but e2 lands on (0,-1) which is not a ray
    CHECK(error_name([&] { close_and_verify(f, {mat2(1, 0, 0, -1)}); }) == "FanNotInvariant");
    // a shear has infinite order, so closure trips the size cap first
    CHECK(error_name([&] { close_and_verify(f, {mat2(1, 1, 0, 1)}); }) == "GroupTooLarge");
}

TEST_CASE("non-unimodular generators are rejected") {
    Fan f = projective_space_fan(2);
    CHECK(error_name([&] { close_and_verify(f, {mat2(2, 0, 0, 1)}); }) == "NotUnimodular");
}

TEST_CASE("closure respects the configured cap") {
    Fan f = projective_space_fan(2);
    CHECK(error_name([&] { close_and_verify(f, {rot3}, 2); }) == "GroupTooLarge");
}

TEST_CASE("ray orbit examples") {
    Fan f2 = projective_space_fan(2);
    CHECK(ray_orbits(close_and_verify(f2, {})).size() == 3);
    CHECK(ray_orbits(close_and_verify(f2, {rot3})).size() == 1);
    Fan f1 = projective_space_fan(1);
    CHECK(ray_orbits(close_and_verify(f1, {minus_identity(1)})).size() == 1);
}

TEST_CASE("orbit count equals the fixed rank of the permutation action on divisors") {
    Fan f = p1xp1();
    std::vector<std::vector<IntMatrix>> generator_sets = {
        {},
        {mat2(-1, 0, 0, 1)},
        {mat2(-1, 0, 0, 1), mat2(1, 0, 0, -1)},
        {mat2(0, 1, 1, 0)},
    };
    for (const auto& gens : generator_sets) {
        GaloisAction a = close_and_verify(f, gens);
        OrbitPartition orbits = ray_orbits(a);
        const long n = static_cast<long>(f.rays().size());
        std::vector<IntMatrix> perm_mats;
        for (const std::vector<int>& p : a.ray_permutations) {
            IntMatrix m(n, n);
            for (long i = 0; i < n; ++i) m.at(p[static_cast<size_t>(i)], i) = 1;
            perm_mats.push_back(m);
        }
        CHECK(fixed_sublattice(perm_mats, n).size() == orbits.size());
    }
}

TEST_CASE("anisotropy detection") {
    Fan f1 = projective_space_fan(1);
    CHECK(is_anisotropic(close_and_verify(f1, {minus_identity(1)})));
    CHECK_FALSE(is_anisotropic(close_and_verify(f1, {})));
    // the factor swap on P1 x P1 fixes the diagonal
    CHECK_FALSE(is_anisotropic(close_and_verify(p1xp1(), {mat2(0, 1, 1, 0)})));
    CHECK(is_anisotropic(close_and_verify(p1xp1(), {minus_identity(2)})));
}

TEST_CASE("invariant fan of the factor swap is the diagonal line fan") {
    Fan f = p1xp1();
    Fan diag = invariant_fan(f, close_and_verify(f, {mat2(0, 1, 1, 0)}));
    CHECK(diag.rank() == 1);
    CHECK(diag.rays().size() == 2);
    CHECK(diag.maximal_cones().size() == 2);
}

TEST_CASE("invariant fan of the trivial action is the fan itself") {
    Fan f = projective_space_fan(2);
    Fan same = invariant_fan(f, close_and_verify(f, {}));
    CHECK(same.rank() == 2);
    CHECK(same.rays() == f.rays());
    CHECK(same.maximal_cones().size() == f.maximal_cones().size());
}

TEST_CASE("invariant fan of an anisotropic action is trivial") {
    Fan f = projective_space_fan(1);
    Fan t = invariant_fan(f, close_and_verify(f, {minus_identity(1)}));
    CHECK(t.rank() == 0);
    CHECK(t.rays().empty());
}

TEST_CASE("h1 of the sign action on Z has order two") {
    AbelianInvariants h = h1_cyclic(minus_identity(1), 2);
    CHECK(h.free_rank == 0);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == 2);
}

TEST_CASE("h1 of trivial and induced modules vanishes") {
    for (long order = 1; order <= 4; ++order)
        CHECK(h1_cyclic(IntMatrix::identity(3), order).is_trivial());
    CHECK(h1_cyclic(mat2(0, 1, 1, 0), 2).is_trivial());
}

TEST_CASE("h1 requires the generator to have compatible finite order") {
    CHECK(error_name([] { h1_cyclic(mat2(1, 1, 0, 1), 2); }) == "NotFiniteOrder");
    CHECK(error_name([] { h1_cyclic(mat2(0, -1, 1, -1), 2); }) == "NotFiniteOrder");
}

TEST_CASE("h1_cyclic matches the bar-resolution oracle on a spot-check set") {
    struct Case {
        IntMatrix g;
        long order;
    };
    std::vector<Case> cases = {
        {minus_identity(1), 2},  {minus_identity(2), 2}, {mat2(0, 1, 1, 0), 2},
        {mat2(0, -1, 1, -1), 3}, {mat2(0, -1, 1, 0), 4}, {mat2(1, -1, 1, 0), 6},
        {minus_identity(1), 4},  {IntMatrix::identity(2), 3},
    };
    for (const Case& c : cases) {
        CHECK(h1_cyclic(c.g, c.order) == h1_bar_resolution(c.g, c.order));
    }
}

TEST_CASE("beta and h for the worked examples") {
    Fan f1 = projective_space_fan(1);
    BetaH conic = beta_and_h(f1, close_and_verify(f1, {minus_identity(1)}));
    CHECK(conic.h == 2);
    CHECK(conic.beta == 1);

    Fan f2 = projective_space_fan(2);
    BetaH split = beta_and_h(f2, close_and_verify(f2, {}));
    CHECK(split.h == 1);
    CHECK(split.beta == 1);

    BetaH rot = beta_and_h(f2, close_and_verify(f2, {rot3}));
    CHECK(rot.h == 3);
    CHECK(rot.beta == 1);
    // cross-check h against the cocycle oracle on the dual action
    AbelianInvariants oracle = h1_bar_resolution(m_action(rot3), 3);
    CHECK(oracle.free_rank == 0);
    CHECK(oracle.torsion_order() == rot.h);
}

TEST_CASE("beta_and_h rejects non-cyclic groups") {
    Fan f = p1xp1();
    GaloisAction klein = close_and_verify(f, {mat2(-1, 0, 0, 1), mat2(1, 0, 0, -1)});
    CHECK(klein.size() == 4);
    CHECK(error_name([&] { beta_and_h(f, klein); }) == "NonCyclicGroup");
}

TEST_CASE("invariant picard rank of anisotropic actions") {
    Fan f1 = projective_space_fan(1);
    CHECK(picard_rank_over_K(f1, close_and_verify(f1, {minus_identity(1)})) == 1);

    Fan prod = p1xp1();
    CHECK(picard_rank_over_K(prod, close_and_verify(prod, {minus_identity(2)})) == 2);

    // order-6 group on the hexagon: rotation with -I adjoined; the six rays
    // form a single orbit and the invariant classes drop to rank 1
    Fan hex = build_and_validate(2,
                                 {{Int(1), Int(0)},
                                  {Int(1), Int(1)},
                                  {Int(0), Int(1)},
                                  {Int(-1), Int(0)},
                                  {Int(-1), Int(-1)},
                                  {Int(0), Int(-1)}},
                                 {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    GaloisAction big = close_and_verify(hex, {rot3, minus_identity(2)});
    CHECK(big.size() == 6);
    CHECK(picard_rank_over_K(hex, big) == 1);

    Fan f2 = projective_space_fan(2);
    CHECK(error_name([&] { picard_rank_over_K(f2, close_and_verify(f2, {})); }) ==
          "NotAnisotropic");
}

TEST_CASE("every element maps every cone onto a cone") {
    Fan f = p1xp1();
    GaloisAction a = close_and_verify(f, {mat2(0, 1, 1, 0), minus_identity(2)});
    for (const IntMatrix& g : a.elements) {
        std::vector<int> perm = ray_permutation_of(f, g);
        for (const Cone& c : f.cones()) {
            std::vector<int> image;
            for (int i : c.ray_indices) image.push_back(perm[static_cast<size_t>(i)]);
            std::sort(image.begin(), image.end());
            CHECK(f.cone_index(image) >= 0);
        }
    }
}

TEST_CASE("m_action is the inverse transpose") {
    IntMatrix g = mat2(0, -1, 1, -1);
    IntMatrix dual = m_action(g);
    CHECK((dual.transposed() * g).is_identity());
}

}  // TEST_SUITE
