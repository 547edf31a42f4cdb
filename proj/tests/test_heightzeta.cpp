#include <doctest.h>

#include <toriheights/errors.hpp>
#include <toriheights/fan.hpp>
#include <toriheights/galois.hpp>
#include <toriheights/heightzeta.hpp>

#include "support/checks.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <complex>

using namespace toriheights;
using toriheights::testing::archimedean_quadrature;
using toriheights::testing::error_name;
using toriheights::testing::euler_lattice_sum;
using toriheights::testing::zeta_direct;

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

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

TEST_SUITE("heightzeta") {

TEST_CASE("local heights exponentiate the piecewise linear function") {
    Fan line = projective_space_fan(1);
    PLFunction phi = PLFunction::anticanonical(2);
    LocalPlace place{Int(5), IntMatrix::identity(1), false};
    CHECK(local_height(line, phi, place, {Int(2)}) == doctest::Approx(25.0));
    CHECK(local_height(line, phi, place, {Int(-3)}) == doctest::Approx(125.0));
    CHECK(local_height(line, phi, place, {Int(0)}) == doctest::Approx(1.0));

    LocalPlace arch{Int(0), IntMatrix::identity(1), true};
    CHECK(local_height(line, phi, arch, {Int(2)}) == doctest::Approx(std::exp(2.0)));

    LocalPlace bad{Int(1), IntMatrix::identity(1), false};
    CHECK(error_name([&] { local_height(line, phi, bad, {Int(1)}); }) == "InvalidInput");
}

TEST_CASE("euler factor data for the split line") {
    Fan line = projective_space_fan(1);
    PLFunction phi{{Rat(2), Rat(3)}};
    EulerFactorData data = build_euler_factor(line, IntMatrix::identity(1), phi, {});
    CHECK(data.orbits.size() == 2);
    CHECK(data.phi_values == std::vector<Rat>{Rat(2), Rat(3)});
    CHECK(data.degenerate == std::vector<bool>{false, false});
    CHECK_FALSE(data.cancelled);
    CHECK(data.phases.size() == 2);
}

TEST_CASE("degenerate orbits cancel exactly at inert places") {
    Fan line = projective_space_fan(1);
    EulerFactorData data =
        build_euler_factor(line, minus_identity(1), PLFunction::anticanonical(2), {});
    REQUIRE(data.orbits.size() == 1);
    CHECK(data.degenerate == std::vector<bool>{true});
    CHECK(data.cancelled);
    // numerator (1 - t1^2) / (1 - t1^2) = 1
    CHECK(data.numerator.terms.size() == 1);
    CHECK(data.numerator.coefficient({0}) == 1);
    for (long q : {2L, 3L, 5L, 7L}) {
        std::complex<double> f = evaluate_euler_factor(data, Int(q));
        CHECK(f.real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(f.imag() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("split line factor matches its closed form") {
    Fan line = projective_space_fan(1);
    PLFunction phi{{Rat(2), Rat(3)}};
    for (long q : {2L, 3L, 5L}) {
        double qd = static_cast<double>(q);
        double expected = (1.0 - std::pow(qd, -5.0)) /
                          ((1.0 - std::pow(qd, -2.0)) * (1.0 - std::pow(qd, -3.0)));
        std::complex<double> f = local_euler_factor(line, IntMatrix::identity(1), Int(q), phi, {});
        CHECK(f.real() == doctest::Approx(expected).epsilon(1e-13));
        CHECK(f.imag() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("split plane factor matches its closed form") {
    Fan plane = projective_space_fan(2);
    for (long q : {2L, 5L}) {
        double qd = static_cast<double>(q);
        double expected = (1.0 - std::pow(qd, -3.0)) / std::pow(1.0 - 1.0 / qd, 3.0);
        std::complex<double> f = local_euler_factor(plane, IntMatrix::identity(2), Int(q),
                                                    PLFunction::anticanonical(3), {});
        CHECK(f.real() == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("factors with nontrivial character phases") {
    Fan line = projective_space_fan(1);
    PLFunction phi = PLFunction::constant(2, Rat(2));

    // both phases -1: (1 - q^-4) / (1 + q^-2)^2, real
    CharacterPhases sign = {{-1.0, 0.0}, {-1.0, 0.0}};
    std::complex<double> f = local_euler_factor(line, IntMatrix::identity(1), Int(2), phi, sign);
    CHECK(f.real() == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(f.imag() == doctest::Approx(0.0).epsilon(1e-14));

    // conjugate imaginary phases: (1 - q^-4) / (1 + q^-4), real again
    CharacterPhases quarter = {{0.0, 1.0}, {0.0, -1.0}};
    std::complex<double> g =
        local_euler_factor(line, IntMatrix::identity(1), Int(2), phi, quarter);
    CHECK(g.real() == doctest::Approx(15.0 / 17.0).epsilon(1e-13));
    CHECK(g.imag() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("phase lists are validated") {
    Fan line = projective_space_fan(1);
    PLFunction phi = PLFunction::anticanonical(2);
    CHECK(error_name([&] {
              local_euler_factor(line, IntMatrix::identity(1), Int(2), phi, {{1.0, 0.0}});
          }) == "InvalidInput");
    CHECK(error_name([&] {
              local_euler_factor(line, IntMatrix::identity(1), Int(2), phi,
                                 {{0.5, 0.0}, {1.0, 0.0}});
          }) == "InvalidInput");
    CHECK(error_name([&] {
              local_euler_factor(line, IntMatrix::identity(1), Int(2),
                                 PLFunction::anticanonical(3), {});
          }) == "InvalidInput");
}

TEST_CASE("divergent substitutions are refused") {
    Fan line = projective_space_fan(1);
    CHECK(error_name([&] {
              local_euler_factor(line, IntMatrix::identity(1), Int(2),
                                 PLFunction::constant(2, Rat(0)), {});
          }) == "DivergentFactor");
    CHECK(error_name([&] {
              truncated_global_product(line, SplittingRule::all_split(1),
                                       PLFunction::anticanonical(2), 100);
          }) == "DivergentFactor");
}

TEST_CASE("factors match the fixed-point lattice sum") {
    PLFunction phi23{{Rat(2), Rat(3)}};
    Fan line = projective_space_fan(1);
    for (long q : {2L, 3L}) {
        std::complex<double> f =
            local_euler_factor(line, IntMatrix::identity(1), Int(q), phi23, {});
        double oracle = euler_lattice_sum(line, IntMatrix::identity(1), Int(q), phi23);
        CHECK(f.real() == doctest::Approx(oracle).epsilon(1e-10));
    }

    // inert place: only x = 0 is fixed, so the sum collapses to 1
    double inert = euler_lattice_sum(line, minus_identity(1), Int(3), PLFunction::anticanonical(2));
    CHECK(inert == doctest::Approx(1.0));

    Fan prod = p1xp1();
    PLFunction phi4 = PLFunction::constant(4, Rat(2));
    IntMatrix refl = mat2(-1, 0, 0, 1);
    std::complex<double> f = local_euler_factor(prod, refl, Int(3), phi4, {});
    double oracle = euler_lattice_sum(prod, refl, Int(3), phi4);
    CHECK(f.real() == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("artin factors of rank one and two") {
    CHECK(artin_local_factor(IntMatrix::identity(1), Int(2), 2.0) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(artin_local_factor(minus_identity(1), Int(2), 2.0) ==
          doctest::Approx(0.8).epsilon(1e-14));
    CHECK(artin_local_factor(IntMatrix::identity(2), Int(3), 1.0) ==
          doctest::Approx(9.0 / 4.0).epsilon(1e-14));
    CHECK(error_name([] { artin_local_factor(IntMatrix::identity(1), Int(2), 0.0); }) ==
          "PoleHit");
}

TEST_CASE("diagonal factor equals the euler factor of the diagonal height") {
    struct Case {
        Fan fan;
        std::vector<IntMatrix> elements;
    };
    std::vector<Case> cases;
    cases.push_back({projective_space_fan(1), {IntMatrix::identity(1), minus_identity(1)}});
    cases.push_back(
        {projective_space_fan(2), {IntMatrix::identity(2), mat2(0, -1, 1, -1)}});
    cases.push_back({p1xp1(), {IntMatrix::identity(2), mat2(-1, 0, 0, 1), mat2(0, 1, 1, 0)}});
    for (const Case& c : cases) {
        for (const IntMatrix& phi : c.elements) {
            for (long q : {2L, 3L, 5L}) {
                for (double s : {1.5, 2.0, 3.0}) {
                    // phi = s * phi_Sigma on every ray
                    PLFunction diag = PLFunction::constant(c.fan.rays().size(),
                                                           Rat(static_cast<long>(s * 2)) / 2);
                    std::complex<double> direct =
                        local_euler_factor(c.fan, phi, Int(q), diag, {});
                    double closed = local_factor_diagonal(c.fan, phi, Int(q), s);
                    CHECK(direct.real() == doctest::Approx(closed).epsilon(1e-12));
                    CHECK(direct.imag() == doctest::Approx(0.0).epsilon(1e-13));
                }
            }
        }
    }
}

TEST_CASE("splitting rules pick the right frobenius") {
    SplittingRule rule =
        SplittingRule::quadratic(Int(-4), IntMatrix::identity(1), minus_identity(1));
    CHECK_FALSE(rule.frobenius_at(2).has_value()); // ramified
    CHECK(rule.frobenius_at(5).value() == IntMatrix::identity(1));
    CHECK(rule.frobenius_at(3).value() == minus_identity(1));
    CHECK(rule.frobenius_at(13).value() == IntMatrix::identity(1));
    CHECK(rule.frobenius_at(7).value() == minus_identity(1));

    SplittingRule split = SplittingRule::all_split(2);
    CHECK(split.frobenius_at(97).value() == IntMatrix::identity(2));

    CHECK(error_name([] {
              SplittingRule::quadratic(Int(0), IntMatrix::identity(1), IntMatrix::identity(1));
          }) == "InvalidInput");
}

TEST_CASE("kronecker symbol values") {
    CHECK(kronecker_symbol(Int(-4), 2) == 0);
    CHECK(kronecker_symbol(Int(-4), 3) == -1);
    CHECK(kronecker_symbol(Int(-4), 5) == 1);
    CHECK(kronecker_symbol(Int(-4), 7) == -1);
    CHECK(kronecker_symbol(Int(-4), 13) == 1);
    CHECK(kronecker_symbol(Int(5), 5) == 0);
    CHECK(kronecker_symbol(Int(2), 7) == 1);
    CHECK(kronecker_symbol(Int(3), 7) == -1);
    CHECK(kronecker_symbol(Int(7), 2) == 1);  // 7 = -1 mod 8
    CHECK(kronecker_symbol(Int(5), 2) == -1); // 5 = -3 mod 8
    CHECK(error_name([] { kronecker_symbol(Int(3), 1); }) == "InvalidInput");
}

TEST_CASE("truncated products multiply the per-prime factors") {
    Fan line = projective_space_fan(1);
    PLFunction phi23{{Rat(2), Rat(3)}};
    SplittingRule all = SplittingRule::all_split(1);
    double direct = 1.0;
    for (long p : primes_up_to(100))
        direct *= local_euler_factor(line, IntMatrix::identity(1), Int(p), phi23, {}).real();
    CHECK(truncated_global_product(line, all, phi23, 100) ==
          doctest::Approx(direct).epsilon(1e-12));

    // quadratic rule: inert factors collapse to 1, p = 2 is skipped
    PLFunction phi2 = PLFunction::constant(2, Rat(2));
    SplittingRule quad =
        SplittingRule::quadratic(Int(-4), IntMatrix::identity(1), minus_identity(1));
    double expected = 1.0;
    for (long p : primes_up_to(200)) {
        int symbol = kronecker_symbol(Int(-4), p);
        if (symbol == 0) continue;
        IntMatrix frob = symbol == 1 ? IntMatrix::identity(1) : minus_identity(1);
        expected *= local_euler_factor(line, frob, Int(p), phi2, {}).real();
    }
    CHECK(truncated_global_product(line, quad, phi2, 200) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("zeta oracle sanity") {
    CHECK(zeta_direct(2, 2000000) == doctest::Approx(1.6449340668482264).epsilon(1e-6));
    CHECK(zeta_direct(3, 100000) == doctest::Approx(1.2020569031595943).epsilon(1e-9));
}

TEST_CASE("archimedean transform of the line") {
    Fan line = projective_space_fan(1);
    std::vector<std::complex<double>> s = {{2.0, 0.0}, {3.0, 0.0}};
    std::vector<double> y = {0.25};
    std::complex<double> f = archimedean_fourier(line, s, y);
    std::complex<double> expected =
        1.0 / (s[0] + std::complex<double>(0.0, kTwoPi * 0.25)) +
        1.0 / (s[1] + std::complex<double>(0.0, -kTwoPi * 0.25));
    CHECK(std::abs(f - expected) < 1e-14);

    CHECK(error_name([&] { archimedean_fourier(line, {{0.0, 0.0}, {2.0, 0.0}}, {0.0}); }) ==
          "PoleHit");
    CHECK(error_name([&] { archimedean_fourier(line, {{2.0, 0.0}}, {0.0}); }) == "InvalidInput");
    CHECK(error_name([&] { archimedean_fourier(line, s, {0.0, 0.0}); }) == "InvalidInput");
}

TEST_CASE("archimedean transform agrees with direct quadrature") {
    Fan line = projective_space_fan(1);
    std::vector<std::complex<double>> s = {{2.0, 0.0}, {2.5, 0.0}};
    std::vector<double> y = {0.1};
    std::complex<double> closed = archimedean_fourier(line, s, y);
    std::complex<double> numeric = archimedean_quadrature(line, s, y, 2048);
    CHECK(std::abs(closed - numeric) < 1e-4);
}

TEST_CASE("prime sieve") {
    CHECK(primes_up_to(30) == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(2) == std::vector<long>{2});
}

}  // TEST_SUITE
