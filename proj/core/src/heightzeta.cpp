#include <toriheights/heightzeta.hpp>

#include <toriheights/errors.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace toriheights {

namespace {

double rat_to_double(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }

std::complex<double> int_power(std::complex<double> base, long e) {
    std::complex<double> acc(1.0, 0.0);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

}  // namespace

double local_height(const Fan& fan, const PLFunction& phi, const LocalPlace& place,
                    const IntVec& x) {
    const double value = rat_to_double(pl_eval(fan, phi, x));
    if (place.is_archimedean) return std::exp(value);
    if (place.q < 2) throw DomainError("InvalidInput", "local_height: q < 2");
    return std::exp(value * std::log(place.q.get_d()));
}

EulerFactorData build_euler_factor(const Fan& fan, const IntMatrix& frobenius,
                                   const PLFunction& phi, const CharacterPhases& phases) {
    if (phi.values.size() != fan.rays().size())
        throw DomainError("InvalidInput", "build_euler_factor: wrong number of phi values");

    EulerFactorData data;
    std::vector<int> perm = ray_permutation_of(fan, frobenius);
    data.orbits = orbits_of_permutation(perm);
    const size_t l = data.orbits.size();

    if (phases.empty()) {
        data.phases.assign(l, std::complex<double>(1.0, 0.0));
    } else {
        if (phases.size() != l)
            throw DomainError("InvalidInput", "build_euler_factor: wrong number of phases");
        for (const auto& z : phases)
            if (std::abs(std::abs(z) - 1.0) > 1e-12)
                throw DomainError("InvalidInput", "build_euler_factor: phase is not unit modulus");
        data.phases = phases;
    }

    const int d = fan.rank();
    for (const auto& orbit : data.orbits.orbits) {
        IntVec sum(static_cast<size_t>(d), Int(0));
        for (int i : orbit) sum = add(sum, fan.rays()[static_cast<size_t>(i)]);
        data.degenerate.push_back(is_zero_vector(sum));
        data.phi_values.push_back(pl_eval(fan, phi, sum));
        data.orbit_ray_sums.push_back(std::move(sum));
    }

    data.numerator = q_polynomial(fan, frobenius, data.orbits);
    for (size_t j = 0; j < l; ++j) {
        if (!data.degenerate[j]) continue;
        // No fixed monomial touches a degenerate orbit (its rays sum to zero
        // inside a pointed cone), so the explicit factor 1 - t_j^{d_j}
        // divides the numerator exactly and cancels the denominator factor.
        data.numerator = divide_by_one_minus_power(
            data.numerator, j, static_cast<long>(data.orbits.orbits[j].size()));
        data.cancelled = true;
    }
    return data;
}

std::complex<double> evaluate_euler_factor(const EulerFactorData& data, const Int& q) {
    if (q < 2) throw DomainError("InvalidInput", "evaluate_euler_factor: q < 2");
    const double logq = std::log(q.get_d());
    const size_t l = data.orbits.size();

    std::vector<std::complex<double>> z(l, std::complex<double>(0.0, 0.0));
    for (size_t j = 0; j < l; ++j) {
        if (data.degenerate[j]) continue;
        const double magnitude = std::exp(-rat_to_double(data.phi_values[j]) * logq);
        z[j] = data.phases[j] * magnitude;
        if (std::abs(z[j]) >= 1.0)
            throw DomainError("DivergentFactor",
                              "evaluate_euler_factor: |z| >= 1 on orbit " + std::to_string(j + 1));
    }

    std::complex<double> numerator(0.0, 0.0);
    for (const auto& [p, c] : data.numerator.terms) {
        std::complex<double> term(c.get_d(), 0.0);
        for (size_t j = 0; j < l; ++j) {
            if (p[j] == 0) continue;
            const long dj = data.numerator.orbit_sizes[j];
            if (data.degenerate[j] || p[j] % dj != 0)
                throw DomainError("InternalError",
                                  "evaluate_euler_factor: numerator not in cancelled form");
            term *= int_power(z[j], p[j] / dj);
        }
        numerator += term;
    }

    std::complex<double> denominator(1.0, 0.0);
    for (size_t j = 0; j < l; ++j) {
        if (data.degenerate[j]) continue;
        denominator *= std::complex<double>(1.0, 0.0) - z[j];
    }
    return numerator / denominator;
}

std::complex<double> local_euler_factor(const Fan& fan, const IntMatrix& frobenius,
                                        const Int& q, const PLFunction& phi,
                                        const CharacterPhases& phases) {
    return evaluate_euler_factor(build_euler_factor(fan, frobenius, phi, phases), q);
}

double artin_local_factor(const IntMatrix& phi_m, const Int& q, double s) {
    if (phi_m.rows() != phi_m.cols())
        throw DomainError("InvalidInput", "artin_local_factor: matrix is not square");
    const std::vector<Int> coeffs = det_identity_minus_t(phi_m);
    const double t = std::exp(-s * std::log(q.get_d()));
    double det = 0.0;
    double tk = 1.0;
    for (const Int& c : coeffs) {
        det += c.get_d() * tk;
        tk *= t;
    }
    if (std::abs(det) < 1e-300)
        throw DomainError("PoleHit", "artin_local_factor: det(I - q^{-s} Phi) = 0");
    return 1.0 / det;
}

double local_factor_diagonal(const Fan& fan, const IntMatrix& frobenius, const Int& q,
                             double s) {
    const std::vector<Int> chow = chow_trace_polynomial(fan, frobenius);
    const double t = std::exp(-s * std::log(q.get_d()));
    double value = 0.0;
    double tk = 1.0;
    for (const Int& c : chow) {
        value += c.get_d() * tk;
        tk *= t;
    }
    return artin_local_factor(m_action(frobenius), q, s) * value;
}

SplittingRule SplittingRule::all_split(int rank) {
    IntMatrix id = IntMatrix::identity(rank);
    SplittingRule rule;
    rule.frobenius_at = [id](long) { return std::optional<IntMatrix>(id); };
    return rule;
}

SplittingRule SplittingRule::quadratic(const Int& discriminant, const IntMatrix& split_frobenius,
                                       const IntMatrix& inert_frobenius) {
    if (discriminant == 0)
        throw DomainError("InvalidInput", "SplittingRule::quadratic: zero discriminant");
    Int d = discriminant;
    IntMatrix split = split_frobenius;
    IntMatrix inert = inert_frobenius;
    SplittingRule rule;
    rule.frobenius_at = [d, split, inert](long p) -> std::optional<IntMatrix> {
        const int symbol = kronecker_symbol(d, p);
        if (symbol == 0) return std::nullopt;  // ramified
        return symbol == 1 ? split : inert;
    };
    return rule;
}

double truncated_global_product(const Fan& fan, const SplittingRule& splitting,
                                const PLFunction& phi, long prime_bound) {
    // Euler data is cached per distinct Frobenius matrix; the built-in rules
    // produce at most two.
    std::map<std::vector<Int>, EulerFactorData> cache;
    double product = 1.0;
    for (long p : primes_up_to(prime_bound)) {
        std::optional<IntMatrix> frob = splitting.frobenius_at(p);
        if (!frob) continue;
        std::vector<Int> key;
        key.reserve(static_cast<size_t>(frob->rows() * frob->cols()));
        for (long i = 0; i < frob->rows(); ++i)
            for (long j = 0; j < frob->cols(); ++j) key.push_back(frob->at(i, j));
        auto it = cache.find(key);
        if (it == cache.end()) {
            EulerFactorData data = build_euler_factor(fan, *frob, phi, {});
            for (size_t j = 0; j < data.orbits.size(); ++j)
                if (!data.degenerate[j] && data.phi_values[j] <= 1)
                    throw DomainError("DivergentFactor",
                                      "truncated_global_product: phi(n_j) <= 1 on orbit " +
                                          std::to_string(j + 1));
            it = cache.emplace(std::move(key), std::move(data)).first;
        }
        product *= evaluate_euler_factor(it->second, Int(p)).real();
    }
    return product;
}

std::complex<double> archimedean_fourier(const Fan& fan,
                                         const std::vector<std::complex<double>>& s,
                                         const std::vector<double>& y) {
    if (s.size() != fan.rays().size())
        throw DomainError("InvalidInput", "archimedean_fourier: wrong number of s values");
    if (static_cast<int>(y.size()) != fan.rank())
        throw DomainError("InvalidInput", "archimedean_fourier: wrong y dimension");

    constexpr double two_pi = 6.283185307179586476925286766559;
    std::complex<double> total(0.0, 0.0);
    for (const Cone& sigma : fan.maximal_cones()) {
        std::complex<double> term(1.0, 0.0);
        for (int ri : sigma.ray_indices) {
            const IntVec& e = fan.rays()[static_cast<size_t>(ri)];
            double pairing = 0.0;
            for (size_t k = 0; k < y.size(); ++k) pairing += y[k] * e[k].get_d();
            const std::complex<double> factor =
                s[static_cast<size_t>(ri)] + std::complex<double>(0.0, two_pi * pairing);
            if (std::abs(factor) == 0.0)
                throw DomainError("PoleHit", "archimedean_fourier: vanishing factor on ray " +
                                                 std::to_string(ri));
            term /= factor;
        }
        total += term;
    }
    return total;
}

std::vector<long> primes_up_to(long bound) {
    std::vector<long> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(static_cast<size_t>(bound) + 1, false);
    for (long n = 2; n <= bound; ++n) {
        if (composite[static_cast<size_t>(n)]) continue;
        primes.push_back(n);
        for (long m = n * n; m >= 0 && m <= bound; m += n) composite[static_cast<size_t>(m)] = true;
    }
    return primes;
}

int kronecker_symbol(const Int& a, long p) {
    if (p == 2) {
        const unsigned long residue = mpz_fdiv_ui(a.get_mpz_t(), 8);
        if (residue % 2 == 0) return 0;
        return (residue == 1 || residue == 7) ? 1 : -1;
    }
    if (p < 2) throw DomainError("InvalidInput", "kronecker_symbol: p is not prime");
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(p));
    if (r == 0) return 0;
    Int e((p - 1) / 2), m(p), result;
    mpz_powm(result.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return result == 1 ? 1 : -1;
}

}  // namespace toriheights
