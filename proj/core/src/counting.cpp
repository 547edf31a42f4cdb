#include <toriheights/counting.hpp>

#include <toriheights/errors.hpp>
#include <toriheights/galois.hpp>

#include <algorithm>
#include <vector>

namespace toriheights {

namespace {

Int det_minus_q(const IntMatrix& a, const Int& q) {
    // det(a - q*I), exact
    IntMatrix b = a;
    for (long i = 0; i < b.rows(); ++i) b.at(i, i) -= q;
    return determinant(b);
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

}  // namespace

Int count_torus(const FrobeniusDatum& phi, int d) {
    if (phi.matrix.rows() != d || phi.matrix.cols() != d)
        throw DomainError("InvalidInput", "count_torus: matrix is not d x d");
    if (phi.q < 2) throw DomainError("InvalidInput", "count_torus: q < 2");
    Int det = det_minus_q(phi.matrix, phi.q);
    if (d % 2 != 0) det = -det;
    return det;
}

Int count_toric(const Fan& fan, const FrobeniusDatum& phi) {
    if (phi.q < 2) throw DomainError("InvalidInput", "count_toric: q < 2");
    const int d = fan.rank();
    // Throws FanNotInvariant when the matrix does not permute the rays.
    const std::vector<int> perm = ray_permutation_of(fan, phi.matrix);
    const IntMatrix phi_m = m_action(phi.matrix);

    Int total = 0;
    for (const Cone& sigma : fan.cones()) {
        // Stability of the cone under the induced ray permutation.
        std::vector<int> image;
        image.reserve(sigma.ray_indices.size());
        for (int r : sigma.ray_indices) image.push_back(perm[static_cast<size_t>(r)]);
        std::sort(image.begin(), image.end());
        if (image != sigma.ray_indices) continue;

        const int s = sigma.dim();
        const int r = d - s;
        if (r == 0) {
            // Zero-dimensional orbit, a single rational fixed point.
            total += 1;
            continue;
        }

        IntMatrix restricted(r, r);
        if (s == 0) {
            restricted = phi_m;
        } else {
            // Basis of M ∩ sigma-perp: kernel of the ray rows of sigma.
            std::vector<IntVec> ray_rows;
            ray_rows.reserve(static_cast<size_t>(s));
            for (int ri : sigma.ray_indices) ray_rows.push_back(fan.rays()[static_cast<size_t>(ri)]);
            std::vector<IntVec> kernel = integer_kernel(IntMatrix::from_rows(ray_rows));
            if (static_cast<int>(kernel.size()) != r)
                throw DomainError("InternalError", "count_toric: unexpected kernel rank");
            IntMatrix kmat = IntMatrix::from_cols(kernel);
            for (long j = 0; j < r; ++j) {
                auto coords = solve_integral(kmat, phi_m.apply(kernel[static_cast<size_t>(j)]));
                if (!coords)
                    throw DomainError("InternalError", "count_toric: orbit lattice is not stable");
                for (long i = 0; i < r; ++i) restricted.at(i, j) = (*coords)[static_cast<size_t>(i)];
            }
        }

        Int term = det_minus_q(restricted, phi.q);
        if (r % 2 != 0) term = -term;
        total += term;
    }
    return total;
}

Int brute_force_norm_torus(long p, int m) {
    if (m != 2 && m != 3) throw DomainError("InvalidInput", "brute_force_norm_torus: m must be 2 or 3");
    if (!is_prime_long(p)) throw DomainError("InvalidInput", "brute_force_norm_torus: p is not prime");
    long size = 1;
    for (int i = 0; i < m; ++i) {
        size *= p;
        if (size > 1000000L) throw DomainError("InvalidInput", "brute_force_norm_torus: p^m exceeds 10^6");
    }

    // Irreducible monic modulus of degree m. For m <= 3 irreducibility over
    // F_p is exactly the absence of a root.
    std::vector<long> modulus(static_cast<size_t>(m), 0);  // low coefficients of f
    {
        bool found = false;
        std::vector<long> c(static_cast<size_t>(m), 0);
        while (!found) {
            bool has_root = false;
            for (long t = 0; t < p && !has_root; ++t) {
                long acc = 1;  // t^m
                for (int i = 0; i < m; ++i) acc = acc * t % p;
                long tp = 1;
                for (int i = 0; i < m; ++i) {
                    acc = (acc + c[static_cast<size_t>(i)] * tp) % p;
                    tp = tp * t % p;
                }
                if (acc % p == 0) has_root = true;
            }
            if (!has_root) {
                modulus = c;
                found = true;
                break;
            }
            int i = 0;
            while (i < m && ++c[static_cast<size_t>(i)] == p) c[static_cast<size_t>(i++)] = 0;
            if (i == m) throw DomainError("InternalError", "brute_force_norm_torus: no irreducible polynomial found");
        }
    }

    auto mul = [&](const std::vector<long>& a, const std::vector<long>& b) {
        std::vector<long> t(static_cast<size_t>(2 * m - 1), 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                t[static_cast<size_t>(i + j)] = (t[static_cast<size_t>(i + j)] + a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)]) % p;
        for (int i = 2 * m - 2; i >= m; --i) {
            long c = t[static_cast<size_t>(i)];
            if (c == 0) continue;
            t[static_cast<size_t>(i)] = 0;
            for (int j = 0; j < m; ++j) {
                long& slot = t[static_cast<size_t>(i - m + j)];
                slot = (slot + (p - modulus[static_cast<size_t>(j)]) % p * c) % p;
            }
        }
        t.resize(static_cast<size_t>(m));
        return t;
    };

    // Norm exponent 1 + p + ... + p^(m-1).
    long exponent = 0;
    long pw = 1;
    for (int i = 0; i < m; ++i) {
        exponent += pw;
        pw *= p;
    }

    std::vector<long> one(static_cast<size_t>(m), 0);
    one[0] = 1;
    auto power = [&](std::vector<long> base, long e) {
        std::vector<long> acc = one;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    };

    long count = 0;
    std::vector<long> element(static_cast<size_t>(m), 0);
    for (long idx = 1; idx < size; ++idx) {
        int i = 0;
        while (++element[static_cast<size_t>(i)] == p) element[static_cast<size_t>(i++)] = 0;
        if (power(element, exponent) == one) ++count;
    }
    return Int(count);
}

}  // namespace toriheights
