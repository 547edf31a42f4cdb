#include <toriheights/enumerate.hpp>

#include <toriheights/errors.hpp>
#include <toriheights/fan.hpp>
#include <toriheights/galois.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <thread>

namespace toriheights {

namespace {

long long checked_floor(double b) { return static_cast<long long>(std::floor(b)); }

void validate_bounds(const std::vector<double>& bounds) {
    if (bounds.empty()) throw DomainError("InvalidInput", "no bounds given");
    double prev = 0;
    for (double b : bounds) {
        if (!(b > 0)) throw DomainError("InvalidInput", "bounds must be positive");
        if (b < prev) throw DomainError("InvalidInput", "bounds must be ascending");
        prev = b;
    }
}

CountSeries counts_from_histogram(const std::vector<double>& bounds,
                                  const std::vector<long long>& hist) {
    std::vector<long long> prefix(hist.size() + 1, 0);
    for (size_t h = 0; h < hist.size(); ++h) prefix[h + 1] = prefix[h] + hist[h];
    CountSeries series;
    series.bounds = bounds;
    for (double b : bounds) {
        long long idx = std::min<long long>(checked_floor(b), static_cast<long long>(hist.size()) - 1);
        series.counts.push_back(idx < 0 ? 0 : prefix[static_cast<size_t>(idx) + 1]);
    }
    return series;
}

// Runs shard(lo, hi, hist) over chunks of [lo, hi] concurrently and merges
// the per-shard histograms. Exact integer counts make the merge order
// irrelevant.
template <typename Shard>
std::vector<long long> parallel_histogram(long long hist_size, long long lo, long long hi,
                                          const Shard& shard) {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    long long range = hi - lo + 1;
    if (range <= 0) return std::vector<long long>(static_cast<size_t>(hist_size), 0);
    long long chunks = std::min<long long>(threads, range);
    std::vector<std::future<std::vector<long long>>> futures;
    for (long long c = 0; c < chunks; ++c) {
        long long a = lo + range * c / chunks;
        long long b = lo + range * (c + 1) / chunks - 1;
        futures.push_back(std::async(std::launch::async, [&shard, hist_size, a, b]() {
            std::vector<long long> hist(static_cast<size_t>(hist_size), 0);
            shard(a, b, hist);
            return hist;
        }));
    }
    std::vector<long long> total(static_cast<size_t>(hist_size), 0);
    for (auto& f : futures) {
        std::vector<long long> part = f.get();
        for (size_t i = 0; i < total.size(); ++i) total[i] += part[i];
    }
    return total;
}

long long isqrt_ll(long long n) {
    if (n < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// signed integer cube root of n when n is a perfect cube, otherwise nullopt
std::optional<long long> exact_cbrt(__int128 n) {
    if (n == 0) return 0;
    bool neg = n < 0;
    __int128 m = neg ? -n : n;
    long long c = static_cast<long long>(std::cbrt(static_cast<double>(static_cast<long double>(m))));
    for (long long t = std::max(0LL, c - 2); t <= c + 2; ++t) {
        __int128 cube = static_cast<__int128>(t) * t * t;
        if (cube == m) return neg ? -t : t;
    }
    return std::nullopt;
}

long long max_norm_cap(const PointFamily& family) {
    switch (family.kind) {
        case PointFamily::Kind::Projective:
            return family.dim == 1 ? 1000000 : 10000;
        case PointFamily::Kind::Conic:
            return family.discriminant == -4 ? 1000000 : 10000;
        case PointFamily::Kind::NormCubic:
            return 1000;
    }
    throw DomainError("InternalError", "unknown family kind");
}

std::vector<long long> projective_histogram(int d, long long box) {
    const int n = d + 1;
    // hist indexed by max norm; callers convert to heights m^(d+1)
    return parallel_histogram(
        box + 1, 0, box, [n, box](long long lo, long long hi, std::vector<long long>& hist) {
            std::vector<long long> x(static_cast<size_t>(n), 0);
            // odometer over coordinates 1..n-1; coordinate 0 is the shard range
            for (long long x0 = lo; x0 <= hi; ++x0) {
                x[0] = x0;
                size_t i = 1;
                for (size_t k = 1; k < x.size(); ++k) x[k] = -box;
                while (true) {
                    long long g = 0, m = 0;
                    long long first = 0;
                    for (size_t k = 0; k < x.size(); ++k) {
                        if (first == 0) first = x[k];
                        g = std::gcd(g, std::abs(x[k]));
                        m = std::max(m, std::abs(x[k]));
                    }
                    if (first > 0 && g == 1) ++hist[static_cast<size_t>(m)];
                    // advance odometer
                    i = 1;
                    while (i < x.size() && x[i] == box) x[i++] = -box;
                    if (i == x.size()) break;
                    ++x[i];
                }
            }
        });
}

std::vector<long long> conic_fast_histogram(long long box) {
    // primitive Pythagorean parametrization: height is the hypotenuse
    std::vector<long long> hist(static_cast<size_t>(box) + 1, 0);
    if (box >= 1) hist[1] += 4;  // (1,0,+-1), (0,1,+-1)
    long long mmax = isqrt_ll(box);
    for (long long m = 2; m <= mmax; ++m) {
        for (long long n = 1; n < m; ++n) {
            long long v = m * m + n * n;
            if (v > box) break;
            if ((m + n) % 2 == 0) continue;
            if (std::gcd(m, n) != 1) continue;
            // legs (m^2-n^2, 2mn): two coordinate orders times four sign
            // classes of the two nonleading coordinates
            hist[static_cast<size_t>(v)] += 8;
        }
    }
    return hist;
}

std::vector<long long> conic_naive_histogram(const Int& big_d, long long box) {
    const long long d4 = mpz_get_si(Int(big_d / 4).get_mpz_t());
    return parallel_histogram(
        box + 1, 0, box, [d4, box](long long lo, long long hi, std::vector<long long>& hist) {
            for (long long x = lo; x <= hi; ++x) {
                for (long long y = -box; y <= box; ++y) {
                    long long rhs = x * x - d4 * y * y;
                    if (rhs < 0) continue;
                    long long z = isqrt_ll(rhs);
                    if (z * z != rhs) continue;
                    for (long long zc : {z, -z}) {
                        if (zc == 0 && z != 0) continue;  // avoid double-counting z = 0
                        long long first = x != 0 ? x : (y != 0 ? y : zc);
                        if (first <= 0) continue;
                        if (std::gcd(std::gcd(std::abs(x), std::abs(y)), std::abs(zc)) != 1)
                            continue;
                        long long h = std::max({std::abs(x), std::abs(y), std::abs(zc)});
                        if (h <= box) ++hist[static_cast<size_t>(h)];
                    }
                }
            }
        });
}

std::vector<long long> norm_cubic_histogram(const IntVec& low, long long box) {
    // companion matrix of f and its square, in machine integers
    long long c0 = mpz_get_si(low[0].get_mpz_t());
    long long c1 = mpz_get_si(low[1].get_mpz_t());
    long long c2 = mpz_get_si(low[2].get_mpz_t());
    long long C[3][3] = {{0, 0, -c0}, {1, 0, -c1}, {0, 1, -c2}};
    long long C2[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            C2[i][j] = 0;
            for (int k = 0; k < 3; ++k) C2[i][j] += C[i][k] * C[k][j];
        }

    return parallel_histogram(
        box + 1, -box, box, [&](long long lo, long long hi, std::vector<long long>& hist) {
            for (long long z1 = lo; z1 <= hi; ++z1) {
                for (long long z2 = -box; z2 <= box; ++z2) {
                    for (long long z3 = -box; z3 <= box; ++z3) {
                        __int128 a[3][3];
                        for (int i = 0; i < 3; ++i)
                            for (int j = 0; j < 3; ++j)
                                a[i][j] = static_cast<__int128>(z2) * C[i][j] +
                                          static_cast<__int128>(z3) * C2[i][j] +
                                          (i == j ? z1 : 0);
                        __int128 det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                                       a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                                       a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
                        auto z0 = exact_cbrt(det);
                        if (!z0 || *z0 <= 0 || *z0 > box) continue;
                        long long g = std::gcd(std::gcd(*z0, std::abs(z1)),
                                               std::gcd(std::abs(z2), std::abs(z3)));
                        if (g != 1) continue;
                        long long h = std::max({*z0, std::abs(z1), std::abs(z2), std::abs(z3)});
                        ++hist[static_cast<size_t>(h)];
                    }
                }
            }
        });
}

CountSeries enumerate_dispatch(const PointFamily& family, const std::vector<double>& bounds,
                               bool allow_fast) {
    validate_bounds(bounds);
    const double max_bound = bounds.back();

    switch (family.kind) {
        case PointFamily::Kind::Projective: {
            if (max_bound > static_cast<double>(max_norm_cap(family)))
                throw DomainError("BoundTooLarge", family.name + ": bound exceeds cap");
            // height (max|x|)^{d+1} <= B, so the box radius is B^{1/(d+1)}
            long long box = static_cast<long long>(
                std::floor(std::pow(max_bound, 1.0 / (family.dim + 1))));
            auto pow_height = [&](long long m) {
                long long h = 1;
                for (int i = 0; i <= family.dim; ++i) h *= m;
                return h;
            };
            while (box > 0 && pow_height(box) > max_bound) --box;
            while (pow_height(box + 1) <= max_bound) ++box;
            std::vector<long long> by_norm = projective_histogram(family.dim, box);
            long long hist_size = pow_height(box) + 1;
            std::vector<long long> hist(static_cast<size_t>(hist_size), 0);
            for (long long m = 1; m <= box; ++m) hist[static_cast<size_t>(pow_height(m))] += by_norm[static_cast<size_t>(m)];
            return counts_from_histogram(bounds, hist);
        }
        case PointFamily::Kind::Conic: {
            const bool fast = allow_fast && family.discriminant == -4;
            const long long cap = fast ? 1000000 : 10000;
            if (max_bound > static_cast<double>(cap))
                throw DomainError("BoundTooLarge", family.name + ": bound exceeds cap");
            long long box = checked_floor(max_bound);
            std::vector<long long> hist = fast ? conic_fast_histogram(box)
                                               : conic_naive_histogram(family.discriminant, box);
            return counts_from_histogram(bounds, hist);
        }
        case PointFamily::Kind::NormCubic: {
            if (max_bound > static_cast<double>(max_norm_cap(family)))
                throw DomainError("BoundTooLarge", family.name + ": bound exceeds cap");
            long long box = checked_floor(max_bound);
            return counts_from_histogram(bounds, norm_cubic_histogram(family.cubic_low, box));
        }
    }
    throw DomainError("InternalError", "unknown family kind");
}

}  // namespace

PointFamily PointFamily::projective(int d) {
    if (d < 1 || d > 3)
        throw DomainError("InvalidInput", "projective family supports d in {1,2,3}");
    PointFamily f;
    f.kind = Kind::Projective;
    f.dim = d;
    f.name = "projective(" + std::to_string(d) + ")";
    return f;
}

PointFamily PointFamily::conic(const Int& big_d) {
    if (big_d == 0 || big_d % 4 != 0)
        throw DomainError("InvalidInput", "conic discriminant must be nonzero and 0 mod 4");
    if (mpz_perfect_square_p(big_d.get_mpz_t()))
        throw DomainError("InvalidInput", "conic discriminant must not be a square");
    if (abs(big_d) > 4000000)
        throw DomainError("InvalidInput", "conic discriminant too large");
    PointFamily f;
    f.kind = Kind::Conic;
    f.discriminant = big_d;
    f.name = "conic(" + big_d.get_str() + ")";
    return f;
}

PointFamily PointFamily::norm_cubic(const IntVec& low_coeffs) {
    if (low_coeffs.size() != 3)
        throw DomainError("InvalidInput", "norm_cubic needs exactly the coefficients (c0,c1,c2)");
    for (const Int& c : low_coeffs)
        if (abs(c) > 100)
            throw DomainError("InvalidInput", "norm_cubic coefficients limited to |c| <= 100");
    // irreducible monic cubic over Q: no integer root (divisors of c0)
    const Int& c0 = low_coeffs[0];
    if (c0 == 0) throw DomainError("InvalidInput", "norm_cubic polynomial has root 0");
    auto value_at = [&](const Int& t) -> Int {
        return t * t * t + low_coeffs[2] * t * t + low_coeffs[1] * t + c0;
    };
    Int bound = abs(c0);
    for (Int t = 1; t <= bound; ++t) {
        if (c0 % t != 0) continue;
        if (value_at(t) == 0 || value_at(-t) == 0)
            throw DomainError("InvalidInput", "norm_cubic polynomial is reducible");
    }
    PointFamily f;
    f.kind = Kind::NormCubic;
    f.cubic_low = low_coeffs;
    f.name = "norm_cubic(" + low_coeffs[0].get_str() + "," + low_coeffs[1].get_str() + "," +
             low_coeffs[2].get_str() + ")";
    return f;
}

PointFamily PointFamily::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    size_t open = s.find_first_of("(:");
    if (open == std::string::npos)
        throw DomainError("ParseError", "family must look like name(args): " + text);
    std::string name = s.substr(0, open);
    std::string args;
    if (s[open] == '(') {
        if (s.back() != ')')
            throw DomainError("ParseError", "missing closing parenthesis: " + text);
        args = s.substr(open + 1, s.size() - open - 2);
    } else {
        args = s.substr(open + 1);
    }
    std::vector<std::string> parts;
    size_t start = 0;
    while (start <= args.size()) {
        size_t comma = args.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(args.substr(start));
            break;
        }
        parts.push_back(args.substr(start, comma - start));
        start = comma + 1;
    }
    try {
        if (name == "projective" && parts.size() == 1)
            return projective(std::stoi(parts[0]));
        if (name == "conic" && parts.size() == 1) return conic(Int(parts[0]));
        if (name == "norm_cubic" && parts.size() == 3)
            return norm_cubic({Int(parts[0]), Int(parts[1]), Int(parts[2])});
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw DomainError("ParseError", "bad family arguments: " + text);
    }
    throw DomainError("ParseError", "unknown family: " + text);
}

Int family_height(const PointFamily& family, const IntVec& point) {
    size_t expected = 0;
    switch (family.kind) {
        case PointFamily::Kind::Projective: expected = static_cast<size_t>(family.dim) + 1; break;
        case PointFamily::Kind::Conic: expected = 3; break;
        case PointFamily::Kind::NormCubic: expected = 4; break;
    }
    if (point.size() != expected)
        throw DomainError("InvalidInput", family.name + ": point has wrong length");
    if (is_zero_vector(point)) throw DomainError("NotPrimitive", "zero point");
    if (content(point) != 1) throw DomainError("NotPrimitive", "coordinates share a factor");

    Int m = 0;
    for (const Int& c : point) m = std::max(m, Int(abs(c)));

    switch (family.kind) {
        case PointFamily::Kind::Projective: {
            Int h = 1;
            for (int i = 0; i <= family.dim; ++i) h *= m;
            return h;
        }
        case PointFamily::Kind::Conic: {
            const Int d4 = family.discriminant / 4;
            if (point[0] * point[0] - d4 * point[1] * point[1] != point[2] * point[2])
                throw DomainError("NotOnVariety", family.name + ": equation fails");
            return m;
        }
        case PointFamily::Kind::NormCubic: {
            // N(z1,z2,z3) as det(z1 + z2 theta + z3 theta^2) acting on Z[theta]
            IntMatrix c(3, 3);
            c.at(0, 2) = -family.cubic_low[0];
            c.at(1, 0) = 1;
            c.at(1, 2) = -family.cubic_low[1];
            c.at(2, 1) = 1;
            c.at(2, 2) = -family.cubic_low[2];
            IntMatrix c2 = c * c;
            IntMatrix a(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    a.at(i, j) = point[1] * (i == j ? 1 : 0) + point[2] * c.at(i, j) +
                                 point[3] * c2.at(i, j);
            if (determinant(a) != point[0] * point[0] * point[0])
                throw DomainError("NotOnVariety", family.name + ": norm equation fails");
            return m;
        }
    }
    throw DomainError("InternalError", "unknown family kind");
}

CountSeries enumerate_counts(const PointFamily& family, const std::vector<double>& bounds) {
    return enumerate_dispatch(family, bounds, true);
}

CountSeries enumerate_counts_naive(const PointFamily& family, const std::vector<double>& bounds) {
    return enumerate_dispatch(family, bounds, false);
}

FitResult fit_asymptotic(const CountSeries& series, const std::vector<long>& b_candidates) {
    if (series.bounds.size() != series.counts.size())
        throw DomainError("InvalidInput", "fit_asymptotic: ragged series");
    const std::vector<long> candidates =
        b_candidates.empty() ? std::vector<long>{1, 2, 3, 4} : b_candidates;

    std::vector<double> x, w, y;
    double used_min = 0, used_max = 0;
    for (size_t i = 0; i < series.bounds.size(); ++i) {
        const double b = series.bounds[i];
        if (b <= 1.0 || series.counts[i] < 1) continue;
        x.push_back(std::log(b));
        w.push_back(std::log(std::log(b)));
        y.push_back(std::log(static_cast<double>(series.counts[i])));
        if (used_min == 0) used_min = b;
        used_max = b;
    }
    if (x.size() < 8 || used_max < 100.0 * used_min)
        throw DomainError("InsufficientData",
                          "fit_asymptotic: need 8 usable bounds spanning two decades");

    FitResult best;
    bool have_best = false;
    const double n = static_cast<double>(x.size());
    for (long b : candidates) {
        double sx = 0, sxx = 0, sy = 0, sxy = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double yi = y[i] - static_cast<double>(b - 1) * w[i];
            sx += x[i];
            sxx += x[i] * x[i];
            sy += yi;
            sxy += x[i] * yi;
        }
        const double denom = n * sxx - sx * sx;
        if (std::abs(denom) < 1e-12) continue;
        const double a = (n * sxy - sx * sy) / denom;
        const double k = (sy - a * sx) / n;
        double ss = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double yi = y[i] - static_cast<double>(b - 1) * w[i];
            const double r = yi - a * x[i] - k;
            ss += r * r;
        }
        const double residual = std::sqrt(ss / n);
        if (!have_best || residual < best.residual) {
            best = FitResult{a, b, std::exp(k), residual};
            have_best = true;
        }
    }
    if (!have_best) throw DomainError("InsufficientData", "fit_asymptotic: no candidate fits");
    return best;
}

std::optional<ABInvariants> predicted_invariants(const PointFamily& family) {
    switch (family.kind) {
        case PointFamily::Kind::Projective: {
            Fan fan = projective_space_fan(family.dim);
            GaloisAction trivial = close_and_verify(fan, {});
            return a_b_invariants(fan, trivial, PLFunction::anticanonical(fan.rays().size()));
        }
        case PointFamily::Kind::Conic: {
            Fan fan = projective_space_fan(1);
            IntMatrix minus(1, 1);
            minus.at(0, 0) = -1;
            GaloisAction action = close_and_verify(fan, {minus});
            return a_b_invariants(fan, action, PLFunction::anticanonical(fan.rays().size()));
        }
        case PointFamily::Kind::NormCubic:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace toriheights
