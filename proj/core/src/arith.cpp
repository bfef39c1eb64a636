#include "mlab/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mlab {

SieveTable build_sieve(i64 limit) {
    if (limit < 2) throw std::invalid_argument("build_sieve: limit must be >= 2");
    SieveTable t;
    t.limit = limit;
    t.spf.assign(static_cast<std::size_t>(limit) + 1, 0);
    // linear sieve: each composite is crossed once by its smallest prime factor
    for (i64 n = 2; n <= limit; ++n) {
        if (t.spf[n] == 0) {
            t.spf[n] = static_cast<std::uint32_t>(n);
            t.primes.push_back(n);
        }
        for (i64 p : t.primes) {
            if (p > t.spf[n] || n * p > limit) break;
            t.spf[n * p] = static_cast<std::uint32_t>(p);
        }
    }
    return t;
}

static void check_range(i64 n, const SieveTable& t) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (n > t.limit) throw std::out_of_range("n exceeds sieve limit");
}

Factorization factorize(i64 n, const SieveTable& t) {
    check_range(n, t);
    Factorization f;
    while (n > 1) {
        i64 p = t.spf[static_cast<std::size_t>(n)];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    return f;
}

int mobius(i64 n, const SieveTable& t) {
    check_range(n, t);
    int sign = 1;
    while (n > 1) {
        i64 p = t.spf[static_cast<std::size_t>(n)];
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    return sign;
}

i64 euler_phi(i64 n, const SieveTable& t) {
    check_range(n, t);
    i64 r = n;
    while (n > 1) {
        i64 p = t.spf[static_cast<std::size_t>(n)];
        r -= r / p;
        while (n % p == 0) n /= p;
    }
    return r;
}

double von_mangoldt(i64 n, const SieveTable& t) {
    check_range(n, t);
    if (n == 1) return 0.0;
    i64 p = t.spf[static_cast<std::size_t>(n)];
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

std::vector<i64> divisors(i64 n, const SieveTable& t) {
    Factorization f = factorize(n, t);
    std::vector<i64> ds{1};
    for (auto [p, e] : f) {
        std::size_t base = ds.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    return ds;
}

i64 truncated_tau(i64 n, i64 Q, const SieveTable& t) {
    i64 count = 0;
    for (i64 d : divisors(n, t))
        if (d < Q) ++count;
    return count;
}

i64 ramanujan_sum(i64 q, i64 n, const SieveTable& t) {
    if (q < 1) throw std::invalid_argument("ramanujan_sum: q must be >= 1");
    check_range(q, t);
    i64 r = n % q;
    if (r < 0) r += q;
    i64 g = std::gcd(q, r);  // gcd(q, 0) = q
    i64 sum = 0;
    for (i64 d : divisors(g, t)) sum += d * mobius(q / d, t);
    return sum;
}

std::vector<int> mobius_table(i64 n) {
    SieveTable t = build_sieve(std::max<i64>(n, 2));
    std::vector<int> mu(static_cast<std::size_t>(n) + 1, 0);
    if (n >= 1) mu[1] = 1;
    for (i64 k = 2; k <= n; ++k) mu[k] = mobius(k, t);
    return mu;
}

std::vector<i64> phi_table(i64 n) {
    SieveTable t = build_sieve(std::max<i64>(n, 2));
    std::vector<i64> phi(static_cast<std::size_t>(n) + 1, 0);
    if (n >= 1) phi[1] = 1;
    for (i64 k = 2; k <= n; ++k) phi[k] = euler_phi(k, t);
    return phi;
}

}  // namespace mlab
