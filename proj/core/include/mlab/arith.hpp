#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mlab/common.hpp"

namespace mlab {

// Smallest-prime-factor table over [2, limit], one linear pass.
// Immutable after construction; shared freely across threads.
struct SieveTable {
    i64 limit = 0;
    std::vector<std::uint32_t> spf;  // spf[n] for 0 <= n <= limit (0,1 unused)
    std::vector<i64> primes;

    bool is_prime(i64 n) const { return n >= 2 && spf[static_cast<std::size_t>(n)] == n; }
};

using Factorization = std::vector<std::pair<i64, int>>;  // (prime, exponent), primes increasing

SieveTable build_sieve(i64 limit);

Factorization factorize(i64 n, const SieveTable& t);

int mobius(i64 n, const SieveTable& t);
i64 euler_phi(i64 n, const SieveTable& t);
double von_mangoldt(i64 n, const SieveTable& t);

// All divisors of n, unsorted order not guaranteed.
std::vector<i64> divisors(i64 n, const SieveTable& t);

// #{d | n : d < Q}
i64 truncated_tau(i64 n, i64 Q, const SieveTable& t);

// c_q(n) = sum over units r mod q of e(-rn/q), exact integer via the
// divisor identity c_q(n) = sum_{d | (q,n)} d*mu(q/d).
i64 ramanujan_sum(i64 q, i64 n, const SieveTable& t);

// Dense tables over [0, n]; mobius_table[0] and phi_table[0] are 0.
std::vector<int> mobius_table(i64 n);
std::vector<i64> phi_table(i64 n);

}  // namespace mlab
