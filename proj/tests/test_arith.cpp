#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mlab/arith.hpp"
#include "mlab/common.hpp"
#include "mlab/rng.hpp"
#include "mlab/tolerances.hpp"

using namespace mlab;

namespace {

// independent oracle: trial-division primality
bool trial_is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// direct unit-sum definition of the Ramanujan sum, floating point
double ramanujan_direct(i64 q, i64 n) {
    double re = 0;
    for (i64 r = 0; r < q; ++r) {
        if (std::gcd(r, q) != 1 && q > 1) continue;
        re += std::cos(-2.0 * M_PI * static_cast<double>(r) * static_cast<double>(n) /
                       static_cast<double>(q));
    }
    return re;
}

}  // namespace

TEST_CASE("build_sieve basics") {
    SieveTable t = build_sieve(10);
    CHECK(t.primes == std::vector<i64>{2, 3, 5, 7});
    CHECK(t.spf[9] == 3);
    CHECK(t.spf[10] == 2);
    CHECK_THROWS_AS(build_sieve(1), std::invalid_argument);
}

TEST_CASE("prime count at 1e6 matches trial division") {
    SieveTable t = build_sieve(1000000);
    CHECK(t.primes.size() == 78498);
    // spot-check the sieve against the oracle on a sample
    CounterRng rng = CounterRng::keyed(7, "prime_spot");
    for (int i = 0; i < 2000; ++i) {
        i64 n = 2 + static_cast<i64>(rng.below(999999));
        CHECK(t.is_prime(n) == trial_is_prime(n));
    }
}

TEST_CASE("factorize") {
    SieveTable t = build_sieve(1000);
    CHECK(factorize(12, t) == Factorization{{2, 2}, {3, 1}});
    CHECK(factorize(1, t).empty());
    CHECK(factorize(97, t) == Factorization{{97, 1}});
    CHECK_THROWS_AS(factorize(1001, t), std::out_of_range);
    // reconstruction
    for (i64 n = 1; n <= 1000; ++n) {
        i64 prod = 1;
        for (auto [p, e] : factorize(n, t))
            for (int k = 0; k < e; ++k) prod *= p;
        CHECK(prod == n);
    }
}

TEST_CASE("mobius, phi, von Mangoldt small values") {
    SieveTable t = build_sieve(100);
    CHECK(mobius(30, t) == -1);
    CHECK(euler_phi(12, t) == 4);
    CHECK(von_mangoldt(8, t) == doctest::Approx(std::log(2.0)));
    CHECK(mobius(1, t) == 1);
    CHECK(euler_phi(1, t) == 1);
    CHECK(von_mangoldt(1, t) == 0.0);
    CHECK(von_mangoldt(6, t) == 0.0);
}

TEST_CASE("Chebyshev sum near 1e6") {
    SieveTable t = build_sieve(1000000);
    long double sum = 0;
    for (i64 n = 1; n <= 1000000; ++n) sum += von_mangoldt(n, t);
    double ratio = static_cast<double>(sum) / 1e6;
    CHECK(ratio > 0.98);
    CHECK(ratio < 1.02);
}

TEST_CASE("truncated divisor function") {
    SieveTable t = build_sieve(1000000);
    CHECK(truncated_tau(12, 4, t) == 3);
    CHECK(truncated_tau(12, 1, t) == 0);
    // brute-force divisor list for 720720
    i64 n = 720720, expected = 0;
    for (i64 d = 1; d < 100; ++d)
        if (n % d == 0) ++expected;
    CHECK(truncated_tau(n, 100, t) == expected);
}

TEST_CASE("ramanujan sums: exact values and unit-sum oracle") {
    SieveTable t = build_sieve(1000);
    for (i64 n = -5; n <= 5; ++n) CHECK(ramanujan_sum(1, n, t) == 1);
    CHECK(ramanujan_sum(5, 10, t) == 4);
    CHECK(ramanujan_sum(5, 3, t) == -1);
    CHECK(ramanujan_sum(4, 2, t) == -2);
    for (i64 q = 1; q <= 60; ++q)
        for (i64 n = 0; n <= 60; ++n)
            CHECK(std::abs(static_cast<double>(ramanujan_sum(q, n, t)) - ramanujan_direct(q, n)) <
                  1e-9 * static_cast<double>(q));
}

TEST_CASE("c_p special case for primes") {
    SieveTable t = build_sieve(200);
    for (i64 p : t.primes) {
        if (p > 100) break;
        for (i64 n = 0; n < 2 * p; ++n) {
            i64 expected = (n % p == 0) ? p - 1 : -1;
            CHECK(ramanujan_sum(p, n, t) == expected);
        }
    }
}

TEST_CASE("multiplicativity on random coprime pairs") {
    SieveTable t = build_sieve(1000000);
    CounterRng rng = CounterRng::keyed(11, "mult");
    int done = 0;
    while (done < 10000) {
        i64 a = 1 + static_cast<i64>(rng.below(999));
        i64 b = 1 + static_cast<i64>(rng.below(999));
        if (std::gcd(a, b) != 1 || a * b > t.limit) continue;
        ++done;
        CHECK(mobius(a * b, t) == mobius(a, t) * mobius(b, t));
        CHECK(euler_phi(a * b, t) == euler_phi(a, t) * euler_phi(b, t));
        i64 n = static_cast<i64>(rng.below(1000));
        CHECK(ramanujan_sum(a * b, n, t) == ramanujan_sum(a, n, t) * ramanujan_sum(b, n, t));
    }
}

TEST_CASE("divisor-sum identities up to 1e4") {
    SieveTable t = build_sieve(10000);
    for (i64 n = 1; n <= 10000; ++n) {
        i64 mu_sum = 0, phi_sum = 0;
        for (i64 d : divisors(n, t)) {
            mu_sum += mobius(d, t);
            phi_sum += euler_phi(d, t);
        }
        CHECK(mu_sum == (n == 1 ? 1 : 0));
        CHECK(phi_sum == n);
    }
}

TEST_CASE("ramanujan divisor identity vs direct sum, q,n <= 200") {
    SieveTable t = build_sieve(200);
    for (i64 q = 1; q <= 200; ++q)
        for (i64 n = 0; n <= 200; ++n) {
            double direct = ramanujan_direct(q, n);
            CHECK(std::abs(static_cast<double>(ramanujan_sum(q, n, t)) - direct) <
                  tol::kRamanujanAbs * std::max(1.0, std::abs(direct)) + tol::kRamanujanAbs);
        }
}

TEST_CASE("log_scale") {
    CHECK(log_scale(1.0) == 0);
    CHECK(log_scale(2.0) == 1);
    CHECK(log_scale(1e6) == 19);
    CHECK(log_scale(1024.0) == 10);
    CHECK(log_scale(1023.9) == 9);
    CHECK_THROWS_AS(log_scale(0.5), std::invalid_argument);
}
