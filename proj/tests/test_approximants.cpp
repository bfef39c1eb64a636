#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mlab/approximants.hpp"
#include "mlab/arith.hpp"
#include "mlab/rng.hpp"
#include "mlab/tolerances.hpp"

using namespace mlab;

TEST_CASE("Cramer weight small levels") {
    CramerWeight w3(3);
    CHECK(w3.normalization() == doctest::Approx(3.0));
    CHECK(w3(5) == doctest::Approx(3.0));
    CHECK(w3(4) == 0.0);
    CHECK(w3(1) == doctest::Approx(3.0));

    CramerWeight w1(1);
    for (i64 n = 1; n <= 20; ++n) CHECK(w1(n) == 1.0);
}

TEST_CASE("Cramer mean near one at level 20") {
    CramerWeight w(20);
    std::vector<double> v = w.values_upto(1000000);
    long double sum = 0;
    for (i64 n = 1; n <= 1000000; ++n) sum += v[static_cast<std::size_t>(n)];
    double mean = static_cast<double>(sum) / 1e6;
    CHECK(mean > 0.99);
    CHECK(mean < 1.01);
}

TEST_CASE("Cramer nonnegativity and uniform bound") {
    for (int w = 2; w <= 50; ++w) {
        CramerWeight cw(w);
        CHECK(cw.normalization() >= 1.0);
        // sup of the weight is its normalization; measured constant 2.5
        CHECK(cw.normalization() <= 2.5 * jbracket(log_scale(static_cast<double>(w))));
    }
}

TEST_CASE("Heath-Brown weights Q=3 by hand") {
    HeathBrownWeight hw = hb_weights(3);
    CHECK(hw.lambda[1] == doctest::Approx(2.0));
    CHECK(hw.lambda[2] == doctest::Approx(-2.0));
}

TEST_CASE("Heath-Brown Q=1 is identically zero; Q=2 identically one") {
    SieveTable t = build_sieve(100);
    HeathBrownWeight h1 = hb_weights(1);
    for (i64 n = 1; n <= 50; ++n) {
        CHECK(hb_eval_type1(h1, n, t) == 0.0);
        CHECK(hb_eval_direct(1, n, t) == 0.0);
        CHECK(hb_eval_direct(2, n, t) == doctest::Approx(1.0));
    }
}

TEST_CASE("Heath-Brown Q=3 evaluates to 2 on odd, 0 on even") {
    SieveTable t = build_sieve(100);
    HeathBrownWeight hw = hb_weights(3);
    for (i64 n = 1; n <= 60; ++n) {
        double expect = (n % 2 == 1) ? 2.0 : 0.0;
        CHECK(hb_eval_direct(3, n, t) == doctest::Approx(expect));
        CHECK(hb_eval_type1(hw, n, t) == doctest::Approx(expect));
    }
}

TEST_CASE("Heath-Brown weight size bound at Q=100") {
    HeathBrownWeight hw = hb_weights(100);
    CHECK(hw.max_abs() <= 10.0 * jbracket(log_scale(100.0)));
}

TEST_CASE("Type I identity: direct equals weight route") {
    SieveTable t = build_sieve(720720);
    for (i64 Q : {10, 100, 1000}) {
        HeathBrownWeight hw = hb_weights(Q);
        for (i64 n = 1; n <= 2000; ++n) {
            double a = hb_eval_direct(Q, n, t);
            double b = hb_eval_type1(hw, n, t);
            CHECK(std::abs(a - b) <= tol::kTypeIRelative * std::max({1.0, std::abs(a), std::abs(b)}));
        }
    }
    // the large composite from the worked example
    HeathBrownWeight hw = hb_weights(1000);
    double a = hb_eval_direct(1000, 720720, t);
    double b = hb_eval_type1(hw, 720720, t);
    CHECK(std::abs(a - b) <= tol::kTypeIRelative * std::max({1.0, std::abs(a), std::abs(b)}));
}

TEST_CASE("hb_values_upto agrees with per-point evaluation") {
    SieveTable t = build_sieve(3000);
    HeathBrownWeight hw = hb_weights(50);
    std::vector<double> v = hb_values_upto(hw, 3000);
    for (i64 n = 1; n <= 3000; n += 37)
        CHECK(v[static_cast<std::size_t>(n)] == doctest::Approx(hb_eval_type1(hw, n, t)));
}

TEST_CASE("scale-dependent approximant levels") {
    MangoldtApproximant a(1e6, 10);
    CHECK(a.level() == doctest::Approx(3.83).epsilon(0.01));
    CHECK(a.cramer().prime_list() == std::vector<i64>{2, 3});

    MangoldtApproximant b(1e6, 1000);  // large C0: level tends to e
    CHECK(b.level() == doctest::Approx(std::exp(1.0)).epsilon(0.01));
    CHECK(b.cramer().prime_list() == std::vector<i64>{2});

    MangoldtApproximant c(1e6, 2);
    CHECK(c.level() == doctest::Approx(78.3).epsilon(0.01));
    for (i64 n = 1; n <= 500; ++n) CHECK(lambda_N_eval(1e6, 2, n) >= 0.0);
}

TEST_CASE("Cramer weight equals its Ramanujan expansion") {
    for (double w : {1.0, 2.0, 3.0, 5.0, 7.0}) {
        CramerWeight cw(w);
        for (i64 n = 1; n <= 2000; ++n) {
            double lhs = cramer_via_ramanujan_check(w, n);
            double rhs = cw(n);
            CHECK(std::abs(lhs - rhs) <= tol::kCramerExpansionRel * std::max(1.0, std::abs(rhs)));
        }
    }
    CHECK(cramer_via_ramanujan_check(3, 5) == doctest::Approx(3.0));
    CHECK(cramer_via_ramanujan_check(3, 6) == doctest::Approx(0.0));
    for (i64 n = 1; n <= 10; ++n) CHECK(cramer_via_ramanujan_check(1, n) == doctest::Approx(1.0));
    CHECK_THROWS_AS(cramer_via_ramanujan_check(37, 1), unsupported_scale);
}

TEST_CASE("Cramer means in progressions, z = 20") {
    CramerWeight cw(20);
    std::vector<double> v = cw.values_upto(1000000);
    SieveTable t = build_sieve(100);
    for (i64 q = 1; q <= 20; ++q) {
        for (i64 a = 0; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            long double sum = 0;
            for (i64 n = (a == 0 ? q : a); n <= 1000000; n += q) sum += v[static_cast<std::size_t>(n)];
            double mean = static_cast<double>(sum) / 1e6;
            double target = 1.0 / static_cast<double>(euler_phi(q, t));
            CHECK(std::abs(mean - target) <= tol::kProgressionSlack * target);
        }
    }
}

TEST_CASE("local factor: single form is exactly one") {
    for (i64 p : {2, 3, 5, 7, 11}) {
        std::vector<AffineForm> forms{AffineForm{{1}, 0}};
        CHECK(local_factor_beta(p, forms, {100.0}) == doctest::Approx(1.0));
    }
}

TEST_CASE("local factor: degenerate form vanishes") {
    std::vector<AffineForm> forms{AffineForm{{2}, 0}};
    CHECK(local_factor_beta(2, forms, {10.0}) == 0.0);
}

TEST_CASE("local factor: parallelepiped configuration vs independent count") {
    // forms n, n+h1, n+h2, n+h1+h2 in variables (n, h1, h2)
    std::vector<AffineForm> forms{AffineForm{{1, 0, 0}, 0}, AffineForm{{1, 1, 0}, 0},
                                  AffineForm{{1, 0, 1}, 0}, AffineForm{{1, 1, 1}, 0}};
    const i64 p = 3;
    i64 count = 0;
    for (i64 n = 0; n < p; ++n)
        for (i64 h1 = 0; h1 < p; ++h1)
            for (i64 h2 = 0; h2 < p; ++h2) {
                bool ok = n % p != 0 && (n + h1) % p != 0 && (n + h2) % p != 0 &&
                          (n + h1 + h2) % p != 0;
                if (ok) ++count;
            }
    double expect = std::pow(1.5, 4) * static_cast<double>(count) / 27.0;
    CHECK(local_factor_beta(p, forms, {9, 9, 9, 9}) == doctest::Approx(expect));
}

TEST_CASE("local factor is one above all levels") {
    std::vector<AffineForm> forms{AffineForm{{1, 0}, 0}, AffineForm{{0, 1}, 5}};
    CHECK(local_factor_beta(11, forms, {5.0, 5.0}) == doctest::Approx(1.0));
}

TEST_CASE("linear count: trivial level gives exact lattice count") {
    std::vector<AffineForm> forms{AffineForm{{1, 0}, 0}, AffineForm{{0, 1}, 1}};
    IntegerBox box;
    box.ranges = {{1, 50}, {-3, 60}};
    LinearCountResult r = cramer_linear_count(forms, box, {1.0, 1.0});
    CHECK(r.lhs == doctest::Approx(static_cast<double>(box.lattice_count())));
    CHECK(r.prediction == doctest::Approx(static_cast<double>(box.lattice_count())));
}

TEST_CASE("linear count: single form at z = 10") {
    std::vector<AffineForm> forms{AffineForm{{1}, 0}};
    IntegerBox box;
    box.ranges = {{1, 1000000}};
    LinearCountResult r = cramer_linear_count(forms, box, {10.0});
    CHECK(r.lhs / r.prediction > 0.99);
    CHECK(r.lhs / r.prediction < 1.01);
}

TEST_CASE("linear count: twin configuration at z = 5") {
    std::vector<AffineForm> forms{AffineForm{{1}, 0}, AffineForm{{1}, 2}};
    IntegerBox box;
    box.ranges = {{1, 1000000}};
    LinearCountResult r = cramer_linear_count(forms, box, {5.0, 5.0});
    CHECK(r.lhs / r.prediction > 0.98);
    CHECK(r.lhs / r.prediction < 1.02);
}

TEST_CASE("linear count rejects dependent forms") {
    std::vector<AffineForm> forms{AffineForm{{1, 1}, 0}, AffineForm{{2, 2}, 0}};
    IntegerBox box;
    box.ranges = {{1, 10}, {1, 10}};
    CHECK_THROWS_AS(cramer_linear_count(forms, box, {2.0, 2.0}), std::invalid_argument);
}

namespace {

bool coprime_to_primorial(i64 n, const std::vector<i64>& ps) {
    for (i64 p : ps)
        if (n % p == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("beta sieve: weight shape invariants") {
    auto [plus, minus] = beta_sieve_weights(10, 1000);
    SieveTable t = build_sieve(1000);
    for (const auto& side : {plus, minus}) {
        CHECK(side.weights.front().first == 1);
        CHECK(side.weights.front().second == 1);
        for (auto [d, l] : side.weights) {
            CHECK(std::abs(l) == 1);
            CHECK(d <= 1000);
            CHECK(mobius(d, t) == l);  // lambda_d = mu(d) on squarefree support
            for (auto [p, e] : factorize(d, t)) {
                CHECK(e == 1);
                CHECK(p <= 10);
            }
        }
    }
}

TEST_CASE("beta sieve: sandwich and degenerate cases") {
    std::vector<i64> ps{2, 3, 5, 7};

    auto check_sandwich = [&](double w, double y, i64 n_max) {
        auto [plus, minus] = beta_sieve_weights(w, y);
        for (i64 n = 1; n <= n_max; ++n) {
            double ind = coprime_to_primorial(n, ps) ? 1.0 : 0.0;
            CHECK(minus.sum_over_divisors(n) <= ind + 1e-12);
            CHECK(plus.sum_over_divisors(n) >= ind - 1e-12);
        }
    };
    check_sandwich(10, 1000, 10000);
    check_sandwich(10, 10, 10000);  // w = y: truncated inclusion-exclusion still sandwiches
}

TEST_CASE("beta sieve: both sides at (10, 1000) are the full inclusion-exclusion") {
    // y is large enough that no chain over {2,3,5,7} is truncated
    auto [plus, minus] = beta_sieve_weights(10, 1000);
    CHECK(plus.weights.size() == 16);  // all divisors of 2*3*5*7
    CHECK(minus.weights.size() == 16);
    std::vector<i64> ps{2, 3, 5, 7};
    for (i64 n = 1; n <= 5000; ++n) {
        double ind = coprime_to_primorial(n, ps) ? 1.0 : 0.0;
        CHECK(plus.sum_over_divisors(n) == doctest::Approx(ind));
        CHECK(minus.sum_over_divisors(n) == doctest::Approx(ind));
    }
}

TEST_CASE("beta sieve: truncation bites at (10, 100)") {
    auto [plus, minus] = beta_sieve_weights(10, 100);
    // odd-step rule kills every chain starting at 5 or 7 (125, 343 > 100)
    CHECK(plus.weights.size() == 4);   // {1, 2, 3, 6}
    CHECK(minus.weights.size() == 8);  // {1, 2, 3, 5, 6, 7, 10, 14}
    std::vector<i64> ps{2, 3, 5, 7};
    for (i64 n = 1; n <= 10000; ++n) {
        double ind = coprime_to_primorial(n, ps) ? 1.0 : 0.0;
        CHECK(minus.sum_over_divisors(n) <= ind + 1e-12);
        CHECK(plus.sum_over_divisors(n) >= ind - 1e-12);
    }
}

TEST_CASE("beta sieve: mean close to phi(W)/W") {
    auto [plus, minus] = beta_sieve_weights(10, 1000);
    const double target = (1.0 / 2) * (2.0 / 3) * (4.0 / 5) * (6.0 / 7);  // phi(210)/210
    const i64 N = 1000000;
    for (const auto& side : {plus, minus}) {
        long double mean = 0;
        for (auto [d, l] : side.weights)
            mean += static_cast<long double>(l) * static_cast<long double>(N / d) /
                    static_cast<long double>(N);
        CHECK(std::abs(static_cast<double>(mean) - target) <= tol::kFundLemmaMeanSlack * target);
    }
    CHECK_THROWS_AS(beta_sieve_weights(10, 5), std::invalid_argument);
}

TEST_CASE("moment growth envelope for the Type I weight") {
    // C_k fitted at Q = 10, then checked at the larger cutoffs
    const i64 N = 1000000;
    for (i64 k : {1, 2, 3}) {
        double c_fit = 0;
        for (i64 Q : {10, 100, 1000}) {
            HeathBrownWeight hw = hb_weights(Q);
            std::vector<double> v = hb_values_upto(hw, N);
            long double m = 0;
            for (i64 n = 1; n <= N; ++n)
                m += std::pow(std::abs(static_cast<long double>(v[static_cast<std::size_t>(n)])),
                              static_cast<long double>(k));
            double moment = static_cast<double>(m / N);
            double env = std::pow(jbracket(log_scale(static_cast<double>(Q))),
                                  static_cast<double>((1LL << k) + k));
            double ratio = moment / env;
            if (Q == 10)
                c_fit = ratio;
            else
                CHECK(ratio <= c_fit * 1.05);
        }
    }
}
