#include "mlab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mlab/approximants.hpp"
#include "mlab/arith.hpp"

namespace mlab {

namespace {

double qfrac(__float128 x) {
    i128 i = static_cast<i128>(x);
    if (static_cast<__float128>(i) > x) --i;
    double f = static_cast<double>(x - static_cast<__float128>(i));
    if (f >= 1.0) f -= 1.0;
    if (f < 0.0) f += 1.0;
    return f;
}

// frac(alpha * m), m an exact integer
double frac_scaled(double alpha, i64 m) {
    return qfrac(static_cast<__float128>(alpha) * static_cast<__float128>(m));
}

i64 mod_inverse(i64 a, i64 m) {
    // extended Euclid; gcd(a, m) must be 1
    i64 t = 0, nt = 1, r = m, nr = a % m;
    if (nr < 0) nr += m;
    while (nr != 0) {
        i64 quot = r / nr;
        i64 tmp = t - quot * nt;
        t = nt;
        nt = tmp;
        tmp = r - quot * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    return t < 0 ? t + m : t;
}

i64 largest_prime_factor(i64 n) {
    i64 best = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            best = p;
            n /= p;
        }
    }
    return std::max(best, n > 1 ? n : best);
}

}  // namespace

ReducedRational::ReducedRational(i64 num, i64 den) {
    if (den < 1) throw std::invalid_argument("ReducedRational: denominator must be >= 1");
    i64 r = num % den;
    if (r < 0) r += den;
    i64 g = std::gcd(r, den);
    if (g == 0) g = den;  // r == 0
    a = r / g;
    q = den / g;
    if (r == 0) {
        a = 0;
        q = 1;
    }
}

cplx arithmetic_symbol(i64 a1, i64 a2, i64 q, const IntPolynomial& P, bool units_only) {
    if (q < 1) throw std::invalid_argument("arithmetic_symbol: q must be >= 1");
    if (q > 10000000) throw unsupported_scale("arithmetic_symbol: q <= 1e7 required");
    i64 b1 = a1 % q, b2 = a2 % q;
    if (b1 < 0) b1 += q;
    if (b2 < 0) b2 += q;

    const bool table = q <= (1 << 20);
    std::vector<cplx> root;
    if (table) {
        root.resize(static_cast<std::size_t>(q));
        for (i64 t = 0; t < q; ++t)
            root[static_cast<std::size_t>(t)] = unit_phase(static_cast<double>(t) / static_cast<double>(q));
    }

    cplx acc{0, 0};
    i64 count = 0;
    for (i64 n = 0; n < q; ++n) {
        if (units_only && std::gcd(n, q) != 1) continue;
        i64 t = (static_cast<i128>(b1) * n + static_cast<i128>(b2) * P.eval_mod(n, q)) % q;
        acc += table ? root[static_cast<std::size_t>(t)]
                     : unit_phase(static_cast<double>(t) / static_cast<double>(q));
        ++count;
    }
    return acc / static_cast<double>(count);
}

std::pair<cplx, cplx> symbol_crt_factor(i64 a1, i64 a2, i64 q1, i64 q2, const IntPolynomial& P,
                                        bool units_only) {
    if (q1 < 1 || q2 < 1) throw std::invalid_argument("symbol_crt_factor: moduli must be >= 1");
    if (std::gcd(q1, q2) != 1) throw std::invalid_argument("symbol_crt_factor: moduli must be coprime");
    cplx lhs = arithmetic_symbol(a1, a2, q1 * q2, P, units_only);
    // 1/(q1 q2) = u/q1 + v/q2 with u = q2^{-1} mod q1, v = q1^{-1} mod q2
    cplx rhs;
    if (q1 == 1) {
        rhs = arithmetic_symbol(a1, a2, q2, P, units_only);
    } else if (q2 == 1) {
        rhs = arithmetic_symbol(a1, a2, q1, P, units_only);
    } else {
        i64 u = mod_inverse(q2 % q1, q1);
        i64 v = mod_inverse(q1 % q2, q2);
        rhs = arithmetic_symbol(a1 % q1 * u, a2 % q1 * u, q1, P, units_only) *
              arithmetic_symbol(a1 % q2 * v, a2 % q2 * v, q2, P, units_only);
    }
    return {lhs, rhs};
}

namespace {

// 16-point Gauss-Legendre on [-1, 1]
constexpr double kGlNode[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                               0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                 0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                 0.0622535239386479, 0.0271524594117541};

cplx gl_panel_integral(double a, double b, const std::function<cplx(double)>& f) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx s{0, 0};
    for (int i = 0; i < 8; ++i) {
        s += kGlWeight[i] * (f(mid + half * kGlNode[i]) + f(mid - half * kGlNode[i]));
    }
    return s * half;
}

}  // namespace

cplx continuous_symbol(double xi1, double xi2, double N, const IntPolynomial& P, double tol) {
    if (!(N >= 1)) throw std::invalid_argument("continuous_symbol: N must be >= 1");
    if (!(tol >= 1e-12)) throw std::invalid_argument("continuous_symbol: tol must be >= 1e-12");

    auto integrand = [&](double t) -> cplx {
        __float128 phase = static_cast<__float128>(xi1) * static_cast<__float128>(N) * t;
        __float128 x = static_cast<__float128>(N) * t;
        __float128 pv = 0;
        const auto& c = P.coeffs();
        for (std::size_t i = c.size(); i-- > 0;) pv = pv * x + static_cast<__float128>(c[i]);
        phase += static_cast<__float128>(xi2) * pv;
        return unit_phase(qfrac(phase));
    };

    // resolution scales with total phase variation over [1/2, 1]
    double dmax = 0;
    for (int s = 0; s <= 32; ++s) {
        double t = 0.5 + 0.5 * s / 32.0;
        dmax = std::max(dmax, P.derivative_abs(N * t));
    }
    double variation = (std::abs(xi1) * N + std::abs(xi2) * N * dmax) / (2.0 * M_PI);
    i64 panels = 1 + static_cast<i64>(std::min(variation, 1e6));

    auto integrate = [&](i64 k) -> cplx {
        cplx s{0, 0};
        for (i64 i = 0; i < k; ++i) {
            double a = 0.5 + 0.5 * static_cast<double>(i) / static_cast<double>(k);
            double b = 0.5 + 0.5 * static_cast<double>(i + 1) / static_cast<double>(k);
            s += gl_panel_integral(a, b, integrand);
        }
        return s;
    };

    cplx prev = integrate(panels);
    for (int round = 0; round < 24; ++round) {
        panels *= 2;
        cplx cur = integrate(panels);
        if (std::abs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    throw numeric_failure("continuous_symbol: quadrature did not converge");
}

cplx weighted_exp_sum(i64 N, const WeightFn& w, const ReducedRational& alpha1,
                      const ReducedRational& alpha2, double xi1, double xi2, const IntPolynomial& P) {
    if (N < 1) throw std::invalid_argument("weighted_exp_sum: N must be >= 1");
    if (N > 100000000) throw unsupported_scale("weighted_exp_sum: N <= 1e8 required");

    const i64 Q = std::lcm(alpha1.q, alpha2.q);
    if (Q > 1000000) throw unsupported_scale("weighted_exp_sum: common denominator <= 1e6 required");
    const i64 m1 = alpha1.a * (Q / alpha1.q);
    const i64 m2 = alpha2.a * (Q / alpha2.q);
    std::vector<cplx> root(static_cast<std::size_t>(Q));
    for (i64 t = 0; t < Q; ++t)
        root[static_cast<std::size_t>(t)] = unit_phase(static_cast<double>(t) / static_cast<double>(Q));

    // real-frequency phase xi1 n + xi2 P(n)
    std::vector<double> pc(P.coeffs().size(), 0.0);
    for (std::size_t i = 0; i < P.coeffs().size(); ++i) pc[i] = xi2 * static_cast<double>(P.coeffs()[i]);
    if (pc.size() < 2) pc.resize(2, 0.0);
    pc[1] += xi1;
    PolynomialPhase xiphase(pc);

    const i64 n_lo = N / 2 + 1;
    const i64 chunk = 1 << 16;
    const std::size_t n_tasks = static_cast<std::size_t>((N - n_lo) / chunk) + 1;
    std::vector<cplx> partial(n_tasks, cplx{0, 0});
    parallel_tasks(n_tasks, [&](std::size_t task) {
        i64 a = n_lo + static_cast<i64>(task) * chunk;
        i64 b = std::min(N, a + chunk - 1);
        if (a > b) return;
        PhaseStream stream(xiphase, a, +1);
        cplx s{0, 0};
        for (i64 n = a; n <= b; ++n) {
            double e_real = stream.next();
            double wn = w(n);
            if (wn == 0.0) continue;
            i64 t = (static_cast<i128>(m1) * n + static_cast<i128>(m2) * P.eval_mod(n, Q)) % Q;
            s += wn * root[static_cast<std::size_t>(t)] * unit_phase(e_real);
        }
        partial[task] = s;
    });
    cplx total{0, 0};
    for (const cplx& s : partial) total += s;
    return total / static_cast<double>(N);
}

SymbolError m0_error(i64 N, int C0, const ReducedRational& alpha1, const ReducedRational& alpha2,
                     double xi1, double xi2, const IntPolynomial& P, bool enforce_major_arc) {
    MangoldtApproximant lam(static_cast<double>(N), C0);
    const i64 Q = std::lcm(alpha1.q, alpha2.q);

    bool major = Q == 1 || static_cast<double>(largest_prime_factor(Q)) <= lam.level();
    if (!major && enforce_major_arc)
        throw precondition_violation("m0_error: denominator has a prime factor above the sieve level");

    WeightFn w = [&lam](i64 n) { return lam(n); };
    cplx s = weighted_exp_sum(N, w, alpha1, alpha2, xi1, xi2, P);
    cplx arith = arithmetic_symbol(alpha1.a * (Q / alpha1.q), alpha2.a * (Q / alpha2.q), Q, P, true);
    cplx cont = continuous_symbol(xi1, xi2, static_cast<double>(N), P, 1e-10);

    SymbolError e;
    e.N = static_cast<double>(N);
    e.alpha1 = alpha1;
    e.alpha2 = alpha2;
    e.xi1 = xi1;
    e.xi2 = xi2;
    e.value = s - arith * cont;
    e.on_major_arc = major;
    return e;
}

double progression_mean_error(i64 N, int C0, i64 q, i64 a, i64 lo, i64 hi) {
    if (q < 1) throw std::invalid_argument("progression_mean_error: q must be >= 1");
    if (lo < 1 || hi > N || lo > hi) throw std::invalid_argument("progression_mean_error: bad interval");
    MangoldtApproximant lam(static_cast<double>(N), C0);
    i64 r = a % q;
    if (r < 0) r += q;

    long double sum = 0;
    for (i64 n = lo + ((r - lo) % q + q) % q; n <= hi; n += q) sum += lam(n);

    i64 len = hi - lo + 1;
    long double expected = 0;
    if (std::gcd(r, q) == 1) {
        // phi(q) by trial division
        i64 phi = q, rest = q;
        for (i64 p = 2; p * p <= rest; ++p) {
            if (rest % p) continue;
            phi -= phi / p;
            while (rest % p == 0) rest /= p;
        }
        if (rest > 1) phi -= phi / rest;
        expected = static_cast<long double>(len) / static_cast<long double>(phi);
    }
    return static_cast<double>(std::abs(sum - expected) / static_cast<long double>(len));
}

cplx weyl_sum_primes(i64 N, double alpha, const IntPolynomial& P) {
    if (N < 2) throw std::invalid_argument("weyl_sum_primes: N must be >= 2");
    if (N > 100000000) throw unsupported_scale("weyl_sum_primes: N <= 1e8 required");
    SieveTable t = build_sieve(N);
    const std::size_t n_primes = t.primes.size();
    const std::size_t chunk = 4096;
    const std::size_t n_tasks = (n_primes + chunk - 1) / chunk;
    std::vector<cplx> partial(n_tasks, cplx{0, 0});
    parallel_tasks(n_tasks, [&](std::size_t task) {
        cplx s{0, 0};
        std::size_t i0 = task * chunk, i1 = std::min(n_primes, i0 + chunk);
        for (std::size_t i = i0; i < i1; ++i) {
            i64 p = t.primes[i];
            double lp = std::log(static_cast<double>(p));
            for (i64 pk = p; pk <= N; pk *= p) {
                s += lp * unit_phase(frac_scaled(alpha, P(pk)));
                if (pk > N / p) break;
            }
        }
        partial[task] = s;
    });
    cplx total{0, 0};
    for (const cplx& s : partial) total += s;
    return total / static_cast<double>(N);
}

double plancherel_check(i64 q, i64 d, const PolynomialPhase& R0) {
    if (q < 1 || d < 1) throw std::invalid_argument("plancherel_check: q, d must be >= 1");
    if (q % d != 0) throw std::invalid_argument("plancherel_check: d must divide q");
    if (q > 100000) throw unsupported_scale("plancherel_check: q <= 1e5 required");

    // R0 must be periodic mod q: every coefficient an integer over q
    std::vector<i64> k(R0.coeffs.size());
    for (std::size_t j = 0; j < R0.coeffs.size(); ++j) {
        double scaled = R0.coeffs[j] * static_cast<double>(q);
        double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) > 1e-9)
            throw std::invalid_argument("plancherel_check: R0 coefficients must have denominator dividing q");
        i64 ki = static_cast<i64>(rounded) % q;
        k[j] = ki < 0 ? ki + q : ki;
    }

    std::vector<cplx> root(static_cast<std::size_t>(q));
    for (i64 t = 0; t < q; ++t)
        root[static_cast<std::size_t>(t)] = unit_phase(static_cast<double>(t) / static_cast<double>(q));

    // R0(n)*q mod q as integers
    std::vector<i64> rq(static_cast<std::size_t>(q), 0);
    for (i64 n = 0; n < q; ++n) {
        i128 acc = 0;
        for (std::size_t j = k.size(); j-- > 0;) acc = (acc * n + k[j]) % q;
        rq[static_cast<std::size_t>(n)] = static_cast<i64>(acc);
    }

    const i64 step = q / d;  // rn/d = r n (q/d) / q
    double total = 0;
    for (i64 r = 0; r < d; ++r) {
        if (std::gcd(r, d) != 1) continue;
        cplx s{0, 0};
        for (i64 n = 0; n < q; ++n) {
            i64 shift = static_cast<i64>(static_cast<i128>(r) * n % q * step % q);
            i64 t = (rq[static_cast<std::size_t>(n)] - shift) % q;
            if (t < 0) t += q;
            s += root[static_cast<std::size_t>(t)];
        }
        s /= static_cast<double>(q);
        total += std::norm(s);
    }
    return total;
}

}  // namespace mlab
