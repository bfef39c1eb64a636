#pragma once

#include <utility>

#include "mlab/averaging.hpp"
#include "mlab/common.hpp"
#include "mlab/poly.hpp"
#include "mlab/series.hpp"

namespace mlab {

// a/q mod 1 in lowest terms, 0 <= a < q
struct ReducedRational {
    i64 a = 0;
    i64 q = 1;

    ReducedRational() = default;
    ReducedRational(i64 num, i64 den);

    double value() const { return static_cast<double>(a) / static_cast<double>(q); }
};

// E over n in (Z/qZ)^x (or all of Z/qZ with units_only off) of
// e((a1 n + a2 P(n))/q).  Exact rational phases; q <= 1e7.
cplx arithmetic_symbol(i64 a1, i64 a2, i64 q, const IntPolynomial& P, bool units_only = true);

// Chinese-remainder factorization of the symbol at coprime moduli: returns
// (value at q1*q2, product of transported factors); the two agree.
std::pair<cplx, cplx> symbol_crt_factor(i64 a1, i64 a2, i64 q1, i64 q2, const IntPolynomial& P,
                                        bool units_only = true);

// int_{1/2}^1 e(xi1 N t + xi2 P(N t)) dt by composite Gauss-Legendre panels,
// doubled until two refinements agree within tol (tol >= 1e-12).
cplx continuous_symbol(double xi1, double xi2, double N, const IntPolynomial& P, double tol = 1e-10);

// E_{n in [N]} e(alpha1 n + alpha2 P(n)) e(xi1 n + xi2 P(n)) w(n) 1{n > N/2}
cplx weighted_exp_sum(i64 N, const WeightFn& w, const ReducedRational& alpha1,
                      const ReducedRational& alpha2, double xi1, double xi2, const IntPolynomial& P);

struct SymbolError {
    double N = 0;
    ReducedRational alpha1, alpha2;
    double xi1 = 0, xi2 = 0;
    cplx value{0, 0};
    bool on_major_arc = true;  // all prime factors of the common denominator <= w(N, C0)
};

// M0 = weighted_exp_sum with the Lambda_N weight minus the product of the
// arithmetic and continuous symbol factors.  With enforce_major_arc, a common
// denominator with a prime factor above w(N, C0) raises precondition_violation.
SymbolError m0_error(i64 N, int C0, const ReducedRational& alpha1, const ReducedRational& alpha2,
                     double xi1, double xi2, const IntPolynomial& P, bool enforce_major_arc = true);

// | sum_{n in I} (1{n = a (q)} Lambda_N(n) - 1{(a,q)=1}/phi(q)) | / |I|
// over the inclusive interval I = [lo, hi] inside [1, N].
double progression_mean_error(i64 N, int C0, i64 q, i64 a, i64 lo, i64 hi);

// E_{n in [N]} Lambda(n) e(alpha P(n)); only prime powers contribute.
cplx weyl_sum_primes(i64 N, double alpha, const IntPolynomial& P);

// sum over units r mod d of |E_{n in Z/qZ} e(R0(n) - rn/d)|^2 for d | q;
// R0 must have rational coefficients with denominator dividing q.
double plancherel_check(i64 q, i64 d, const PolynomialPhase& R0);

}  // namespace mlab
