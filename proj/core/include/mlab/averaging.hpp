#pragma once

#include <functional>
#include <vector>

#include "mlab/common.hpp"
#include "mlab/poly.hpp"
#include "mlab/series.hpp"

namespace mlab {

using WeightFn = std::function<double(i64)>;

inline WeightFn unit_weight() {
    return [](i64) { return 1.0; };
}

// (1/N) sum_{N/2 < n <= N} w(n) f(x+n) g(x+P(n))
WindowedSeries avg_upper(i64 N, const WeightFn& w, const WindowedSeries& f, const WindowedSeries& g,
                         const IntPolynomial& P);

// (1/N) sum_{1 <= n <= N} w(n) f(x+n) g(x+P(n))
WindowedSeries avg_full(i64 N, const WeightFn& w, const WindowedSeries& f, const WindowedSeries& g,
                        const IntPolynomial& P);

// Adjoint of avg_upper in its first slot under the bilinear pairing
// sum_x u(x) v(x):  (1/N) sum_{N/2 < n <= N} w(n) h(x-n) g(x-n+P(n)),
// so that sum_x h(x) avg_upper(f,g)(x) = sum_x f(x) avg_adjoint(h,g)(x).
WindowedSeries avg_adjoint(i64 N, const WeightFn& w, const WindowedSeries& h, const WindowedSeries& g,
                           const IntPolynomial& P);

// sum_x h(x) avg_upper(f,g)(x)
cplx trilinear_form(i64 N, const WeightFn& w, const WindowedSeries& f, const WindowedSeries& g,
                    const WindowedSeries& h, const IntPolynomial& P);

// sup over increasing index sequences of (sum |a(t_{j+1}) - a(t_j)|^r)^(1/r),
// exact via the longest-path dynamic program.  Length <= 1e4.
double variation_seminorm(const std::vector<cplx>& values, double r);
double variation_seminorm(const std::vector<double>& values, double r);

// sup_t |a_t| + seminorm
double variation_norm(const std::vector<cplx>& values, double r);
double variation_norm(const std::vector<double>& values, double r);

// exhaustive oracle over all 2^len subsequences; length <= 12
double variation_bruteforce(const std::vector<cplx>& values, double r);
double variation_bruteforce(const std::vector<double>& values, double r);

// | E_{n in [N]} (Lambda + Lambda_N)(n) f(.+Q(n)) |_{p'} / (N^(d/p'-d/p) |f|_p)
// for p in (1,2], p' the dual exponent, d = deg Q.  N <= 1e5.
double improving_ratio(i64 N, const IntPolynomial& Q, const WindowedSeries& f, double p, int C0);

}  // namespace mlab
