#pragma once

#include <vector>

#include "mlab/common.hpp"
#include "mlab/series.hpp"

namespace mlab {

// Normalized Gowers norm of order d+1 over the interval [start, start+N)
// (default [N] = {1..N}).  Computed by the difference recursion
//   |g|_{U^{k+1}(Z)}^{2^{k+1}} = sum_h |D_h g|_{U^k(Z)}^{2^k},
//   D_h g(x) = g(x+h) conj(g(x)),
// with base |g|_{U^1}^2 = |sum g|^2 and the U^2 layer evaluated through a
// zero-padded power-of-two FFT (sum_s |autocorr(s)|^2).  Scale guards:
// d+1 <= 3 needs N <= 1e6, d+1 = 4 needs N <= 2000.
double u_full_norm(const WindowedSeries& f, i64 N, int d, i64 start = 1);

// Definitional (d+2)-fold sum; test oracle for u_full_norm.  N^(d+2) <= 1e8.
double u_full_norm_bruteforce(const WindowedSeries& f, i64 N, int d, i64 start = 1);

// |E_{start <= n < start+N} f(n) e(-Q(n))|, exact average.
cplx phase_correlation(const WindowedSeries& f, i64 N, const PolynomialPhase& phase, i64 start = 1);

struct LittleUResult {
    double value = 0;       // |E f e(-Q)| for the phase below (re-evaluated)
    PolynomialPhase phase;  // certifying polynomial, degree <= d
};

// Certified lower bound on sup_{deg Q <= d} |E_{n in [N]} f(n) e(-Q(n))|.
// Stage 1 scans every tuple of rational coefficients with a common
// denominator q <= q_max through per-residue sums; stage 2 perturbs the best
// candidates coordinate-wise on a grid of `grid` offsets spanning
// [-q_max/N^j, q_max/N^j]; stage 3 is coordinate ascent with geometrically
// shrinking steps (refine_steps rounds).  The reported value is always the
// direct correlation of the returned phase, so it is a true lower bound.
LittleUResult little_u_lower(const WindowedSeries& f, i64 N, int d, int q_max, int grid,
                             int refine_steps, i64 start = 1);

}  // namespace mlab
