#include "mlab/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mlab/approximants.hpp"
#include "mlab/arith.hpp"

namespace mlab {

namespace {

// Shared kernel: result(x) = (1/N) sum_n w(n) A(x + sa(n)) B(x + sb(n)),
// n over (N/2, N] or [1, N].
WindowedSeries avg_kernel(i64 N, const WeightFn& w, const WindowedSeries& A, const WindowedSeries& B,
                          const std::function<i64(i64)>& sa, const std::function<i64(i64)>& sb,
                          bool upper_half) {
    if (N < 1) throw std::invalid_argument("averaging: N must be >= 1");
    const i64 n_lo = upper_half ? N / 2 + 1 : 1;

    std::vector<i64> sav, sbv, wn_n;
    std::vector<double> wv;
    for (i64 n = n_lo; n <= N; ++n) {
        double wn = w(n);
        if (wn == 0.0) continue;
        sav.push_back(sa(n));
        sbv.push_back(sb(n));
        wv.push_back(wn / static_cast<double>(N));
    }
    if (sav.empty()) return WindowedSeries(0, 1);

    // result support: union over n of [A.lo - sa, A.hi - sa) cap [B.lo - sb, B.hi - sb)
    i64 out_lo = 0, out_hi = 0;
    bool any = false;
    for (std::size_t k = 0; k < sav.size(); ++k) {
        i64 lo = std::max(A.lo() - sav[k], B.lo() - sbv[k]);
        i64 hi = std::min(A.hi() - sav[k], B.hi() - sbv[k]);
        if (lo >= hi) continue;
        if (!any) {
            out_lo = lo;
            out_hi = hi;
            any = true;
        } else {
            out_lo = std::min(out_lo, lo);
            out_hi = std::max(out_hi, hi);
        }
    }
    if (!any) return WindowedSeries(0, 1);

    WindowedSeries out(out_lo, static_cast<std::size_t>(out_hi - out_lo));
    const i64 chunk = 1 << 14;
    const i64 span = out_hi - out_lo;
    const std::size_t n_tasks = static_cast<std::size_t>((span + chunk - 1) / chunk);
    parallel_tasks(n_tasks, [&](std::size_t task) {
        i64 x0 = out_lo + static_cast<i64>(task) * chunk;
        i64 x1 = std::min(out_hi, x0 + chunk);
        for (std::size_t k = 0; k < sav.size(); ++k) {
            i64 lo = std::max({x0, A.lo() - sav[k], B.lo() - sbv[k]});
            i64 hi = std::min({x1, A.hi() - sav[k], B.hi() - sbv[k]});
            const double wk = wv[k];
            for (i64 x = lo; x < hi; ++x)
                out.ref(x) += wk * A.values[static_cast<std::size_t>(x + sav[k] - A.lo())] *
                              B.values[static_cast<std::size_t>(x + sbv[k] - B.lo())];
        }
    });
    return out;
}

}  // namespace

WindowedSeries avg_upper(i64 N, const WeightFn& w, const WindowedSeries& f, const WindowedSeries& g,
                         const IntPolynomial& P) {
    return avg_kernel(
        N, w, f, g, [](i64 n) { return n; }, [&P](i64 n) { return P(n); }, true);
}

WindowedSeries avg_full(i64 N, const WeightFn& w, const WindowedSeries& f, const WindowedSeries& g,
                        const IntPolynomial& P) {
    return avg_kernel(
        N, w, f, g, [](i64 n) { return n; }, [&P](i64 n) { return P(n); }, false);
}

WindowedSeries avg_adjoint(i64 N, const WeightFn& w, const WindowedSeries& h, const WindowedSeries& g,
                           const IntPolynomial& P) {
    return avg_kernel(
        N, w, h, g, [](i64 n) { return -n; }, [&P](i64 n) { return P(n) - n; }, true);
}

cplx trilinear_form(i64 N, const WeightFn& w, const WindowedSeries& f, const WindowedSeries& g,
                    const WindowedSeries& h, const IntPolynomial& P) {
    WindowedSeries a = avg_upper(N, w, f, g, P);
    i64 lo = std::max(a.lo(), h.lo());
    i64 hi = std::min(a.hi(), h.hi());
    cplx s{0, 0};
    for (i64 x = lo; x < hi; ++x) s += h.at(x) * a.at(x);
    return s;
}

namespace {

double variation_seminorm_impl(const std::vector<cplx>& a, double r) {
    if (r < 1.0) throw std::invalid_argument("variation: r must be >= 1");
    if (a.size() > 10000) throw unsupported_scale("variation: length <= 1e4 required");
    if (a.size() < 2) return 0.0;
    const std::size_t n = a.size();
    std::vector<double> best(n, 0.0);  // best path sum ending at t
    double top = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        double bt = 0.0;
        for (std::size_t s = 0; s < t; ++s) {
            double edge = std::pow(std::abs(a[t] - a[s]), r);
            double cand = best[s] + edge;
            if (cand > bt) bt = cand;
        }
        best[t] = bt;
        if (bt > top) top = bt;
    }
    return std::pow(top, 1.0 / r);
}

double variation_bruteforce_impl(const std::vector<cplx>& a, double r) {
    if (r < 1.0) throw std::invalid_argument("variation: r must be >= 1");
    if (a.size() > 12) throw unsupported_scale("variation_bruteforce: length <= 12 required");
    const std::size_t n = a.size();
    double top = 0.0;
    for (std::size_t mask = 1; mask < (1u << n); ++mask) {
        double sum = 0.0;
        bool have_prev = false;
        cplx prev{0, 0};
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            if (have_prev) sum += std::pow(std::abs(a[i] - prev), r);
            prev = a[i];
            have_prev = true;
        }
        if (sum > top) top = sum;
    }
    return std::pow(top, 1.0 / r);
}

std::vector<cplx> to_cplx(const std::vector<double>& v) {
    std::vector<cplx> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = cplx{v[i], 0.0};
    return c;
}

double sup_abs(const std::vector<cplx>& a) {
    double m = 0;
    for (const cplx& v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double variation_seminorm(const std::vector<cplx>& values, double r) {
    return variation_seminorm_impl(values, r);
}
double variation_seminorm(const std::vector<double>& values, double r) {
    return variation_seminorm_impl(to_cplx(values), r);
}

double variation_norm(const std::vector<cplx>& values, double r) {
    if (values.empty()) return 0.0;
    return sup_abs(values) + variation_seminorm_impl(values, r);
}
double variation_norm(const std::vector<double>& values, double r) {
    return variation_norm(to_cplx(values), r);
}

double variation_bruteforce(const std::vector<cplx>& values, double r) {
    return variation_bruteforce_impl(values, r);
}
double variation_bruteforce(const std::vector<double>& values, double r) {
    return variation_bruteforce_impl(to_cplx(values), r);
}

double improving_ratio(i64 N, const IntPolynomial& Q, const WindowedSeries& f, double p, int C0) {
    if (N < 1 || N > 100000) throw unsupported_scale("improving_ratio: 1 <= N <= 1e5 required");
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("improving_ratio: p in (1,2] required");
    double fp = f.lp_norm(p);
    if (fp == 0.0) throw std::invalid_argument("improving_ratio: |f|_p must be positive");

    SieveTable sieve = build_sieve(std::max<i64>(N, 2));
    MangoldtApproximant lam_n(static_cast<double>(N), C0);

    // T(x) = (1/N) sum_{n <= N} (Lambda + Lambda_N)(n) f(x + Q(n))
    std::vector<i64> shift;
    std::vector<double> wn;
    for (i64 n = 1; n <= N; ++n) {
        double v = von_mangoldt(n, sieve) + lam_n(n);
        if (v == 0.0) continue;
        shift.push_back(Q(n));
        wn.push_back(v / static_cast<double>(N));
    }
    i64 out_lo = f.lo() - *std::max_element(shift.begin(), shift.end());
    i64 out_hi = f.hi() - *std::min_element(shift.begin(), shift.end());
    WindowedSeries t(out_lo, static_cast<std::size_t>(out_hi - out_lo));
    for (std::size_t k = 0; k < shift.size(); ++k) {
        i64 lo = f.lo() - shift[k], hi = f.hi() - shift[k];
        for (i64 x = lo; x < hi; ++x)
            t.ref(x) += wn[k] * f.values[static_cast<std::size_t>(x + shift[k] - f.lo())];
    }

    double pp = p / (p - 1.0);
    double num = t.lp_norm(pp);
    int d = Q.degree();
    double scale = std::pow(static_cast<double>(N), static_cast<double>(d) / pp - static_cast<double>(d) / p);
    return num / (scale * fp);
}

}  // namespace mlab
