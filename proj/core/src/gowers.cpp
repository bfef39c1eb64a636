#include "mlab/gowers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "mlab/fft.hpp"

namespace mlab {

namespace {

// sum_s |sum_x g(x) conj(g(x+s))|^2 via zero-padded FFT (Parseval)
long double u2_fourth_power(const std::vector<cplx>& g) {
    const std::size_t L = g.size();
    if (L == 0) return 0;
    const std::size_t M = next_pow2(2 * L);
    std::vector<cplx> a(M, cplx{0, 0});
    std::copy(g.begin(), g.end(), a.begin());
    fft_pow2(a);
    long double s = 0;
    for (const cplx& v : a) {
        long double m2 = static_cast<long double>(std::norm(v));
        s += m2 * m2;
    }
    return s / static_cast<long double>(M);
}

long double u1_square(const std::vector<cplx>& g) {
    cplx s{0, 0};
    for (const cplx& v : g) s += v;
    return static_cast<long double>(std::norm(s));
}

std::vector<cplx> multiplicative_difference(const std::vector<cplx>& g, std::size_t h) {
    // D_h g(x) = g(x+h) conj(g(x)), support length L-h
    std::vector<cplx> d(g.size() - h);
    for (std::size_t x = 0; x < d.size(); ++x) d[x] = g[x + h] * std::conj(g[x]);
    return d;
}

// |g|_{U^k(Z)}^{2^k}, sequential recursion
long double u_unnorm_pow(const std::vector<cplx>& g, int k) {
    if (g.empty()) return 0;
    if (k == 1) return u1_square(g);
    if (k == 2) return u2_fourth_power(g);
    // D_{-h} g is a translated conjugate of D_h g, so h and -h contribute equally
    long double total = u_unnorm_pow(multiplicative_difference(g, 0), k - 1);
    for (std::size_t h = 1; h < g.size(); ++h)
        total += 2.0L * u_unnorm_pow(multiplicative_difference(g, h), k - 1);
    return total;
}

// Parallel top level of the h-recursion.  Fixed 64-wide tasks keep the
// reduction order independent of the thread count.
long double u_unnorm_pow_parallel(const std::vector<cplx>& g, int k) {
    if (k <= 2 || g.size() < 256) return u_unnorm_pow(g, k);
    const std::size_t L = g.size();
    const std::size_t chunk = 64;
    const std::size_t n_tasks = (L + chunk - 1) / chunk;
    std::vector<long double> partial(n_tasks, 0.0L);
    parallel_tasks(n_tasks, [&](std::size_t t) {
        std::size_t h0 = t * chunk, h1 = std::min(L, h0 + chunk);
        long double s = 0;
        for (std::size_t h = h0; h < h1; ++h) {
            long double v = u_unnorm_pow(multiplicative_difference(g, h), k - 1);
            s += (h == 0) ? v : 2.0L * v;
        }
        partial[t] = s;
    });
    long double total = 0;
    for (long double p : partial) total += p;
    return total;
}

// |1_{[L]}|_{U^k(Z)}^{2^k}: differences of box functions are shorter boxes,
// so one prefix-sum pass per level suffices
long double box_unorm_pow(int k, i64 L) {
    std::vector<long double> cur(static_cast<std::size_t>(L) + 1);
    for (i64 l = 0; l <= L; ++l)
        cur[static_cast<std::size_t>(l)] = static_cast<long double>(l) * static_cast<long double>(l);
    for (int level = 2; level <= k; ++level) {
        std::vector<long double> next(cur.size());
        long double prefix = 0;  // sum_{m < l} cur[m]
        for (i64 l = 0; l <= L; ++l) {
            next[static_cast<std::size_t>(l)] = cur[static_cast<std::size_t>(l)] + 2.0L * prefix;
            prefix += cur[static_cast<std::size_t>(l)];
        }
        cur.swap(next);
    }
    return cur[static_cast<std::size_t>(L)];
}

void check_scale(i64 N, int d) {
    if (N < 1) throw std::invalid_argument("gowers norm: N must be >= 1");
    if (d < 0) throw std::invalid_argument("gowers norm: d must be >= 0");
    int order = d + 1;
    if (order <= 3) {
        if (N > 1000000) throw unsupported_scale("gowers norm: N <= 1e6 required for d+1 <= 3");
    } else if (order == 4) {
        if (N > 2000) throw unsupported_scale("gowers norm: N <= 2000 required for d+1 = 4");
    } else {
        throw unsupported_scale("gowers norm: d+1 <= 4 supported");
    }
}

std::vector<cplx> restrict_window(const WindowedSeries& f, i64 start, i64 N) {
    std::vector<cplx> g(static_cast<std::size_t>(N));
    for (i64 i = 0; i < N; ++i) g[static_cast<std::size_t>(i)] = f.at(start + i);
    return g;
}

}  // namespace

double u_full_norm(const WindowedSeries& f, i64 N, int d, i64 start) {
    check_scale(N, d);
    std::vector<cplx> g = restrict_window(f, start, N);
    long double num = u_unnorm_pow_parallel(g, d + 1);
    long double den = box_unorm_pow(d + 1, N);
    if (den <= 0) return 0;
    return static_cast<double>(std::pow(num / den, 1.0L / static_cast<long double>(1 << (d + 1))));
}

double u_full_norm_bruteforce(const WindowedSeries& f, i64 N, int d, i64 start) {
    if (N < 1 || d < 0) throw std::invalid_argument("u_full_norm_bruteforce: bad arguments");
    double cost = std::pow(static_cast<double>(N), d + 2);
    if (cost > 1e8) throw unsupported_scale("u_full_norm_bruteforce: N^(d+2) <= 1e8 required");

    const int order = d + 1;
    const int corners = 1 << order;
    std::vector<cplx> g = restrict_window(f, start, N);

    // direct evaluation of the defining sum over x, h_1..h_{d+1}
    auto defining_sum = [&](const std::vector<cplx>& v) -> long double {
        const i64 L = static_cast<i64>(v.size());
        std::vector<i64> h(static_cast<std::size_t>(order), 0);
        long double total = 0;
        std::function<long double(i64, int)> loop = [&](i64 x, int j) -> long double {
            if (j == order) {
                cplx prod{1, 0};
                for (int mask = 0; mask < corners; ++mask) {
                    i64 pt = x;
                    int bits = 0;
                    for (int b = 0; b < order; ++b)
                        if (mask & (1 << b)) {
                            pt += h[static_cast<std::size_t>(b)];
                            ++bits;
                        }
                    if (pt < 0 || pt >= L) {
                        prod = cplx{0, 0};
                        break;
                    }
                    cplx val = v[static_cast<std::size_t>(pt)];
                    prod *= (bits & 1) ? std::conj(val) : val;
                }
                return static_cast<long double>(prod.real());
            }
            long double s = 0;
            for (i64 hv = -x; hv < L - x; ++hv) {  // keeps the corner x + h_j inside [0, L)
                h[static_cast<std::size_t>(j)] = hv;
                s += loop(x, j + 1);
            }
            return s;
        };
        for (i64 x = 0; x < L; ++x) total += loop(x, 0);
        return total;
    };

    long double num = defining_sum(g);
    std::vector<cplx> box(static_cast<std::size_t>(N), cplx{1, 0});
    long double den = defining_sum(box);
    if (den <= 0) return 0;
    if (num < 0) num = 0;  // round-off on values near zero
    return static_cast<double>(std::pow(num / den, 1.0L / static_cast<long double>(corners)));
}

cplx phase_correlation(const WindowedSeries& f, i64 N, const PolynomialPhase& phase, i64 start) {
    if (N < 1) throw std::invalid_argument("phase_correlation: N must be >= 1");
    PhaseStream stream(phase, start, -1);
    cplx acc{0, 0};
    for (i64 n = 0; n < N; ++n) acc += f.at(start + n) * unit_phase(stream.next());
    return acc / static_cast<double>(N);
}

namespace {

struct Candidate {
    double value = 0;
    std::vector<double> coeffs;  // a_0..a_d
};

double eval_abs_correlation(const std::vector<cplx>& g, i64 start, const std::vector<double>& coeffs) {
    PhaseStream stream(PolynomialPhase(coeffs), start, -1);
    cplx acc{0, 0};
    for (const cplx& v : g) acc += v * unit_phase(stream.next());
    return std::abs(acc) / static_cast<double>(g.size());
}

void keep_top(std::vector<Candidate>& keep, Candidate c, std::size_t k_max) {
    keep.push_back(std::move(c));
    std::sort(keep.begin(), keep.end(),
              [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
    if (keep.size() > k_max) keep.resize(k_max);
}

}  // namespace

LittleUResult little_u_lower(const WindowedSeries& f, i64 N, int d, int q_max, int grid,
                             int refine_steps, i64 start) {
    if (N < 1 || d < 0) throw std::invalid_argument("little_u_lower: bad arguments");
    if (q_max < 1 || grid < 1 || refine_steps < 0)
        throw std::invalid_argument("little_u_lower: need q_max, grid >= 1 and refine_steps >= 0");

    std::vector<cplx> g = restrict_window(f, start, N);
    const double dN = static_cast<double>(N);
    const std::size_t kKeep = 6;

    std::vector<double> zero(static_cast<std::size_t>(d) + 1, 0.0);
    std::vector<Candidate> pool{Candidate{eval_abs_correlation(g, start, zero), zero}};

    // Stage 1: all coefficient tuples (a_1..a_d)/q with common denominator
    // q <= q_max, evaluated through per-residue sums (the constant term never
    // changes |corr| and stays 0).  Tuples with gcd(a_1..a_d, q) > 1 repeat a
    // smaller denominator and are skipped.  Per-q winners merge in q order.
    if (q_max >= 2) {
        std::vector<std::vector<Candidate>> per_q(static_cast<std::size_t>(q_max) + 1);
        parallel_tasks(static_cast<std::size_t>(q_max) - 1, [&](std::size_t task) {
            const i64 q = static_cast<i64>(task) + 2;
            const std::size_t qs = static_cast<std::size_t>(q);
            std::vector<cplx> S(qs, cplx{0, 0});
            for (i64 n = 0; n < N; ++n) {
                i64 r = (start + n) % q;
                if (r < 0) r += q;
                S[static_cast<std::size_t>(r)] += g[static_cast<std::size_t>(n)];
            }
            std::vector<cplx> root(qs);
            for (i64 t = 0; t < q; ++t)
                root[static_cast<std::size_t>(t)] =
                    unit_phase(-static_cast<double>(t) / static_cast<double>(q));
            std::vector<std::vector<i64>> pw(static_cast<std::size_t>(d) + 1, std::vector<i64>(qs));
            for (i64 r = 0; r < q; ++r) {
                pw[0][static_cast<std::size_t>(r)] = 1 % q;
                for (int j = 1; j <= d; ++j)
                    pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] =
                        (pw[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(r)] * r) % q;
            }
            std::vector<i64> a(static_cast<std::size_t>(d) + 1, 0);
            std::vector<Candidate>& keep = per_q[qs];
            std::function<void(int)> rec = [&](int j) {
                if (j > d) {
                    i64 gc = q;
                    for (int i = 1; i <= d; ++i) gc = std::gcd(gc, a[static_cast<std::size_t>(i)]);
                    if (gc != 1) return;
                    cplx acc{0, 0};
                    for (i64 r = 0; r < q; ++r) {
                        i64 t = 0;
                        for (int i = 1; i <= d; ++i)
                            t = (t + a[static_cast<std::size_t>(i)] *
                                         pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]) %
                                q;
                        acc += S[static_cast<std::size_t>(r)] * root[static_cast<std::size_t>(t)];
                    }
                    Candidate c;
                    c.value = std::abs(acc) / dN;
                    c.coeffs.assign(static_cast<std::size_t>(d) + 1, 0.0);
                    for (int i = 1; i <= d; ++i)
                        c.coeffs[static_cast<std::size_t>(i)] =
                            static_cast<double>(a[static_cast<std::size_t>(i)]) / static_cast<double>(q);
                    keep_top(keep, std::move(c), kKeep);
                    return;
                }
                for (a[static_cast<std::size_t>(j)] = 0; a[static_cast<std::size_t>(j)] < q;
                     ++a[static_cast<std::size_t>(j)])
                    rec(j + 1);
            };
            rec(1);
        });
        for (const auto& lst : per_q)
            for (const Candidate& c : lst) keep_top(pool, c, kKeep);
    }

    // Stage 2: coordinate grid around each surviving candidate; offsets for
    // coefficient j span [-q_max/N^j, q_max/N^j].
    for (Candidate& cand : pool) {
        for (int j = 1; j <= d; ++j) {
            double span = static_cast<double>(q_max) / std::pow(dN, j);
            double best_delta = 0;
            double best_val = cand.value;
            for (int t = 0; t < grid; ++t) {
                double delta = (grid == 1) ? 0.0
                                           : -span + 2.0 * span * static_cast<double>(t) /
                                                         static_cast<double>(grid - 1);
                if (delta == 0.0) continue;
                std::vector<double> c = cand.coeffs;
                c[static_cast<std::size_t>(j)] += delta;
                double v = eval_abs_correlation(g, start, c);
                if (v > best_val) {
                    best_val = v;
                    best_delta = delta;
                }
            }
            if (best_delta != 0.0) {
                cand.coeffs[static_cast<std::size_t>(j)] += best_delta;
                cand.value = best_val;
            }
        }
    }
    std::sort(pool.begin(), pool.end(),
              [](const Candidate& a, const Candidate& b) { return a.value > b.value; });

    // Stage 3: coordinate ascent with geometrically shrinking steps.
    Candidate best = pool.front();
    std::vector<double> step(static_cast<std::size_t>(d) + 1, 0.0);
    for (int j = 1; j <= d; ++j)
        step[static_cast<std::size_t>(j)] =
            2.0 * static_cast<double>(q_max) / std::pow(dN, j) / static_cast<double>(std::max(grid, 2));
    for (int round = 0; round < refine_steps; ++round) {
        for (int j = 1; j <= d; ++j) {
            for (int moves = 0; moves < 8; ++moves) {
                bool improved = false;
                for (int sgn : {+1, -1}) {
                    std::vector<double> c = best.coeffs;
                    c[static_cast<std::size_t>(j)] += sgn * step[static_cast<std::size_t>(j)];
                    double v = eval_abs_correlation(g, start, c);
                    if (v > best.value) {
                        best.value = v;
                        best.coeffs = std::move(c);
                        improved = true;
                        break;
                    }
                }
                if (!improved) break;
            }
        }
        for (int j = 1; j <= d; ++j) step[static_cast<std::size_t>(j)] *= 0.5;
    }

    LittleUResult out;
    out.phase = PolynomialPhase(best.coeffs);
    out.value = std::abs(phase_correlation(f, N, out.phase, start));
    return out;
}

}  // namespace mlab
