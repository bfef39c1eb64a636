#include "mlab/approximants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mlab {

std::vector<i64> primes_upto(double x) {
    std::vector<i64> ps;
    if (x < 2) return ps;
    i64 n = static_cast<i64>(std::floor(x));
    for (i64 c = 2; c <= n; ++c) {
        bool prime = true;
        for (i64 p : ps) {
            if (p * p > c) break;
            if (c % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) ps.push_back(c);
    }
    return ps;
}

CramerWeight::CramerWeight(double w) : w_(w) {
    if (!(w >= 1.0)) throw std::invalid_argument("CramerWeight: w must be >= 1");
    primes_ = primes_upto(w);
    double norm = 1.0;
    for (i64 p : primes_) norm *= static_cast<double>(p) / static_cast<double>(p - 1);
    normalization_ = norm;
}

std::vector<double> CramerWeight::values_upto(i64 N) const {
    std::vector<double> v(static_cast<std::size_t>(N) + 1, normalization_);
    v[0] = 0.0;
    for (i64 p : primes_)
        for (i64 m = p; m <= N; m += p) v[static_cast<std::size_t>(m)] = 0.0;
    return v;
}

double HeathBrownWeight::max_abs() const {
    double m = 0;
    for (double v : lambda) m = std::max(m, std::abs(v));
    return m;
}

HeathBrownWeight hb_weights(i64 Q) {
    if (Q < 1) throw std::invalid_argument("hb_weights: Q must be >= 1");
    HeathBrownWeight hw;
    hw.Q = Q;
    hw.lambda.assign(static_cast<std::size_t>(Q), 0.0);
    if (Q == 1) return hw;  // empty sum

    std::vector<int> mu = mobius_table(Q);
    std::vector<i64> phi = phi_table(Q);
    // mu^2(r)/phi(r) lookup
    std::vector<double> m2p(static_cast<std::size_t>(Q), 0.0);
    for (i64 r = 1; r < Q; ++r)
        if (mu[static_cast<std::size_t>(r)] != 0)
            m2p[static_cast<std::size_t>(r)] = 1.0 / static_cast<double>(phi[static_cast<std::size_t>(r)]);

    for (i64 d = 1; d < Q; ++d) {
        if (mu[static_cast<std::size_t>(d)] == 0) continue;
        double inner = 0;
        for (i64 r = 1; d * r < Q; ++r) {
            if (m2p[static_cast<std::size_t>(r)] == 0.0) continue;
            if (std::gcd(d, r) != 1) continue;
            inner += m2p[static_cast<std::size_t>(r)];
        }
        hw.lambda[static_cast<std::size_t>(d)] = mu[static_cast<std::size_t>(d)] *
                                                 static_cast<double>(d) /
                                                 static_cast<double>(phi[static_cast<std::size_t>(d)]) *
                                                 inner;
    }
    return hw;
}

double hb_eval_direct(i64 Q, i64 n, const SieveTable& t) {
    if (Q < 1) throw std::invalid_argument("hb_eval_direct: Q must be >= 1");
    if (Q - 1 > t.limit) throw std::out_of_range("hb_eval_direct: sieve limit below Q");
    double s = 0;
    for (i64 q = 1; q < Q; ++q) {
        int mu = mobius(q, t);
        if (mu == 0) continue;
        s += static_cast<double>(mu) / static_cast<double>(euler_phi(q, t)) *
             static_cast<double>(ramanujan_sum(q, n, t));
    }
    return s;
}

double hb_eval_type1(const HeathBrownWeight& hw, i64 n, const SieveTable& t) {
    double s = 0;
    for (i64 d : divisors(n, t))
        if (d < hw.Q) s += hw.lambda[static_cast<std::size_t>(d)];
    return s;
}

std::vector<double> hb_values_upto(const HeathBrownWeight& hw, i64 N) {
    std::vector<double> v(static_cast<std::size_t>(N) + 1, 0.0);
    for (i64 d = 1; d < hw.Q && d <= N; ++d) {
        double l = hw.lambda[static_cast<std::size_t>(d)];
        if (l == 0.0) continue;
        for (i64 m = d; m <= N; m += d) v[static_cast<std::size_t>(m)] += l;
    }
    return v;
}

MangoldtApproximant::MangoldtApproximant(double N, int C0)
    : N_(N),
      C0_(C0),
      inner_(N >= 2 && C0 >= 1
                 ? std::exp(std::pow(jbracket(log_scale(N)), 1.0 / static_cast<double>(C0)))
                 : 1.0) {
    if (!(N >= 2)) throw std::invalid_argument("MangoldtApproximant: N must be >= 2");
    if (C0 < 1) throw std::invalid_argument("MangoldtApproximant: C0 must be >= 1");
}

double cramer_via_ramanujan_check(double w, i64 n) {
    if (!(w >= 1)) throw std::invalid_argument("cramer_via_ramanujan_check: w must be >= 1");
    if (w > 31) throw unsupported_scale("cramer_via_ramanujan_check: w <= 31 required");
    std::vector<i64> ps = primes_upto(w);
    const std::size_t k = ps.size();
    double total = 0;
    for (std::size_t mask = 0; mask < (1u << k); ++mask) {
        // d = prod of selected primes; mu(d)/phi(d) c_d(n) multiplicative in d
        double term = 1.0;  // d = 1 contributes 1
        int bits = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (!(mask & (1u << i))) continue;
            ++bits;
            i64 p = ps[i];
            // c_p(n) = (p-1) if p | n else -1
            double cp = (n % p == 0) ? static_cast<double>(p - 1) : -1.0;
            term *= cp / static_cast<double>(p - 1);
        }
        total += ((bits & 1) ? -1.0 : 1.0) * term;
    }
    return total;
}

double local_factor_beta(i64 p, const std::vector<AffineForm>& forms, const std::vector<double>& z_list) {
    if (forms.empty() || forms.size() != z_list.size())
        throw std::invalid_argument("local_factor_beta: forms and z_list must match and be nonempty");
    const std::size_t m = forms[0].linear.size();
    for (const AffineForm& f : forms)
        if (f.linear.size() != m) throw std::invalid_argument("local_factor_beta: mixed dimensions");
    if (m < 1 || m > 4) throw unsupported_scale("local_factor_beta: 1 <= m <= 4 required");
    double cells = std::pow(static_cast<double>(p), static_cast<double>(m));
    if (cells > 1e7) throw unsupported_scale("local_factor_beta: p^m <= 1e7 required");

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < forms.size(); ++i)
        if (static_cast<double>(p) <= z_list[i]) active.push_back(i);
    if (active.empty()) return 1.0;

    // reduce coefficients mod p once
    std::vector<std::vector<i64>> lin(active.size(), std::vector<i64>(m));
    std::vector<i64> cst(active.size());
    for (std::size_t a = 0; a < active.size(); ++a) {
        const AffineForm& f = forms[active[a]];
        for (std::size_t j = 0; j < m; ++j) {
            i64 c = f.linear[j] % p;
            lin[a][j] = c < 0 ? c + p : c;
        }
        i64 c = f.constant % p;
        cst[a] = c < 0 ? c + p : c;
    }

    i64 survivors = 0;
    std::vector<i64> x(m, 0);
    for (;;) {
        bool ok = true;
        for (std::size_t a = 0; a < active.size() && ok; ++a) {
            i64 v = cst[a];
            for (std::size_t j = 0; j < m; ++j) v += lin[a][j] * x[j];
            if (v % p == 0) ok = false;
        }
        if (ok) ++survivors;
        std::size_t j = 0;
        while (j < m && ++x[j] == p) x[j++] = 0;
        if (j == m) break;
    }

    double ratio = static_cast<double>(p) / static_cast<double>(p - 1);
    return std::pow(ratio, static_cast<double>(active.size())) * static_cast<double>(survivors) / cells;
}

namespace {

bool pairwise_independent(const std::vector<AffineForm>& forms) {
    // no form may be a rational multiple of another (constants included),
    // and linear parts must be nonzero
    auto affine = [](const AffineForm& f) {
        std::vector<i64> v = f.linear;
        v.push_back(f.constant);
        return v;
    };
    for (const AffineForm& f : forms)
        if (std::all_of(f.linear.begin(), f.linear.end(), [](i64 c) { return c == 0; })) return false;
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = i + 1; j < forms.size(); ++j) {
            std::vector<i64> u = affine(forms[i]);
            std::vector<i64> v = affine(forms[j]);
            bool proportional = true;
            for (std::size_t a = 0; a < u.size() && proportional; ++a)
                for (std::size_t b = a + 1; b < u.size() && proportional; ++b)
                    if (u[a] * v[b] != u[b] * v[a]) proportional = false;
            if (proportional) return false;
        }
    return true;
}

}  // namespace

LinearCountResult cramer_linear_count(const std::vector<AffineForm>& forms, const IntegerBox& box,
                                      const std::vector<double>& z_list) {
    if (forms.empty() || forms.size() != z_list.size())
        throw std::invalid_argument("cramer_linear_count: forms and z_list must match and be nonempty");
    const std::size_t m = forms[0].linear.size();
    if (box.ranges.size() != m) throw std::invalid_argument("cramer_linear_count: box dimension mismatch");
    if (!pairwise_independent(forms))
        throw std::invalid_argument("cramer_linear_count: forms must be pairwise linearly independent");
    i64 count = box.lattice_count();
    if (count <= 0) throw std::invalid_argument("cramer_linear_count: empty box");
    if (count > 100000000) throw unsupported_scale("cramer_linear_count: box must have <= 1e8 points");

    std::vector<CramerWeight> weights;
    weights.reserve(forms.size());
    for (double z : z_list) weights.emplace_back(std::max(1.0, z));

    // split the first axis into fixed-width tasks; partial sums combine in order
    const i64 lo0 = box.ranges[0].first, hi0 = box.ranges[0].second;
    const i64 width0 = hi0 - lo0 + 1;
    const i64 chunk = std::max<i64>(1, width0 / 64);
    const std::size_t n_tasks = static_cast<std::size_t>((width0 + chunk - 1) / chunk);
    std::vector<long double> partial(n_tasks, 0.0L);

    parallel_tasks(n_tasks, [&](std::size_t task) {
        i64 a0 = lo0 + static_cast<i64>(task) * chunk;
        i64 b0 = std::min(hi0, a0 + chunk - 1);
        std::vector<i64> x(m);
        long double sum = 0;
        // odometer over remaining axes for each x0
        for (i64 x0 = a0; x0 <= b0; ++x0) {
            x[0] = x0;
            for (std::size_t j = 1; j < m; ++j) x[j] = box.ranges[j].first;
            for (;;) {
                double prod = 1.0;
                for (std::size_t i = 0; i < forms.size() && prod != 0.0; ++i) {
                    i64 v = forms[i].constant;
                    for (std::size_t j = 0; j < m; ++j) v += forms[i].linear[j] * x[j];
                    prod *= weights[i](v);
                }
                sum += prod;
                std::size_t j = 1;
                while (j < m && ++x[j] > box.ranges[j].second) {
                    x[j] = box.ranges[j].first;
                    ++j;
                }
                if (j >= m) break;
            }
        }
        partial[task] = sum;
    });
    long double lhs = 0;
    for (long double s : partial) lhs += s;

    double zmax = *std::max_element(z_list.begin(), z_list.end());
    double product = 1.0;
    for (i64 p : primes_upto(zmax)) product *= local_factor_beta(p, forms, z_list);

    LinearCountResult r;
    r.lhs = static_cast<double>(lhs);
    r.prediction = static_cast<double>(count) * product;
    return r;
}

namespace {

void beta_sieve_enumerate(const std::vector<i64>& primes_desc, int parity, double y,
                          std::vector<std::pair<i64, int>>& out) {
    // chains p_idx strictly increasing in primes_desc order (decreasing primes)
    std::vector<std::size_t> chain;
    std::function<void(std::size_t, double, int)> rec = [&](std::size_t from, double prod, int len) {
        for (std::size_t i = from; i < primes_desc.size(); ++i) {
            double p = static_cast<double>(primes_desc[i]);
            int m = len + 1;
            if (m % 2 == parity && prod * p * p * p > y) continue;  // condition at step m fails
            double nprod = prod * p;
            // d <= y is implied by the parity conditions, but guard anyway
            if (nprod > y) continue;
            chain.push_back(i);
            i64 d = 1;
            for (std::size_t idx : chain) d *= primes_desc[idx];
            out.emplace_back(d, (m % 2) ? -1 : +1);  // mu(d) = (-1)^m
            rec(i + 1, nprod, m);
            chain.pop_back();
        }
    };
    rec(0, 1.0, 0);
}

}  // namespace

std::pair<SieveWeights, SieveWeights> beta_sieve_weights(double w, double y) {
    if (!(w >= 2)) throw std::invalid_argument("beta_sieve_weights: w must be >= 2");
    if (w > y) throw std::invalid_argument("beta_sieve_weights: requires w <= y");

    std::vector<i64> ps = primes_upto(w);
    std::sort(ps.rbegin(), ps.rend());

    SieveWeights plus, minus;
    plus.sign = +1;
    minus.sign = -1;
    plus.w = minus.w = w;
    plus.y = minus.y = y;
    plus.weights.emplace_back(1, 1);
    minus.weights.emplace_back(1, 1);
    beta_sieve_enumerate(ps, 1, y, plus.weights);   // odd-step condition
    beta_sieve_enumerate(ps, 0, y, minus.weights);  // even-step condition
    auto by_d = [](const std::pair<i64, int>& a, const std::pair<i64, int>& b) { return a.first < b.first; };
    std::sort(plus.weights.begin(), plus.weights.end(), by_d);
    std::sort(minus.weights.begin(), minus.weights.end(), by_d);
    return {plus, minus};
}

}  // namespace mlab
