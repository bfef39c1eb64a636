#include "mlab/padic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mlab/rng.hpp"

namespace mlab {

namespace {

bool is_small_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

i64 checked_size(i64 p, int j) {
    if (!is_small_prime(p)) throw std::invalid_argument("FiniteLevelFn: p must be prime");
    if (j < 1) throw std::invalid_argument("FiniteLevelFn: level must be >= 1");
    double size = std::pow(static_cast<double>(p), j);
    if (size > 1e7) throw unsupported_scale("FiniteLevelFn: p^j <= 1e7 required");
    i64 m = 1;
    for (int k = 0; k < j; ++k) m *= p;
    return m;
}

}  // namespace

FiniteLevelFn::FiniteLevelFn(i64 prime, int level) : p(prime), j(level) {
    values.assign(static_cast<std::size_t>(checked_size(prime, level)), cplx{0, 0});
}

FiniteLevelFn::FiniteLevelFn(i64 prime, int level, std::vector<cplx> vals) : p(prime), j(level) {
    i64 m = checked_size(prime, level);
    if (static_cast<i64>(vals.size()) != m)
        throw std::invalid_argument("FiniteLevelFn: values must have length p^j");
    values = std::move(vals);
}

FiniteLevelFn FiniteLevelFn::constant(i64 p, int j, cplx c) {
    FiniteLevelFn f(p, j);
    std::fill(f.values.begin(), f.values.end(), c);
    return f;
}

FiniteLevelFn FiniteLevelFn::lift() const {
    FiniteLevelFn out(p, j + 1);
    const i64 m = modulus();
    for (i64 x = 0; x < out.modulus(); ++x)
        out.values[static_cast<std::size_t>(x)] = values[static_cast<std::size_t>(x % m)];
    return out;
}

double lq_norm(const FiniteLevelFn& f, double q) {
    if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
    long double s = 0;
    for (const cplx& v : f.values) s += std::pow(static_cast<long double>(std::abs(v)), q);
    s /= static_cast<long double>(f.values.size());
    return static_cast<double>(std::pow(s, 1.0L / q));
}

FiniteLevelFn avg_finite(const FiniteLevelFn& f, const FiniteLevelFn& g, const IntPolynomial& P,
                         bool units_only) {
    if (f.p != g.p || f.j != g.j) throw std::invalid_argument("avg_finite: mismatched (p, j)");
    const i64 m = f.modulus();
    if (m > 100000) throw unsupported_scale("avg_finite: p^j <= 1e5 required");

    std::vector<i64> pn(static_cast<std::size_t>(m));
    std::vector<char> use(static_cast<std::size_t>(m), 1);
    i64 count = 0;
    for (i64 n = 0; n < m; ++n) {
        if (units_only && n % f.p == 0) {
            use[static_cast<std::size_t>(n)] = 0;
            continue;
        }
        pn[static_cast<std::size_t>(n)] = P.eval_mod(n, m);
        ++count;
    }

    FiniteLevelFn out(f.p, f.j);
    for (i64 x = 0; x < m; ++x) {
        cplx s{0, 0};
        for (i64 n = 0; n < m; ++n) {
            if (!use[static_cast<std::size_t>(n)]) continue;
            i64 xf = x + n;
            if (xf >= m) xf -= m;
            i64 xg = x + pn[static_cast<std::size_t>(n)];
            if (xg >= m) xg -= m;
            s += f.values[static_cast<std::size_t>(xf)] * g.values[static_cast<std::size_t>(xg)];
        }
        out.values[static_cast<std::size_t>(x)] = s / static_cast<double>(count);
    }
    return out;
}

MeanEnergySplit decompose_mean(const FiniteLevelFn& f) {
    MeanEnergySplit split;
    split.a = f.mean();
    split.f0 = f;
    long double e = 0;
    for (cplx& v : split.f0.values) {
        v -= split.a;
        e += std::norm(v);
    }
    split.energy = static_cast<double>(e / static_cast<long double>(f.values.size()));
    return split;
}

FiniteLevelFn h_function(const FiniteLevelFn& f0) {
    if (std::abs(f0.mean()) > 1e-10) throw std::invalid_argument("h_function: input must have mean zero");
    const i64 m = f0.modulus();
    FiniteLevelFn h(f0.p, f0.j);
    for (i64 x = 0; x < m; ++x) {
        cplx s{0, 0};
        for (i64 n = 0; n < m; n += f0.p) {
            i64 y = x + n;
            if (y >= m) y -= m;
            s += f0.values[static_cast<std::size_t>(y)];
        }
        h.values[static_cast<std::size_t>(x)] = s / static_cast<double>(m);
    }
    return h;
}

namespace {

void l2_normalize(FiniteLevelFn& f) {
    double n2 = lq_norm(f, 2.0);
    if (n2 < 1e-12) {
        std::fill(f.values.begin(), f.values.end(), cplx{1, 0});
        return;
    }
    for (cplx& v : f.values) v /= n2;
}

// v = |u|^{q-2} u with the convention v = 0 where u = 0
FiniteLevelFn dual_density(const FiniteLevelFn& u, double q) {
    FiniteLevelFn v = u;
    for (cplx& z : v.values) {
        double m = std::abs(z);
        z = (m == 0.0) ? cplx{0, 0} : z * std::pow(m, q - 2.0);
    }
    return v;
}

struct AscentTables {
    std::vector<i64> units;  // unit residues n
    std::vector<i64> pn;     // P(n) mod m for those n
};

AscentTables make_tables(i64 m, i64 p, const IntPolynomial& P) {
    AscentTables t;
    for (i64 n = 0; n < m; ++n) {
        if (n % p == 0) continue;
        t.units.push_back(n);
        t.pn.push_back(P.eval_mod(n, m));
    }
    return t;
}

// gradient of E|Avg(f,g)|^q in the f slot (up to positive scale)
FiniteLevelFn grad_f(const AscentTables& t, const FiniteLevelFn& g, const FiniteLevelFn& v) {
    const i64 m = g.modulus();
    FiniteLevelFn out(g.p, g.j);
    for (i64 y = 0; y < m; ++y) {
        cplx s{0, 0};
        for (std::size_t k = 0; k < t.units.size(); ++k) {
            i64 x = y - t.units[k];
            x %= m;
            if (x < 0) x += m;
            i64 xg = x + t.pn[k];
            if (xg >= m) xg -= m;
            s += v.values[static_cast<std::size_t>(x)] *
                 std::conj(g.values[static_cast<std::size_t>(xg)]);
        }
        out.values[static_cast<std::size_t>(y)] = s / static_cast<double>(t.units.size());
    }
    return out;
}

FiniteLevelFn grad_g(const AscentTables& t, const FiniteLevelFn& f, const FiniteLevelFn& v) {
    const i64 m = f.modulus();
    FiniteLevelFn out(f.p, f.j);
    for (i64 z = 0; z < m; ++z) {
        cplx s{0, 0};
        for (std::size_t k = 0; k < t.units.size(); ++k) {
            i64 x = z - t.pn[k];
            x %= m;
            if (x < 0) x += m;
            i64 xf = x + t.units[k];
            if (xf >= m) xf -= m;
            s += v.values[static_cast<std::size_t>(x)] *
                 std::conj(f.values[static_cast<std::size_t>(xf)]);
        }
        out.values[static_cast<std::size_t>(z)] = s / static_cast<double>(t.units.size());
    }
    return out;
}

}  // namespace

NormSearchResult bilinear_norm_search(i64 p, int j, double q, const IntPolynomial& P, int restarts,
                                      u64 seed) {
    if (q < 1.0) throw std::invalid_argument("bilinear_norm_search: q must be >= 1");
    if (restarts < 0) throw std::invalid_argument("bilinear_norm_search: restarts must be >= 0");
    FiniteLevelFn probe(p, j);
    const i64 m = probe.modulus();
    if (m > 100000) throw unsupported_scale("bilinear_norm_search: p^j <= 1e5 required");
    AscentTables tables = make_tables(m, p, P);

    auto objective = [&](const FiniteLevelFn& f, const FiniteLevelFn& g) {
        return lq_norm(avg_finite(f, g, P, true), q);
    };

    const int total = restarts + 1;
    std::vector<NormSearchResult> results(static_cast<std::size_t>(total));
    CounterRng base = CounterRng::keyed(seed, "padic_norm_search");

    parallel_tasks(static_cast<std::size_t>(total), [&](std::size_t restart) {
        FiniteLevelFn f(p, j), g(p, j);
        if (restart == 0) {
            f = FiniteLevelFn::constant(p, j, cplx{1, 0});
            g = FiniteLevelFn::constant(p, j, cplx{1, 0});
        } else {
            CounterRng rng = base.split(static_cast<u64>(restart));
            bool complex_init = (restart % 2 == 0);
            for (i64 x = 0; x < m; ++x) {
                if (complex_init)
                    f.values[static_cast<std::size_t>(x)] = cplx{rng.u01() - 0.5, rng.u01() - 0.5};
                else
                    f.values[static_cast<std::size_t>(x)] = cplx{rng.u01(), 0.0};
            }
            for (i64 x = 0; x < m; ++x) {
                if (complex_init)
                    g.values[static_cast<std::size_t>(x)] = cplx{rng.u01() - 0.5, rng.u01() - 0.5};
                else
                    g.values[static_cast<std::size_t>(x)] = cplx{rng.u01(), 0.0};
            }
        }
        l2_normalize(f);
        l2_normalize(g);

        double obj = objective(f, g);
        int stagnant = 0;
        for (int iter = 0; iter < 400 && stagnant < 5; ++iter) {
            double before = obj;
            for (int slot = 0; slot < 2; ++slot) {
                FiniteLevelFn u = avg_finite(f, g, P, true);
                FiniteLevelFn v = dual_density(u, q);
                FiniteLevelFn dir = (slot == 0) ? grad_f(tables, g, v) : grad_g(tables, f, v);
                double dn = lq_norm(dir, 2.0);
                if (dn < 1e-14) continue;
                for (cplx& z : dir.values) z /= dn;
                double step = 1.0;
                for (int back = 0; back < 30; ++back) {
                    FiniteLevelFn trial = (slot == 0) ? f : g;
                    for (i64 x = 0; x < m; ++x)
                        trial.values[static_cast<std::size_t>(x)] +=
                            step * dir.values[static_cast<std::size_t>(x)];
                    l2_normalize(trial);
                    double tobj = (slot == 0) ? objective(trial, g) : objective(f, trial);
                    if (tobj > obj) {
                        if (slot == 0)
                            f = std::move(trial);
                        else
                            g = std::move(trial);
                        obj = tobj;
                        break;
                    }
                    step *= 0.5;
                }
            }
            if (obj - before < 1e-10 * std::max(1.0, obj))
                ++stagnant;
            else
                stagnant = 0;
        }
        results[restart] = NormSearchResult{obj, f, g};
    });

    NormSearchResult best = results[0];
    for (const NormSearchResult& r : results)
        if (r.bound > best.bound) best = r;
    return best;
}

}  // namespace mlab
