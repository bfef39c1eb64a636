#include "mlab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "mlab/approximants.hpp"
#include "mlab/arith.hpp"
#include "mlab/averaging.hpp"
#include "mlab/gowers.hpp"
#include "mlab/padic.hpp"
#include "mlab/poly.hpp"
#include "mlab/rng.hpp"
#include "mlab/series.hpp"
#include "mlab/symbols.hpp"

namespace mlab {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::size_t ResultTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::invalid_argument("ResultTable: no column named " + name);
}

namespace {

std::string canon_value(const ParamValue& v) {
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
    if (std::holds_alternative<double>(v)) return format_double(std::get<double>(v));
    return std::get<std::string>(v);
}

}  // namespace

std::string config_hash(const ExperimentConfig& config) {
    std::string blob = config.experiment;
    blob.push_back('\n');
    for (const auto& [k, v] : config.parameters) {
        blob += k;
        blob.push_back('=');
        blob += canon_value(v);
        blob.push_back('\n');
    }
    blob += "seed=" + std::to_string(config.seed);
    u64 h = 0xCBF29CE484222325ULL;
    for (unsigned char c : blob) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// parameter resolution
// ---------------------------------------------------------------------------

namespace {

struct Params {
    std::map<std::string, ParamValue> values;

    double num(const std::string& key) const {
        const ParamValue& v = values.at(key);
        if (!std::holds_alternative<double>(v))
            throw config_error("parameter '" + key + "' must be a number");
        return std::get<double>(v);
    }
    i64 integer(const std::string& key) const {
        double d = num(key);
        i64 n = static_cast<i64>(std::llround(d));
        if (static_cast<double>(n) != d)
            throw config_error("parameter '" + key + "' must be an integer");
        return n;
    }
    bool flag(const std::string& key) const {
        const ParamValue& v = values.at(key);
        if (!std::holds_alternative<bool>(v))
            throw config_error("parameter '" + key + "' must be a boolean");
        return std::get<bool>(v);
    }
    std::string str(const std::string& key) const {
        const ParamValue& v = values.at(key);
        if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
        return canon_value(v);  // single numbers are fine where lists are expected
    }
    std::vector<double> num_list(const std::string& key) const {
        std::vector<double> out;
        std::string s = str(key);
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            double v = 0;
            auto res = std::from_chars(item.data(), item.data() + item.size(), v);
            if (res.ec != std::errc() || res.ptr != item.data() + item.size())
                throw config_error("parameter '" + key + "': bad list entry '" + item + "'");
            out.push_back(v);
        }
        if (out.empty()) throw config_error("parameter '" + key + "' must be a nonempty list");
        return out;
    }
    std::vector<i64> int_list(const std::string& key) const {
        std::vector<i64> out;
        for (double v : num_list(key)) {
            i64 n = static_cast<i64>(std::llround(v));
            if (static_cast<double>(n) != v)
                throw config_error("parameter '" + key + "' must list integers");
            out.push_back(n);
        }
        return out;
    }
    IntPolynomial poly(const std::string& key) const {
        std::vector<i64> c = int_list(key);
        try {
            return IntPolynomial(c);
        } catch (const std::invalid_argument& e) {
            throw config_error("parameter '" + key + "': " + e.what());
        }
    }
};

Params resolve_params(const ExperimentInfo& info, const ExperimentConfig& config) {
    Params p;
    for (const ParamSpec& spec : info.params) p.values[spec.key] = spec.default_value;
    for (const auto& [k, v] : config.parameters) {
        auto it = p.values.find(k);
        if (it == p.values.end())
            throw config_error("experiment '" + info.name + "' has no parameter '" + k + "'");
        it->second = v;
    }
    return p;
}

ResultTable make_table(const ExperimentConfig& config, std::vector<std::string> columns) {
    ResultTable t;
    t.experiment = config.experiment;
    t.config_hash = config_hash(config);
    t.seed = config.seed;
    t.columns = std::move(columns);
    return t;
}

// ---------------------------------------------------------------------------
// shared series builders
// ---------------------------------------------------------------------------

WindowedSeries cramer_series(double w, i64 N) {
    CramerWeight cw(w);
    std::vector<double> v = cw.values_upto(N);
    std::vector<cplx> vals(static_cast<std::size_t>(N));
    for (i64 n = 1; n <= N; ++n) vals[static_cast<std::size_t>(n - 1)] = cplx{v[static_cast<std::size_t>(n)], 0};
    return WindowedSeries(1, std::move(vals));
}

WindowedSeries hb_series(i64 Q, i64 N) {
    HeathBrownWeight hw = hb_weights(Q);
    std::vector<double> v = hb_values_upto(hw, N);
    std::vector<cplx> vals(static_cast<std::size_t>(N));
    for (i64 n = 1; n <= N; ++n) vals[static_cast<std::size_t>(n - 1)] = cplx{v[static_cast<std::size_t>(n)], 0};
    return WindowedSeries(1, std::move(vals));
}

std::vector<double> mangoldt_values(i64 N, const SieveTable& t) {
    std::vector<double> v(static_cast<std::size_t>(N) + 1, 0.0);
    for (i64 p : t.primes) {
        if (p > N) break;
        double lp = std::log(static_cast<double>(p));
        for (i64 pk = p; pk <= N; pk *= p) {
            v[static_cast<std::size_t>(pk)] = lp;
            if (pk > N / p) break;
        }
    }
    return v;
}

WindowedSeries series_diff(const WindowedSeries& a, const WindowedSeries& b) {
    // both start at 1, same length
    WindowedSeries out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

void append_phase_columns(std::vector<Cell>& row, const PolynomialPhase& phase, int d) {
    for (int j = 1; j <= d; ++j)
        row.emplace_back(j < static_cast<int>(phase.coeffs.size()) ? phase.coeffs[static_cast<std::size_t>(j)]
                                                                   : 0.0);
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

ResultTable run_gowers_stability(const ExperimentConfig& config, const Params& p) {
    i64 N = p.integer("N");
    int d = static_cast<int>(p.integer("d"));
    std::vector<i64> ws = p.int_list("w_values");
    std::vector<i64> zs = p.int_list("z_values");
    ResultTable t = make_table(config, {"w", "z", "norm"});
    for (i64 w : ws) {
        WindowedSeries fw = cramer_series(static_cast<double>(w), N);
        for (i64 z : zs) {
            WindowedSeries fz = cramer_series(static_cast<double>(z), N);
            double norm = u_full_norm(series_diff(fw, fz), N, d);
            t.rows.push_back({static_cast<double>(w), static_cast<double>(z), norm});
        }
    }
    return t;
}

ResultTable run_cramer_hb_comparison(const ExperimentConfig& config, const Params& p) {
    i64 N = p.integer("N");
    int d = static_cast<int>(p.integer("d"));
    int q_max = static_cast<int>(p.integer("q_max"));
    int grid = static_cast<int>(p.integer("grid"));
    int refine = static_cast<int>(p.integer("refine_steps"));
    std::vector<i64> ws = p.int_list("w_values");
    std::vector<std::string> cols{"w", "little_u"};
    for (int j = 1; j <= d; ++j) cols.push_back("alpha_" + std::to_string(j));
    ResultTable t = make_table(config, cols);
    for (i64 w : ws) {
        WindowedSeries diff = series_diff(cramer_series(static_cast<double>(w), N), hb_series(w, N));
        LittleUResult r = little_u_lower(diff, N, d, q_max, grid, refine);
        std::vector<Cell> row{static_cast<double>(w), r.value};
        append_phase_columns(row, r.phase, d);
        t.rows.push_back(std::move(row));
    }
    return t;
}

ResultTable run_approximant_uniformity(const ExperimentConfig& config, const Params& p) {
    int C0 = static_cast<int>(p.integer("C0"));
    int d = static_cast<int>(p.integer("d"));
    int q_max = static_cast<int>(p.integer("q_max"));
    int grid = static_cast<int>(p.integer("grid"));
    int refine = static_cast<int>(p.integer("refine_steps"));
    std::vector<i64> Ns = p.int_list("N_values");
    i64 maxN = *std::max_element(Ns.begin(), Ns.end());
    SieveTable sieve = build_sieve(std::max<i64>(maxN, 2));
    std::vector<double> lam = mangoldt_values(maxN, sieve);

    std::vector<std::string> cols{"N", "little_u"};
    for (int j = 1; j <= d; ++j) cols.push_back("alpha_" + std::to_string(j));
    ResultTable t = make_table(config, cols);
    for (i64 N : Ns) {
        MangoldtApproximant lamN(static_cast<double>(N), C0);
        std::vector<cplx> vals(static_cast<std::size_t>(N));
        for (i64 n = 1; n <= N; ++n)
            vals[static_cast<std::size_t>(n - 1)] = cplx{lam[static_cast<std::size_t>(n)] - lamN(n), 0};
        WindowedSeries diff(1, std::move(vals));
        LittleUResult r = little_u_lower(diff, N, d, q_max, grid, refine);
        std::vector<Cell> row{static_cast<double>(N), r.value};
        append_phase_columns(row, r.phase, d);
        t.rows.push_back(std::move(row));
    }
    return t;
}

ResultTable run_major_arc_m0(const ExperimentConfig& config, const Params& p) {
    int C0 = static_cast<int>(p.integer("C0"));
    std::vector<i64> Ns = p.int_list("N_values");
    IntPolynomial P = p.poly("poly");
    ReducedRational a1(p.integer("a1"), p.integer("q1"));
    ReducedRational a2(p.integer("a2"), p.integer("q2"));
    double xi1_scale = p.num("xi1_scale");
    double xi2_scale = p.num("xi2_scale");

    ResultTable t = make_table(config, {"N", "abs_m0", "re_m0", "im_m0"});
    for (i64 N : Ns) {
        double xi1 = xi1_scale / static_cast<double>(N);
        double xi2 = xi2_scale / std::pow(static_cast<double>(N), P.degree());
        SymbolError e = m0_error(N, C0, a1, a2, xi1, xi2, P);
        t.rows.push_back(
            {static_cast<double>(N), std::abs(e.value), e.value.real(), e.value.imag()});
    }
    return t;
}

ResultTable run_progression_means(const ExperimentConfig& config, const Params& p) {
    i64 N = p.integer("N");
    int C0 = static_cast<int>(p.integer("C0"));
    bool upper = p.flag("upper_half");
    std::vector<i64> qs = p.int_list("q_values");
    i64 lo = upper ? N / 2 + 1 : 1;
    ResultTable t = make_table(config, {"q", "a", "error"});
    for (i64 q : qs)
        for (i64 a = 0; a < q; ++a)
            t.rows.push_back({static_cast<double>(q), static_cast<double>(a),
                              progression_mean_error(N, C0, q, a, lo, N)});
    return t;
}

ResultTable run_moment_growth(const ExperimentConfig& config, const Params& p) {
    i64 N = p.integer("N");
    std::vector<i64> Qs = p.int_list("Q_values");
    std::vector<i64> ks = p.int_list("k_values");
    ResultTable t = make_table(config, {"Q", "k", "moment", "envelope", "ratio"});
    for (i64 Q : Qs) {
        HeathBrownWeight hw = hb_weights(Q);
        std::vector<double> v = hb_values_upto(hw, N);
        for (i64 k : ks) {
            long double m = 0;
            for (i64 n = 1; n <= N; ++n)
                m += std::pow(std::abs(static_cast<long double>(v[static_cast<std::size_t>(n)])),
                              static_cast<long double>(k));
            m /= static_cast<long double>(N);
            double env = std::pow(jbracket(log_scale(static_cast<double>(Q))),
                                  static_cast<double>((1LL << k) + k));
            t.rows.push_back({static_cast<double>(Q), static_cast<double>(k),
                              static_cast<double>(m), env, static_cast<double>(m) / env});
        }
    }
    return t;
}

ResultTable run_padic_contraction(const ExperimentConfig& config, const Params& p) {
    std::vector<i64> ps = p.int_list("p_values");
    int j = static_cast<int>(p.integer("j"));
    double q = p.num("q");
    int restarts = static_cast<int>(p.integer("restarts"));
    IntPolynomial P = p.poly("poly");
    ResultTable t = make_table(config, {"p", "bound"});
    for (i64 prime : ps) {
        NormSearchResult r = bilinear_norm_search(prime, j, q, P, restarts, config.seed);
        t.rows.push_back({static_cast<double>(prime), r.bound});
    }
    return t;
}

ResultTable run_single_scale_decay(const ExperimentConfig& config, const Params& p) {
    int C0 = static_cast<int>(p.integer("C0"));
    IntPolynomial P = p.poly("poly");
    std::vector<i64> Ns = p.int_list("N_values");
    i64 maxN = *std::max_element(Ns.begin(), Ns.end());
    SieveTable sieve = build_sieve(std::max<i64>(maxN, 2));

    ResultTable t = make_table(config, {"N", "ratio"});
    for (i64 N : Ns) {
        double window = std::pow(static_cast<double>(N), P.degree());
        if (window > 5e7) throw unsupported_scale("single_scale_decay: N^d window too large");
        i64 len = static_cast<i64>(window);
        CounterRng rng = CounterRng::keyed(config.seed, "single_scale_decay").split(static_cast<u64>(N));
        WindowedSeries f(1, static_cast<std::size_t>(len)), g(1, static_cast<std::size_t>(len));
        for (i64 i = 0; i < len; ++i) {
            f.values[static_cast<std::size_t>(i)] = cplx{static_cast<double>(rng.sign()), 0};
            g.values[static_cast<std::size_t>(i)] = cplx{static_cast<double>(rng.sign()), 0};
        }
        MangoldtApproximant lamN(static_cast<double>(N), C0);
        std::vector<double> lam = mangoldt_values(N, sieve);
        WeightFn w = [&](i64 n) { return lam[static_cast<std::size_t>(n)] - lamN(n); };
        WindowedSeries avg = avg_upper(N, w, f, g, P);
        double ratio = avg.l1_norm() / (f.l2_norm() * g.l2_norm());
        t.rows.push_back({static_cast<double>(N), ratio});
    }
    return t;
}

ResultTable run_prime_weyl(const ExperimentConfig& config, const Params& p) {
    double alpha = p.num("alpha");
    IntPolynomial P = p.poly("poly");
    std::vector<i64> Ns = p.int_list("N_values");
    ResultTable t = make_table(config, {"N", "abs_value", "re", "im"});
    for (i64 N : Ns) {
        cplx v = weyl_sum_primes(N, alpha, P);
        t.rows.push_back({static_cast<double>(N), std::abs(v), v.real(), v.imag()});
    }
    return t;
}

ResultTable run_improving_sweep(const ExperimentConfig& config, const Params& p) {
    double pexp = p.num("p");
    int C0 = static_cast<int>(p.integer("C0"));
    IntPolynomial Q = p.poly("poly");
    std::vector<i64> Ns = p.int_list("N_values");
    ResultTable t = make_table(config, {"N", "ratio"});
    for (i64 N : Ns) {
        double window = std::pow(static_cast<double>(N), Q.degree());
        if (window > 5e7) throw unsupported_scale("improving_sweep: N^d window too large");
        WindowedSeries f = WindowedSeries::ones(1, static_cast<std::size_t>(window));
        t.rows.push_back({static_cast<double>(N), improving_ratio(N, Q, f, pexp, C0)});
    }
    return t;
}

ResultTable run_linear_equations(const ExperimentConfig& config, const Params& p) {
    std::string preset = p.str("preset");
    i64 N = p.integer("N");
    std::vector<double> zs = p.num_list("z_values");

    std::vector<AffineForm> forms;
    IntegerBox box;
    if (preset == "single") {
        forms = {AffineForm{{1}, 0}};
        box.ranges = {{1, N}};
    } else if (preset == "twin") {
        forms = {AffineForm{{1}, 0}, AffineForm{{1}, 2}};
        box.ranges = {{1, N}};
    } else if (preset == "u2") {
        // n, n+h1, n+h2, n+h1+h2 in variables (n, h1, h2)
        forms = {AffineForm{{1, 0, 0}, 0}, AffineForm{{1, 1, 0}, 0}, AffineForm{{1, 0, 1}, 0},
                 AffineForm{{1, 1, 1}, 0}};
        box.ranges = {{1, N}, {1, N}, {1, N}};
    } else {
        throw config_error("linear_equations: preset must be one of single, twin, u2");
    }
    std::vector<double> z_list;
    for (std::size_t i = 0; i < forms.size(); ++i) z_list.push_back(zs[i % zs.size()]);

    LinearCountResult r = cramer_linear_count(forms, box, z_list);
    ResultTable t = make_table(config, {"preset", "N", "lhs", "prediction", "ratio"});
    t.rows.push_back({preset, static_cast<double>(N), r.lhs, r.prediction, r.lhs / r.prediction});
    return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// catalog and dispatch
// ---------------------------------------------------------------------------

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> catalog = [] {
        std::vector<ExperimentInfo> c;
        c.push_back({"gowers_stability",
                     "U^{d+1}[N] norm of differences of Cramer weights over a (w, z) grid",
                     {{"N", 100000.0, "window length"},
                      {"d", 1.0, "norm order minus one (U^{d+1})"},
                      {"w_values", std::string("4,8,16,32"), "first sieve levels"},
                      {"z_values", std::string("2,4,8,16"), "second sieve levels"}},
                     {"w", {"norm"}, false, true}});
        c.push_back({"cramer_hb_comparison",
                     "little-u lower bound of Cramer minus Heath-Brown weights over w",
                     {{"N", 100000.0, "window length"},
                      {"d", 1.0, "phase degree"},
                      {"w_values", std::string("10,30,100"), "sieve level = Type I cutoff"},
                      {"q_max", 120.0, "rational denominator cap in the phase search"},
                      {"grid", 16.0, "perturbation grid points per coefficient"},
                      {"refine_steps", 20.0, "coordinate-ascent rounds"}},
                     {"w", {"little_u"}, false, true}});
        c.push_back({"approximant_uniformity",
                     "little-u lower bound of Lambda minus Lambda_N over N",
                     {{"N_values", std::string("1000,10000,100000"), "scales"},
                      {"C0", 2.0, "level exponent parameter"},
                      {"d", 1.0, "phase degree"},
                      {"q_max", 60.0, "rational denominator cap"},
                      {"grid", 16.0, "perturbation grid points"},
                      {"refine_steps", 20.0, "ascent rounds"}},
                     {"N", {"little_u"}, true, true}});
        c.push_back({"major_arc_m0",
                     "major-arc factorization error |M0| over N",
                     {{"N_values", std::string("1000,10000,100000,1000000"), "scales"},
                      {"C0", 2.0, "level exponent parameter"},
                      {"a1", 0.0, "first numerator"},
                      {"q1", 1.0, "first denominator"},
                      {"a2", 0.0, "second numerator"},
                      {"q2", 1.0, "second denominator"},
                      {"xi1_scale", 0.5, "xi1 = scale / N"},
                      {"xi2_scale", 0.0, "xi2 = scale / N^d"},
                      {"poly", std::string("0,0,1"), "polynomial coefficients c0,c1,..."}},
                     {"N", {"abs_m0"}, true, true}});
        c.push_back({"progression_means",
                     "approximant means in progressions against 1/phi(q)",
                     {{"N", 1000000.0, "scale"},
                      {"C0", 2.0, "level exponent parameter"},
                      {"q_values", std::string("1,2,3,4,5,7"), "moduli"},
                      {"upper_half", true, "average over (N/2, N] instead of [1, N]"}},
                     {"q", {"error"}, false, true}});
        c.push_back({"moment_growth",
                     "moments of the Heath-Brown weight against the bracket envelope",
                     {{"N", 1000000.0, "window length"},
                      {"Q_values", std::string("10,100,1000"), "Type I cutoffs"},
                      {"k_values", std::string("1,2,3"), "moment orders"}},
                     {"Q", {"ratio"}, true, false}});
        c.push_back({"padic_contraction",
                     "searched lower bound on the unit-average bilinear norm over p",
                     {{"p_values", std::string("3,5,7,11,13"), "primes"},
                      {"j", 2.0, "finite level"},
                      {"q", 2.2, "target exponent"},
                      {"restarts", 50.0, "search restarts"},
                      {"poly", std::string("0,0,1"), "polynomial coefficients"}},
                     {"p", {"bound"}, false, false}});
        c.push_back({"single_scale_decay",
                     "l1 decay of the averaged difference weight on random inputs",
                     {{"N_values", std::string("128,256,512,1024"), "scales"},
                      {"C0", 2.0, "level exponent parameter"},
                      {"poly", std::string("0,0,1"), "polynomial coefficients"}},
                     {"N", {"ratio"}, true, true}});
        c.push_back({"prime_weyl",
                     "Mangoldt-weighted polynomial exponential sums over N",
                     {{"N_values", std::string("10000,100000,1000000"), "scales"},
                      {"alpha", 1.4142135623730951, "frequency"},
                      {"poly", std::string("0,0,1"), "polynomial coefficients"}},
                     {"N", {"abs_value"}, true, true}});
        c.push_back({"improving_sweep",
                     "normalized improving-estimate ratios over N",
                     {{"N_values", std::string("100,300,1000"), "scales"},
                      {"p", 2.0, "input exponent in (1, 2]"},
                      {"C0", 2.0, "level exponent parameter"},
                      {"poly", std::string("0,0,1"), "shift polynomial"}},
                     {"N", {"ratio"}, true, false}});
        c.push_back({"linear_equations",
                     "weighted linear-equation counts against the local-factor product",
                     {{"preset", std::string("twin"), "single | twin | u2"},
                      {"N", 1000000.0, "box side"},
                      {"z_values", std::string("5"), "sieve levels per form (recycled)"}},
                     {"N", {"ratio"}, false, false}});
        return c;
    }();
    return catalog;
}

ResultTable run_experiment(const ExperimentConfig& config) {
    const ExperimentInfo* info = nullptr;
    for (const ExperimentInfo& e : experiment_catalog())
        if (e.name == config.experiment) info = &e;
    if (!info) throw config_error("unknown experiment '" + config.experiment + "'");
    Params p = resolve_params(*info, config);

    using Runner = ResultTable (*)(const ExperimentConfig&, const Params&);
    static const std::map<std::string, Runner> dispatch{
        {"gowers_stability", run_gowers_stability},
        {"cramer_hb_comparison", run_cramer_hb_comparison},
        {"approximant_uniformity", run_approximant_uniformity},
        {"major_arc_m0", run_major_arc_m0},
        {"progression_means", run_progression_means},
        {"moment_growth", run_moment_growth},
        {"padic_contraction", run_padic_contraction},
        {"single_scale_decay", run_single_scale_decay},
        {"prime_weyl", run_prime_weyl},
        {"improving_sweep", run_improving_sweep},
        {"linear_equations", run_linear_equations},
    };
    return dispatch.at(config.experiment)(config, p);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    const std::string& s = std::get<std::string>(c);
    if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos)
        throw std::invalid_argument("emit_csv: string cells may not contain ',' or newlines");
    return s;
}

}  // namespace

void emit_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("emit_csv: cannot open " + path);
    out << "# experiment: " << table.experiment << "\n";
    out << "# config: " << table.config_hash << "\n";
    out << "# seed: " << table.seed << "\n";
    out << "# version: " << table.version << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::invalid_argument("emit_csv: ragged row");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << cell_text(row[i]) << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
    if (!out.good()) throw std::invalid_argument("emit_csv: write failed for " + path);
}

ResultTable parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("parse_csv: cannot open " + path);
    ResultTable t;
    std::string line;
    bool have_header = false;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::string item;
        std::stringstream ss(s);
        while (std::getline(ss, item, ',')) parts.push_back(item);
        if (!s.empty() && s.back() == ',') parts.push_back("");
        return parts;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto grab = [&](const char* key) -> const char* {
                std::string prefix = std::string("# ") + key + ": ";
                if (line.rfind(prefix, 0) == 0) return line.c_str() + prefix.size();
                return nullptr;
            };
            if (const char* v = grab("experiment")) t.experiment = v;
            if (const char* v = grab("config")) t.config_hash = v;
            if (const char* v = grab("seed")) t.seed = std::strtoull(v, nullptr, 10);
            if (const char* v = grab("version")) t.version = v;
            continue;
        }
        std::vector<std::string> parts = split(line);
        if (!have_header) {
            t.columns = parts;
            have_header = true;
            continue;
        }
        std::vector<Cell> row;
        for (const std::string& s : parts) {
            double v = 0;
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec == std::errc() && res.ptr == s.data() + s.size())
                row.emplace_back(v);
            else
                row.emplace_back(s);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace {

std::string svg_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return std::string(buf);
}

std::string tick_label(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

}  // namespace

void emit_svg(const ResultTable& table, const std::string& x_col,
              const std::vector<std::string>& y_cols, const std::string& path, bool logx,
              bool logy) {
    const std::size_t xi = table.column_index(x_col);
    std::vector<std::size_t> yi;
    for (const std::string& name : y_cols) yi.push_back(table.column_index(name));

    auto cell_num = [](const Cell& c) -> double {
        if (!std::holds_alternative<double>(c))
            throw std::invalid_argument("emit_svg: plotted cells must be numeric");
        return std::get<double>(c);
    };
    auto axis_value = [](double v, bool log) {
        if (!log) return v;
        if (v <= 0) throw std::invalid_argument("emit_svg: log axis requires positive data");
        return std::log10(v);
    };

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& row : table.rows) {
        double x = axis_value(cell_num(row[xi]), logx);
        for (std::size_t k : yi) {
            double y = axis_value(cell_num(row[k]), logy);
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (first) {
        xmin = ymin = 0;
        xmax = ymax = 1;
    }
    if (xmax == xmin) {
        xmax += 1;
        xmin -= 1;
    }
    if (ymax == ymin) {
        ymax += 1;
        ymin -= 1;
    }

    const double W = 800, H = 500, L = 70, R = 20, T = 40, B = 50;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("emit_svg: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
           "font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<!-- version: " << table.version << " -->\n";
    out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    out << "<text x=\"" << svg_num(W / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
        << table.experiment << "</text>\n";
    // axes
    out << "<line x1=\"" << svg_num(L) << "\" y1=\"" << svg_num(H - B) << "\" x2=\"" << svg_num(W - R)
        << "\" y2=\"" << svg_num(H - B) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << svg_num(L) << "\" y1=\"" << svg_num(T) << "\" x2=\"" << svg_num(L)
        << "\" y2=\"" << svg_num(H - B) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double fx = xmin + (xmax - xmin) * i / 4.0;
        double fy = ymin + (ymax - ymin) * i / 4.0;
        double lx = logx ? std::pow(10.0, fx) : fx;
        double ly = logy ? std::pow(10.0, fy) : fy;
        out << "<line x1=\"" << svg_num(px(fx)) << "\" y1=\"" << svg_num(H - B) << "\" x2=\""
            << svg_num(px(fx)) << "\" y2=\"" << svg_num(H - B + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << svg_num(px(fx)) << "\" y=\"" << svg_num(H - B + 18)
            << "\" text-anchor=\"middle\">" << tick_label(lx) << "</text>\n";
        out << "<line x1=\"" << svg_num(L - 5) << "\" y1=\"" << svg_num(py(fy)) << "\" x2=\""
            << svg_num(L) << "\" y2=\"" << svg_num(py(fy)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << svg_num(L - 8) << "\" y=\"" << svg_num(py(fy) + 4)
            << "\" text-anchor=\"end\">" << tick_label(ly) << "</text>\n";
    }
    out << "<text x=\"" << svg_num((L + W - R) / 2) << "\" y=\"" << svg_num(H - 12)
        << "\" text-anchor=\"middle\">" << x_col << (logx ? " (log)" : "") << "</text>\n";
    // one polyline per y column
    for (std::size_t s = 0; s < yi.size(); ++s) {
        const char* color = kPalette[s % 8];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& row : table.rows) {
            double x = axis_value(cell_num(row[xi]), logx);
            double y = axis_value(cell_num(row[yi[s]]), logy);
            out << svg_num(px(x)) << "," << svg_num(py(y)) << " ";
        }
        out << "\"/>\n";
        double ly = T + 16.0 * static_cast<double>(s);
        out << "<line x1=\"" << svg_num(W - R - 120) << "\" y1=\"" << svg_num(ly) << "\" x2=\""
            << svg_num(W - R - 100) << "\" y2=\"" << svg_num(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << svg_num(W - R - 94) << "\" y=\"" << svg_num(ly + 4) << "\">"
            << y_cols[s] << (logy ? " (log)" : "") << "</text>\n";
    }
    out << "</svg>\n";
    if (!out.good()) throw std::invalid_argument("emit_svg: write failed for " + path);
}

}  // namespace mlab
