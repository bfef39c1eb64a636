#pragma once

#include <cstdint>
#include <vector>

#include "mlab/common.hpp"
#include "mlab/poly.hpp"

namespace mlab {

// Complex function on Z/p^jZ under the Haar-probability convention
// |f|_q^q = E_x |f(x)|^q.
struct FiniteLevelFn {
    i64 p = 2;
    int j = 1;
    std::vector<cplx> values;  // length p^j

    FiniteLevelFn() = default;
    FiniteLevelFn(i64 prime, int level);
    FiniteLevelFn(i64 prime, int level, std::vector<cplx> vals);

    i64 modulus() const { return static_cast<i64>(values.size()); }

    cplx mean() const {
        cplx s{0, 0};
        for (const cplx& v : values) s += v;
        return s / static_cast<double>(values.size());
    }

    static FiniteLevelFn constant(i64 p, int j, cplx c);

    // block-constant extension to level j+1
    FiniteLevelFn lift() const;
};

// (E |f|^q)^(1/q), Haar probability measure; q >= 1.
double lq_norm(const FiniteLevelFn& f, double q);

// Avg(f,g)(x) = E_n f(x+n) g(x+P(n)), n over units (n mod p != 0) or all of
// Z/p^jZ.  Exact finite sums.
FiniteLevelFn avg_finite(const FiniteLevelFn& f, const FiniteLevelFn& g, const IntPolynomial& P,
                         bool units_only);

struct MeanEnergySplit {
    cplx a{0, 0};       // mean
    FiniteLevelFn f0;   // f - a, mean zero
    double energy = 0;  // |f0|_2^2
};

MeanEnergySplit decompose_mean(const FiniteLevelFn& f);

// h(x) = E_n f0(x+n) 1{p | n}; requires mean-zero input (tolerance 1e-10).
FiniteLevelFn h_function(const FiniteLevelFn& f0);

struct NormSearchResult {
    double bound = 0;  // certified lower bound on |Avg| : L2 x L2 -> Lq
    FiniteLevelFn f, g;
};

// Alternating maximization of |Avg_units(f,g)|_q over |f|_2 = |g|_2 = 1:
// ascend f along the Wirtinger gradient with backtracking halving, then g,
// until relative stagnation; restart 0 is the constant pair (so bound >= 1),
// further restarts draw from the counter RNG.  p^j <= 1e5.
NormSearchResult bilinear_norm_search(i64 p, int j, double q, const IntPolynomial& P, int restarts,
                                      u64 seed);

}  // namespace mlab
