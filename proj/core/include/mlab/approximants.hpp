#pragma once

#include <utility>
#include <vector>

#include "mlab/arith.hpp"
#include "mlab/common.hpp"

namespace mlab {

// (W/phi(W)) 1{(n,W)=1} with W the product of primes <= w.  W itself is
// never formed; coprimality is trial division over the prime list, so w is
// not limited by integer width.
class CramerWeight {
  public:
    explicit CramerWeight(double w);

    double level() const { return w_; }
    const std::vector<i64>& prime_list() const { return primes_; }
    double normalization() const { return normalization_; }  // W/phi(W)

    double operator()(i64 n) const {
        for (i64 p : primes_)
            if (n % p == 0) return 0.0;
        return normalization_;
    }

    // values on 1..N in one sieve pass
    std::vector<double> values_upto(i64 N) const;

  private:
    double w_;
    std::vector<i64> primes_;
    double normalization_;
};

// Type I weights lambda_d, 1 <= d < Q, of the Ramanujan-sum approximant.
struct HeathBrownWeight {
    i64 Q = 1;
    std::vector<double> lambda;  // index d, size Q (entry 0 unused)

    double max_abs() const;
};

HeathBrownWeight hb_weights(i64 Q);

// sum_{q < Q} mu(q)/phi(q) c_q(n); sieve limit must cover Q.
double hb_eval_direct(i64 Q, i64 n, const SieveTable& t);

// sum_{d | n, d < Q} lambda_d; sieve limit must cover n.
double hb_eval_type1(const HeathBrownWeight& hw, i64 n, const SieveTable& t);

// values of the Type I sum on 1..N by divisor accumulation
std::vector<double> hb_values_upto(const HeathBrownWeight& hw, i64 N);

// Scale-dependent approximant: Cramer weight at level w = exp(<Log N>^(1/C0)).
class MangoldtApproximant {
  public:
    MangoldtApproximant(double N, int C0);

    double scale() const { return N_; }
    int c0() const { return C0_; }
    double level() const { return inner_.level(); }
    const CramerWeight& cramer() const { return inner_; }

    double operator()(i64 n) const { return inner_(n); }

  private:
    double N_;
    int C0_;
    CramerWeight inner_;
};

inline double lambda_N_eval(double N, int C0, i64 n) { return MangoldtApproximant(N, C0)(n); }

// sum_{d | W} mu(d)/phi(d) c_d(n) by enumerating squarefree divisors of W;
// agrees with CramerWeight eval.  Requires w <= 31.
double cramer_via_ramanujan_check(double w, i64 n);

// psi(x) = x . linear + constant
struct AffineForm {
    std::vector<i64> linear;
    i64 constant = 0;
};

// E over (Z/pZ)^m of prod_{i: p <= z_i} (p/(p-1)) 1{psi_i != 0 mod p}.
// Exhaustive enumeration; requires p^m <= 1e7, m <= 4.
double local_factor_beta(i64 p, const std::vector<AffineForm>& forms, const std::vector<double>& z_list);

// Axis-aligned lattice box, inclusive integer endpoints.
struct IntegerBox {
    std::vector<std::pair<i64, i64>> ranges;

    i64 lattice_count() const {
        i64 c = 1;
        for (auto [lo, hi] : ranges) c *= (hi - lo + 1);
        return c;
    }
};

struct LinearCountResult {
    double lhs = 0;         // sum over the box of prod_i Cramer_{z_i}(psi_i(x))
    double prediction = 0;  // vol * prod_{p <= max z} beta_p
};

LinearCountResult cramer_linear_count(const std::vector<AffineForm>& forms, const IntegerBox& box,
                                      const std::vector<double>& z_list);

// Rosser-Iwaniec beta-sieve weights (beta = 2): lambda_d = mu(d) on chains
// d = p_1...p_r, p_1 > ... > p_r, primes <= w, kept while
// p_1...p_{m-1} p_m^3 <= y at every odd m (upper) / even m (lower).
struct SieveWeights {
    int sign = +1;  // +1 upper, -1 lower
    double w = 2;
    double y = 2;
    std::vector<std::pair<i64, int>> weights;  // (d, lambda_d), d increasing

    double sum_over_divisors(i64 n) const {
        double s = 0;
        for (auto [d, l] : weights)
            if (n % d == 0) s += l;
        return s;
    }
};

std::pair<SieveWeights, SieveWeights> beta_sieve_weights(double w, double y);

// primes <= x by trial division (x modest)
std::vector<i64> primes_upto(double x);

}  // namespace mlab
