#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "mlab/common.hpp"

namespace mlab {

// Finitely supported complex function on Z: values on [offset, offset+len),
// zero outside the window.
struct WindowedSeries {
    i64 offset = 0;
    std::vector<cplx> values;

    WindowedSeries() = default;
    WindowedSeries(i64 off, std::vector<cplx> vals) : offset(off), values(std::move(vals)) {}
    WindowedSeries(i64 off, std::size_t len) : offset(off), values(len, cplx{0.0, 0.0}) {}

    i64 lo() const { return offset; }
    i64 hi() const { return offset + static_cast<i64>(values.size()); }  // exclusive

    cplx at(i64 x) const {
        if (x < offset || x >= hi()) return {0.0, 0.0};
        return values[static_cast<std::size_t>(x - offset)];
    }
    cplx& ref(i64 x) { return values[static_cast<std::size_t>(x - offset)]; }

    static WindowedSeries delta(i64 x) { return WindowedSeries(x, {cplx{1.0, 0.0}}); }
    static WindowedSeries ones(i64 off, std::size_t len) {
        return WindowedSeries(off, std::vector<cplx>(len, cplx{1.0, 0.0}));
    }

    double l2_norm() const {
        long double s = 0;
        for (const cplx& v : values) s += std::norm(v);
        return std::sqrt(static_cast<double>(s));
    }
    double l1_norm() const {
        long double s = 0;
        for (const cplx& v : values) s += std::abs(v);
        return static_cast<double>(s);
    }
    double lp_norm(double p) const {
        if (p < 1) throw std::invalid_argument("lp_norm: p must be >= 1");
        long double s = 0;
        for (const cplx& v : values) s += std::pow(static_cast<long double>(std::abs(v)), p);
        return static_cast<double>(std::pow(s, 1.0L / p));
    }
};

// Q(n) = a_0 + a_1 n + ... + a_d n^d with real coefficients
struct PolynomialPhase {
    std::vector<double> coeffs;  // a_0..a_d

    PolynomialPhase() : coeffs{0.0} {}
    explicit PolynomialPhase(std::vector<double> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) coeffs.push_back(0.0);
    }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Streams e(sign * Q(n)) for n = start, start+1, ... using a forward
// difference table.  Differences are reduced mod 1 each step, so the phase
// never loses its fractional part to a large integer part; initialization
// goes through __float128 so large starting points stay exact.
class PhaseStream {
  public:
    PhaseStream(const PolynomialPhase& q, i64 start, int sign = 1) {
        int d = q.degree();
        std::vector<double> f(static_cast<std::size_t>(d) + 1);
        // f[j] = frac(sign * Q(start + j))
        for (int j = 0; j <= d; ++j) f[j] = frac_eval(q, start + j, sign);
        // forward differences in place: diff_[k] = Delta^k f at start
        diff_ = f;
        for (int k = 1; k <= d; ++k)
            for (int j = d; j >= k; --j) diff_[j] = reduce(diff_[j] - diff_[j - 1]);
    }

    // phase in [0,1) at the current n, then advance
    double next() {
        double out = diff_[0];
        for (std::size_t j = 0; j + 1 < diff_.size(); ++j) diff_[j] = reduce(diff_[j] + diff_[j + 1]);
        return out;
    }

  private:
    static double reduce(double x) {
        x -= std::floor(x);
        if (x >= 1.0) x -= 1.0;
        return x;
    }
    static double frac_eval(const PolynomialPhase& q, i64 n, int sign) {
        __float128 acc = 0;
        for (std::size_t i = q.coeffs.size(); i-- > 0;) {
            acc = acc * static_cast<__float128>(n) + static_cast<__float128>(q.coeffs[i]);
            acc -= floorq_(acc);  // keep the running value in [0, |n|+1); exact mod 1
        }
        if (sign < 0) acc = -acc;
        acc -= floorq_(acc);
        double x = static_cast<double>(acc);
        return reduce(x);
    }
    static __float128 floorq_(__float128 x) {
        i128 i = static_cast<i128>(x);
        if (static_cast<__float128>(i) > x) --i;
        return static_cast<__float128>(i);
    }

    std::vector<double> diff_;
};

// Finite lambda-lacunary scale set: strictly increasing with ratios > lambda.
struct LacunarySet {
    double lambda;
    std::vector<double> scales;

    LacunarySet(double lam, std::vector<double> sc) : lambda(lam), scales(std::move(sc)) {
        if (lambda <= 1.0) throw std::invalid_argument("LacunarySet: lambda must be > 1");
        for (double s : scales)
            if (s < 1.0) throw std::invalid_argument("LacunarySet: scales must be >= 1");
        for (std::size_t i = 1; i < scales.size(); ++i)
            if (!(scales[i] / scales[i - 1] > lambda))
                throw std::invalid_argument("LacunarySet: consecutive ratio must exceed lambda");
    }

    // {ceil(2^(j/2))}-style default grid up to limit, lambda = 1.4
    static LacunarySet dyadic_half(double limit) {
        std::vector<double> sc;
        double prev = 0;
        for (int j = 0;; ++j) {
            double v = std::ceil(std::pow(2.0, j / 2.0));
            if (v > limit) break;
            if (v > prev * 1.4) {
                sc.push_back(v);
                prev = v;
            }
        }
        return LacunarySet(1.4, std::move(sc));
    }
};

}  // namespace mlab
