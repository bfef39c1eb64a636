#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mlab/common.hpp"

namespace mlab {

// Polynomial with integer coefficients, degree >= 1, leading coefficient
// nonzero.  Evaluation is exact in 128-bit intermediates and guarded against
// overflowing the 64-bit result.
class IntPolynomial {
  public:
    // coeffs = (c_0, ..., c_d), c_d != 0, d >= 1
    explicit IntPolynomial(std::vector<i64> coeffs) : c_(std::move(coeffs)) {
        while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
        if (c_.size() < 2 || c_.back() == 0)
            throw std::invalid_argument("IntPolynomial: degree must be >= 1 with nonzero leading coefficient");
    }

    static IntPolynomial monomial(int degree, i64 coeff = 1) {
        std::vector<i64> c(static_cast<std::size_t>(degree) + 1, 0);
        c.back() = coeff;
        return IntPolynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<i64>& coeffs() const { return c_; }

    i64 operator()(i64 n) const {
        i128 acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc = acc * n + c_[i];
            if (acc > kGuard || acc < -kGuard) throw std::overflow_error("IntPolynomial: evaluation overflow");
        }
        return static_cast<i64>(acc);
    }

    // value mod q in [0, q)
    i64 eval_mod(i64 n, i64 q) const {
        i64 nm = n % q;
        if (nm < 0) nm += q;
        i128 acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) {
            i64 ci = c_[i] % q;
            if (ci < 0) ci += q;
            acc = (acc * nm + ci) % q;
        }
        return static_cast<i64>(acc);
    }

    double eval_real(double x) const {
        double acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + static_cast<double>(c_[i]);
        return acc;
    }

    // |P'(x)|, evaluated in doubles
    double derivative_abs(double x) const {
        double acc = 0;
        for (std::size_t i = c_.size(); i-- > 1;)
            acc = acc * x + static_cast<double>(c_[i]) * static_cast<double>(i);
        return acc < 0 ? -acc : acc;
    }

  private:
    static constexpr i128 kGuard = (i128(1) << 62);
    std::vector<i64> c_;
};

}  // namespace mlab
