#include "mlab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace mlab {

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

namespace {

// per-thread twiddle cache, grown on demand; twiddles[k] = e(-k / size)
struct TwiddleCache {
    std::size_t size = 0;
    std::vector<cplx> w;

    void ensure(std::size_t n) {
        if (size == n) return;
        size = n;
        w.resize(n / 2);
        const double step = -2.0 * M_PI / static_cast<double>(n);
        for (std::size_t k = 0; k < n / 2; ++k) {
            double a = step * static_cast<double>(k);
            w[k] = {std::cos(a), std::sin(a)};
        }
    }
};

thread_local TwiddleCache tw_cache;

}  // namespace

void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_pow2: size must be a power of two");
    if (n == 1) return;

    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    tw_cache.ensure(n);
    const std::vector<cplx>& w = tw_cache.w;

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx t = w[k * stride];
                if (inverse) t = std::conj(t);
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * t;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

}  // namespace mlab
