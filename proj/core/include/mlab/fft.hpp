#pragma once

#include <complex>
#include <vector>

#include "mlab/common.hpp"

namespace mlab {

// In-place radix-2 complex FFT, n a power of two.  inverse=true applies the
// conjugate transform without the 1/n normalization.
void fft_pow2(std::vector<cplx>& a, bool inverse = false);

std::size_t next_pow2(std::size_t n);

}  // namespace mlab
