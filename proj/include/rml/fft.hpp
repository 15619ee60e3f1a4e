#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rml {

// In-place iterative radix-2 FFT. Size must be a power of two.
// sign = +1: X[k] = sum_m a[m] e^{+2 pi i m k / T}  (synthesis, no 1/T)
// sign = -1: the conjugate transform.
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

bool is_pow2(std::size_t n);

} // namespace rml
