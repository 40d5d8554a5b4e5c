#pragma once

#include <complex>
#include <span>

namespace qfall::detail {

// Unnormalised forward DFT (exponent sign -1), in place.
void fft_forward(std::span<std::complex<double>> data);

// Inverse DFT including the 1/n factor, in place.
void fft_inverse(std::span<std::complex<double>> data);

} // namespace qfall::detail
