#pragma once

#include <span>

#include "ofdmclip/types.hpp"

namespace ofdmclip::detail {

/// Unnormalized complex DFTs of arbitrary length, backed by FFTW.
/// forward: X[k] = sum x[n] e^{-j2pi nk/n}; inverse uses e^{+j...}.
/// In-place (in == out) is allowed. Safe to call from multiple threads.
void fft_forward(std::span<const Complex> in, std::span<Complex> out);
void fft_inverse(std::span<const Complex> in, std::span<Complex> out);

}  // namespace ofdmclip::detail
