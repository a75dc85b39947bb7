#pragma once

// Direct O(n^2) evaluation of the oversampled inverse transform
//   x[m] = 1/sqrt(NL) * sum_k X[k] exp(j 2 pi m k / NL)
// and its forward counterpart. Independent of the FFT path.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

inline std::vector<std::complex<double>> direct_idft(const std::vector<std::complex<double>>& bins) {
    const std::size_t n = bins.size();
    std::vector<std::complex<double>> out(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t m = 0; m < n; ++m) {
        std::complex<double> acc{};
        for (std::size_t k = 0; k < n; ++k) {
            // Reduce m*k mod n first so the phase stays exact for large n.
            const double phase = 2.0 * std::numbers::pi * static_cast<double>((m * k) % n) / static_cast<double>(n);
            acc += bins[k] * std::polar(1.0, phase);
        }
        out[m] = acc * scale;
    }
    return out;
}

inline std::vector<std::complex<double>> direct_dft(const std::vector<std::complex<double>>& samples) {
    const std::size_t n = samples.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{};
        for (std::size_t m = 0; m < n; ++m) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>((m * k) % n) / static_cast<double>(n);
            acc += samples[m] * std::polar(1.0, phase);
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace oracle
