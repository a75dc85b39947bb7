#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ofdmclip {

using Complex = std::complex<double>;
using Bits = std::vector<std::uint8_t>;

/// Complex envelope samples at `sample_hz`.
struct BasebandSignal {
    std::vector<Complex> samples;
    double sample_hz = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
};

/// Real carrier-modulated samples at `sample_hz`.
struct PassbandSignal {
    std::vector<double> samples;
    double sample_hz = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
};

}  // namespace ofdmclip
