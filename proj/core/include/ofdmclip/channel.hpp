#pragma once

#include <cstdint>
#include <random>

#include "ofdmclip/types.hpp"

namespace ofdmclip {

/// Generator used for every random stream in the library.
using Rng = std::mt19937_64;

/// Independent stream for (master seed, stream index), seeded through
/// std::seed_seq so the mapping is fixed by the standard.
Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_index);

/// Operating point for the AWGN channel.
///
/// Noise calibration. The channel adds real white noise of variance s^2 per
/// passband sample. Downconversion by sqrt(2) e^{-j...} turns the in-band part
/// into circular complex noise of variance 2 s^2 per sample, and the unitary
/// demodulator DFT keeps that variance per subcarrier: N0 = 2 s^2. Unit-energy
/// symbols on N of N*L bins give a passband power P = 1/L = occupied_fraction,
/// so Es = P / occupied_fraction. Spending a fraction 1 - cp_overhead of the
/// energy on the prefix leaves Es = bits_per_symbol * cp_overhead * Eb of
/// useful energy per symbol, hence
///
///   s^2 = P * L / (2 * bits_per_symbol * cp_overhead * Eb/N0).
struct NoiseConfig {
    double ebn0_db = 0.0;
    int bits_per_symbol = 2;
    /// N / (N*L).
    double occupied_fraction = 1.0 / 8.0;
    /// N / (N + cp_len) when prefix energy counts toward Eb, else 1.
    double cp_overhead = 1.0;

    void validate() const;
};

/// Per-sample noise standard deviation for `signal_power` (mean square of
/// the transmitted passband samples). Returns 0 for ebn0_db = +inf.
double noise_sigma(const NoiseConfig& config, double signal_power);

/// Adds N(0, sigma_n^2) to every sample, drawing from `rng`.
PassbandSignal add_awgn(const PassbandSignal& signal, double sigma_n, Rng& rng);

/// Same, with a fresh stream from `seed`.
PassbandSignal add_awgn(const PassbandSignal& signal, double sigma_n, std::uint64_t seed);

}  // namespace ofdmclip
