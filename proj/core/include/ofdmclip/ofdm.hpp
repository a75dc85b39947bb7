#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ofdmclip/error.hpp"
#include "ofdmclip/fir_design.hpp"
#include "ofdmclip/types.hpp"

namespace ofdmclip {

/// OFDM numerology. Defaults are the 1 MHz / 128-subcarrier / 8x oversampled
/// configuration used by the experiments.
struct OfdmParams {
    int n_subcarriers = 128;
    int oversample = 8;
    double bandwidth_hz = 1.0e6;
    double carrier_hz = 2.0e6;
    /// Guard length in non-oversampled samples.
    int cp_len = 32;

    double sample_hz() const { return bandwidth_hz * oversample; }
    double subcarrier_spacing_hz() const { return bandwidth_hz / n_subcarriers; }
    double symbol_interval_s() const { return 1.0 / subcarrier_spacing_hz(); }
    std::size_t fft_size() const { return static_cast<std::size_t>(n_subcarriers) * oversample; }
    std::size_t cp_samples() const { return static_cast<std::size_t>(cp_len) * oversample; }
    /// DFT bin of the carrier on the fft_size() grid.
    std::size_t carrier_bin() const;

    /// Throws ConfigError naming the violated relation.
    void validate() const;
};

/// Subcarrier bins: length N (data) or N*L (zero-extended).
struct FreqFrame {
    std::vector<Complex> bins;
};

/// Places X[0..N/2] at k = 0..N/2 and X[N/2+1..N-1] at k = NL-N/2+1..NL-1;
/// the N(L-1) bins in between are zero.
FreqFrame oversample_extend(const FreqFrame& frame, int oversample);

/// Inverse DFT scaled by 1/sqrt(L N); frame must hold N*L bins.
BasebandSignal ofdm_modulate(const FreqFrame& frame, const OfdmParams& params);

/// Forward DFT scaled by 1/sqrt(L N) followed by extraction of the N data
/// bins in oversample_extend's layout. Signal must hold N*L samples.
std::vector<Complex> ofdm_demodulate(const BasebandSignal& signal, const OfdmParams& params);

template <typename Signal>
Signal add_cyclic_prefix(const Signal& signal, std::size_t cp_samples) {
    if (cp_samples > signal.samples.size()) {
        throw InputShapeError("cyclic prefix of " + std::to_string(cp_samples) + " samples exceeds signal length " +
                              std::to_string(signal.samples.size()));
    }
    Signal out{{}, signal.sample_hz};
    out.samples.reserve(signal.samples.size() + cp_samples);
    out.samples.insert(out.samples.end(), signal.samples.end() - static_cast<std::ptrdiff_t>(cp_samples),
                       signal.samples.end());
    out.samples.insert(out.samples.end(), signal.samples.begin(), signal.samples.end());
    return out;
}

template <typename Signal>
Signal remove_cyclic_prefix(const Signal& signal, std::size_t cp_samples) {
    if (signal.samples.size() <= cp_samples) {
        throw InputShapeError("signal of " + std::to_string(signal.samples.size()) +
                              " samples is too short to drop a " + std::to_string(cp_samples) + "-sample prefix");
    }
    return Signal{{signal.samples.begin() + static_cast<std::ptrdiff_t>(cp_samples), signal.samples.end()},
                  signal.sample_hz};
}

/// x_p[m] = sqrt(2) Re{ x[m] exp(j 2pi f_c (m + start_index) / f_s) }.
/// The sqrt(2) keeps passband and baseband mean power equal. Throws
/// ConfigError unless f_c + BW/2 < f_s/2.
PassbandSignal upconvert(const BasebandSignal& signal, double carrier_hz, const OfdmParams& params,
                         long start_index = 0);

/// Mixes with sqrt(2) exp(-j 2pi f_c (m + start_index) / f_s) and removes the
/// 2 f_c image with `image_filter`, applied zero-phase (group delay trimmed,
/// zeros assumed outside the signal). Output length equals input length.
BasebandSignal downconvert(const PassbandSignal& signal, double carrier_hz, const OfdmParams& params,
                           const FirFilter& image_filter, long start_index = 0);

/// As above with the default image-reject low-pass (designed on every call).
BasebandSignal downconvert(const PassbandSignal& signal, double carrier_hz, const OfdmParams& params,
                           long start_index = 0);

/// Default receiver low-pass: pass [0, BW/2], stop [f_c, f_s/2], equal weights.
FirDesignSpec default_image_reject_spec(const OfdmParams& params, int num_taps = 31);

/// Receiver FFT window for one burst (prefix + symbol). Starts `advance`
/// samples before the end of the prefix and rotates the window back, so a
/// symmetric filter of half-length `advance` sees only this burst's samples.
/// With advance = 0 this is remove_cyclic_prefix truncated to N*L samples.
BasebandSignal symbol_window(const BasebandSignal& burst, const OfdmParams& params, std::size_t advance = 0);

}  // namespace ofdmclip
