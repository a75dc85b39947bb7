#pragma once

#include <span>
#include <vector>

#include "ofdmclip/fir_design.hpp"
#include "ofdmclip/ofdm.hpp"
#include "ofdmclip/types.hpp"

namespace ofdmclip {

/// Clip level A = cr * sigma, sigma being the RMS of the unclipped signal.
class ClipConfig {
public:
    /// Throws ConfigError unless cr > 0 and sigma > 0.
    ClipConfig(double cr, double sigma);

    double cr() const noexcept { return cr_; }
    double sigma() const noexcept { return sigma_; }
    double amplitude() const noexcept { return amplitude_; }

private:
    double cr_;
    double sigma_;
    double amplitude_;
};

/// sqrt(mean |x|^2). Throws InputShapeError on empty input.
double rms(std::span<const double> samples);
double rms(std::span<const Complex> samples);
inline double rms(const PassbandSignal& s) { return rms(std::span<const double>(s.samples)); }
inline double rms(const BasebandSignal& s) { return rms(std::span<const Complex>(s.samples)); }

/// Hard limiter on a real signal: values are saturated to [-A, A].
PassbandSignal clip_passband(const PassbandSignal& signal, double amplitude);

/// Envelope limiter: magnitudes above A are set to A, phase kept.
BasebandSignal clip_baseband(const BasebandSignal& signal, double amplitude);

/// Default composed-filter high-pass: stop [0, f_c - 0.75 BW], pass
/// [f_c - 0.5 BW, f_s/2], equal weights.
FirDesignSpec default_hpf_spec(const OfdmParams& params, int num_taps = 71);

/// One passband symbol (N*L samples, no prefix) through DFT, in-band
/// high-pass weighting, out-of-band zeroing and inverse DFT.
///
/// Bins carrying subcarriers (carrier_bin - N/2 + 1 .. carrier_bin + N/2 and
/// their mirror images) are scaled by the HPF's zero-phase amplitude at that
/// bin frequency; every other bin is set to zero. The spectrum is made
/// Hermitian before the inverse transform, so the result is exactly real.
PassbandSignal composed_filter(const PassbandSignal& signal, const OfdmParams& params, const FirFilter& hpf);

/// Same filter with the in-band gains precomputed; use when filtering many
/// symbols with one design.
class ComposedFilter {
public:
    ComposedFilter(const OfdmParams& params, const FirFilter& hpf);

    PassbandSignal operator()(const PassbandSignal& signal) const;

    /// Positive-frequency DFT bins that survive the filter.
    std::span<const std::size_t> in_band_bins() const { return bins_; }

private:
    OfdmParams params_;
    std::vector<std::size_t> bins_;
    std::vector<double> gains_;
};

}  // namespace ofdmclip
