#include "ofdmclip/ofdm.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace ofdmclip {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double rate_of(double signal_hz, const OfdmParams& params) {
    return signal_hz > 0.0 ? signal_hz : params.sample_hz();
}

void check_nyquist(double carrier_hz, double sample_hz, const OfdmParams& params) {
    if (!(carrier_hz + params.bandwidth_hz / 2.0 < sample_hz / 2.0)) {
        throw ConfigError("carrier " + std::to_string(carrier_hz) + " Hz plus half the bandwidth does not fit below "
                          "Nyquist (" + std::to_string(sample_hz / 2.0) + " Hz)");
    }
}

// exp(j 2 pi f_c n / f_s), with the cycle count reduced before scaling by 2 pi.
Complex carrier(double cycles_per_sample, long n) {
    const double cycles = std::fmod(cycles_per_sample * static_cast<double>(n), 1.0);
    return std::polar(1.0, two_pi * cycles);
}

}  // namespace

std::size_t OfdmParams::carrier_bin() const {
    return static_cast<std::size_t>(std::lround(carrier_hz / subcarrier_spacing_hz()));
}

void OfdmParams::validate() const {
    if (n_subcarriers < 2 || n_subcarriers % 2 != 0) {
        throw ConfigError("n_subcarriers must be even and >= 2 (got " + std::to_string(n_subcarriers) + ")");
    }
    if (oversample < 1) throw ConfigError("oversample must be >= 1 (got " + std::to_string(oversample) + ")");
    if (cp_len < 0 || cp_len > n_subcarriers) {
        throw ConfigError("cp_len must satisfy 0 <= cp_len <= n_subcarriers (got " + std::to_string(cp_len) + ")");
    }
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) throw ConfigError("bandwidth_hz must be positive");
    if (!(carrier_hz - bandwidth_hz / 2.0 >= 0.0) || !std::isfinite(carrier_hz)) {
        throw ConfigError("carrier_hz must be at least bandwidth_hz / 2");
    }
    if (carrier_hz + bandwidth_hz / 2.0 > sample_hz() / 2.0) {
        throw ConfigError("carrier_hz + bandwidth_hz/2 must not exceed sample_hz/2 = bandwidth_hz*oversample/2");
    }
    const double bins = carrier_hz / subcarrier_spacing_hz();
    if (std::abs(bins - std::round(bins)) > 1e-9 * std::max(1.0, bins)) {
        throw ConfigError("carrier_hz must be a multiple of the subcarrier spacing bandwidth_hz/n_subcarriers");
    }
}

FreqFrame oversample_extend(const FreqFrame& frame, int oversample) {
    const std::size_t n = frame.bins.size();
    if (n % 2 != 0) throw ConfigError("oversample_extend needs an even subcarrier count (got " + std::to_string(n) + ")");
    if (oversample < 1) throw ConfigError("oversample must be >= 1");
    const std::size_t nl = n * static_cast<std::size_t>(oversample);
    FreqFrame out{std::vector<Complex>(nl, Complex{})};
    for (std::size_t k = 0; k <= n / 2 && k < n; ++k) out.bins[k] = frame.bins[k];
    for (std::size_t k = n / 2 + 1; k < n; ++k) out.bins[nl - n + k] = frame.bins[k];
    return out;
}

BasebandSignal ofdm_modulate(const FreqFrame& frame, const OfdmParams& params) {
    const std::size_t nl = params.fft_size();
    if (frame.bins.size() != nl) {
        throw InputShapeError("ofdm_modulate expects " + std::to_string(nl) + " bins, got " +
                              std::to_string(frame.bins.size()));
    }
    BasebandSignal out{std::vector<Complex>(nl), params.sample_hz()};
    detail::fft_inverse(frame.bins, out.samples);
    const double scale = 1.0 / std::sqrt(static_cast<double>(nl));
    for (auto& s : out.samples) s *= scale;
    return out;
}

std::vector<Complex> ofdm_demodulate(const BasebandSignal& signal, const OfdmParams& params) {
    const std::size_t nl = params.fft_size();
    const auto n = static_cast<std::size_t>(params.n_subcarriers);
    if (signal.samples.size() != nl) {
        throw InputShapeError("ofdm_demodulate expects " + std::to_string(nl) + " samples, got " +
                              std::to_string(signal.samples.size()));
    }
    std::vector<Complex> spectrum(nl);
    detail::fft_forward(signal.samples, spectrum);
    const double scale = 1.0 / std::sqrt(static_cast<double>(nl));
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k <= n / 2; ++k) out[k] = spectrum[k] * scale;
    for (std::size_t k = n / 2 + 1; k < n; ++k) out[k] = spectrum[nl - n + k] * scale;
    return out;
}

PassbandSignal upconvert(const BasebandSignal& signal, double carrier_hz, const OfdmParams& params,
                         long start_index) {
    const double fs = rate_of(signal.sample_hz, params);
    check_nyquist(carrier_hz, fs, params);
    const double step = carrier_hz / fs;
    PassbandSignal out{std::vector<double>(signal.samples.size()), fs};
    for (std::size_t m = 0; m < signal.samples.size(); ++m) {
        const Complex c = carrier(step, static_cast<long>(m) + start_index);
        out.samples[m] = std::numbers::sqrt2 * (signal.samples[m] * c).real();
    }
    return out;
}

BasebandSignal downconvert(const PassbandSignal& signal, double carrier_hz, const OfdmParams& params,
                           const FirFilter& image_filter, long start_index) {
    const double fs = rate_of(signal.sample_hz, params);
    check_nyquist(carrier_hz, fs, params);
    const double step = carrier_hz / fs;
    const std::size_t len = signal.samples.size();

    std::vector<Complex> mixed(len);
    for (std::size_t m = 0; m < len; ++m) {
        mixed[m] = std::numbers::sqrt2 * signal.samples[m] *
                   std::conj(carrier(step, static_cast<long>(m) + start_index));
    }

    const auto& h = image_filter.taps;
    const auto delay = static_cast<long>(image_filter.group_delay());
    const auto n = static_cast<long>(len);
    BasebandSignal out{std::vector<Complex>(len), fs};
    for (long i = 0; i < n; ++i) {
        // out[i] = sum_t h[t] mixed[i + delay - t]
        const long t_lo = std::max(0L, i + delay - (n - 1));
        const long t_hi = std::min(static_cast<long>(h.size()) - 1, i + delay);
        Complex acc{};
        for (long t = t_lo; t <= t_hi; ++t) acc += h[static_cast<std::size_t>(t)] * mixed[static_cast<std::size_t>(i + delay - t)];
        out.samples[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

BasebandSignal downconvert(const PassbandSignal& signal, double carrier_hz, const OfdmParams& params,
                           long start_index) {
    return downconvert(signal, carrier_hz, params, design_equiripple(default_image_reject_spec(params)), start_index);
}

FirDesignSpec default_image_reject_spec(const OfdmParams& params, int num_taps) {
    const double fs = params.sample_hz();
    return FirDesignSpec{num_taps,
                         {Band{0.0, params.bandwidth_hz / 2.0 / fs, 1.0, 1.0},
                          Band{params.carrier_hz / fs, 0.5, 0.0, 1.0}}};
}

BasebandSignal symbol_window(const BasebandSignal& burst, const OfdmParams& params, std::size_t advance) {
    const std::size_t nl = params.fft_size();
    const std::size_t cp = params.cp_samples();
    if (burst.samples.size() < cp + nl) {
        throw InputShapeError("burst of " + std::to_string(burst.samples.size()) + " samples is shorter than prefix + symbol (" +
                              std::to_string(cp + nl) + ")");
    }
    if (advance > cp) {
        throw InputShapeError("window advance " + std::to_string(advance) + " exceeds the cyclic prefix (" +
                              std::to_string(cp) + " samples)");
    }
    const std::size_t start = cp - advance;
    BasebandSignal out{std::vector<Complex>(nl), burst.sample_hz};
    for (std::size_t k = 0; k < nl; ++k) out.samples[k] = burst.samples[start + (k + advance) % nl];
    return out;
}

}  // namespace ofdmclip
