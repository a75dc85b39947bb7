#include "ofdmclip/clip_filter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "ofdmclip/error.hpp"

namespace ofdmclip {

ClipConfig::ClipConfig(double cr, double sigma) : cr_(cr), sigma_(sigma), amplitude_(cr * sigma) {
    if (!(cr > 0.0)) throw ConfigError("clipping ratio must be positive (got " + std::to_string(cr) + ")");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ConfigError("unclipped RMS sigma must be positive and finite (got " + std::to_string(sigma) + ")");
    }
}

double rms(std::span<const double> samples) {
    if (samples.empty()) throw InputShapeError("rms of an empty signal");
    double acc = 0.0;
    for (double s : samples) acc += s * s;
    return std::sqrt(acc / static_cast<double>(samples.size()));
}

double rms(std::span<const Complex> samples) {
    if (samples.empty()) throw InputShapeError("rms of an empty signal");
    double acc = 0.0;
    for (const auto& s : samples) acc += std::norm(s);
    return std::sqrt(acc / static_cast<double>(samples.size()));
}

PassbandSignal clip_passband(const PassbandSignal& signal, double amplitude) {
    if (!(amplitude > 0.0)) throw ConfigError("clip amplitude must be positive");
    PassbandSignal out{signal.samples, signal.sample_hz};
    for (auto& s : out.samples) s = std::clamp(s, -amplitude, amplitude);
    return out;
}

BasebandSignal clip_baseband(const BasebandSignal& signal, double amplitude) {
    if (!(amplitude > 0.0)) throw ConfigError("clip amplitude must be positive");
    BasebandSignal out{signal.samples, signal.sample_hz};
    for (auto& s : out.samples) {
        const double mag = std::abs(s);
        if (mag > amplitude) s *= amplitude / mag;
    }
    return out;
}

FirDesignSpec default_hpf_spec(const OfdmParams& params, int num_taps) {
    const double fs = params.sample_hz();
    const double bw = params.bandwidth_hz;
    const double fc = params.carrier_hz;
    return FirDesignSpec{num_taps,
                         {Band{0.0, std::max(0.0, fc - 0.75 * bw) / fs, 0.0, 1.0},
                          Band{(fc - 0.5 * bw) / fs, 0.5, 1.0, 1.0}}};
}

ComposedFilter::ComposedFilter(const OfdmParams& params, const FirFilter& hpf) : params_(params) {
    params.validate();
    const std::size_t nl = params.fft_size();
    const auto half = static_cast<long>(params.n_subcarriers / 2);
    const auto kc = static_cast<long>(params.carrier_bin());
    std::vector<double> freqs;
    for (long b = -half + 1; b <= half; ++b) {
        const auto bin = static_cast<std::size_t>(kc + b);
        bins_.push_back(bin);
        freqs.push_back(static_cast<double>(bin) / static_cast<double>(nl));
    }
    gains_ = amplitude_response(hpf, freqs);
}

PassbandSignal ComposedFilter::operator()(const PassbandSignal& signal) const {
    const std::size_t nl = params_.fft_size();
    if (signal.samples.size() != nl) {
        throw InputShapeError("composed filter expects one " + std::to_string(nl) + "-sample symbol, got " +
                              std::to_string(signal.samples.size()));
    }
    std::vector<Complex> spectrum(signal.samples.begin(), signal.samples.end());
    detail::fft_forward(spectrum, spectrum);

    std::vector<Complex> kept(nl, Complex{});
    for (std::size_t i = 0; i < bins_.size(); ++i) {
        const std::size_t k = bins_[i];
        const Complex v = spectrum[k] * gains_[i];
        kept[k] = v;
        kept[nl - k] = std::conj(v);
    }
    detail::fft_inverse(kept, kept);

    PassbandSignal out{std::vector<double>(nl), signal.sample_hz};
    const double scale = 1.0 / static_cast<double>(nl);
    for (std::size_t m = 0; m < nl; ++m) out.samples[m] = kept[m].real() * scale;
    return out;
}

PassbandSignal composed_filter(const PassbandSignal& signal, const OfdmParams& params, const FirFilter& hpf) {
    return ComposedFilter(params, hpf)(signal);
}

}  // namespace ofdmclip
