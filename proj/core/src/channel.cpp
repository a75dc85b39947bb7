#include "ofdmclip/channel.hpp"

#include <cmath>
#include <string>

#include "ofdmclip/error.hpp"

namespace ofdmclip {

Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
    return Rng(seq);
}

void NoiseConfig::validate() const {
    if (std::isnan(ebn0_db) || ebn0_db == -INFINITY) throw ConfigError("ebn0_db must be finite or +inf");
    if (bits_per_symbol < 1) throw ConfigError("bits_per_symbol must be >= 1");
    if (!(occupied_fraction > 0.0 && occupied_fraction <= 1.0)) {
        throw ConfigError("occupied_fraction must lie in (0, 1]");
    }
    if (!(cp_overhead > 0.0 && cp_overhead <= 1.0)) throw ConfigError("cp_overhead must lie in (0, 1]");
}

double noise_sigma(const NoiseConfig& config, double signal_power) {
    config.validate();
    if (!(signal_power > 0.0) || !std::isfinite(signal_power)) {
        throw ConfigError("signal power must be positive (got " + std::to_string(signal_power) + ")");
    }
    if (config.ebn0_db == INFINITY) return 0.0;
    const double ebn0 = std::pow(10.0, config.ebn0_db / 10.0);
    const double variance = signal_power / config.occupied_fraction /
                            (2.0 * config.bits_per_symbol * config.cp_overhead * ebn0);
    return std::sqrt(variance);
}

PassbandSignal add_awgn(const PassbandSignal& signal, double sigma_n, Rng& rng) {
    if (!(sigma_n >= 0.0)) throw ConfigError("noise sigma must be non-negative");
    PassbandSignal out{signal.samples, signal.sample_hz};
    if (sigma_n == 0.0) return out;
    std::normal_distribution<double> gauss(0.0, sigma_n);
    for (auto& s : out.samples) s += gauss(rng);
    return out;
}

PassbandSignal add_awgn(const PassbandSignal& signal, double sigma_n, std::uint64_t seed) {
    Rng rng = make_stream(seed, 0);
    return add_awgn(signal, sigma_n, rng);
}

}  // namespace ofdmclip
