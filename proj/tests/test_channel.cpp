#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ofdmclip/channel.hpp"
#include "ofdmclip/constellation.hpp"
#include "ofdmclip/error.hpp"
#include "ofdmclip/harness.hpp"

using namespace ofdmclip;

TEST_CASE("noise sigma limits and scaling") {
    NoiseConfig cfg;
    cfg.ebn0_db = INFINITY;
    CHECK(noise_sigma(cfg, 1.0) == 0.0);

    cfg.ebn0_db = 0.0;
    // P L / (2 k Eb/N0) with P = 1/8, L = 8, k = 2.
    CHECK(noise_sigma(cfg, 0.125) == doctest::Approx(std::sqrt(0.25)));
    const double s1 = noise_sigma(cfg, 1.0);
    CHECK(noise_sigma(cfg, 4.0) == doctest::Approx(2.0 * s1));
    cfg.ebn0_db = 20.0;
    CHECK(noise_sigma(cfg, 1.0) == doctest::Approx(s1 / 10.0));

    cfg.ebn0_db = 0.0;
    cfg.cp_overhead = 0.8;
    CHECK(noise_sigma(cfg, 1.0) == doctest::Approx(s1 / std::sqrt(0.8)));

    CHECK_THROWS_AS(noise_sigma(cfg, 0.0), ConfigError);
    cfg.cp_overhead = 0.0;
    CHECK_THROWS_AS(noise_sigma(cfg, 1.0), ConfigError);
    cfg = {};
    cfg.bits_per_symbol = 0;
    CHECK_THROWS_AS(noise_sigma(cfg, 1.0), ConfigError);
    cfg = {};
    cfg.ebn0_db = NAN;
    CHECK_THROWS_AS(noise_sigma(cfg, 1.0), ConfigError);
}

TEST_CASE("awgn variance and determinism") {
    const PassbandSignal zero{std::vector<double>(1'000'000), 8e6};
    const auto y = add_awgn(zero, 0.3, 42);
    double mean = 0.0, var = 0.0;
    for (double v : y.samples) mean += v;
    mean /= static_cast<double>(y.samples.size());
    for (double v : y.samples) var += (v - mean) * (v - mean);
    var /= static_cast<double>(y.samples.size());
    CHECK(std::abs(var / 0.09 - 1.0) < 0.01);
    CHECK(std::abs(mean) < 0.003);

    CHECK(add_awgn(zero, 0.3, 42).samples == y.samples);
    CHECK(add_awgn(zero, 0.3, 43).samples != y.samples);
    CHECK(add_awgn(zero, 0.0, 42).samples == zero.samples);
    CHECK_THROWS_AS(add_awgn(zero, -1.0, 1), ConfigError);

    Rng a = make_stream(1, 2), b = make_stream(1, 2), c = make_stream(1, 3);
    CHECK(a() == b());
    CHECK(make_stream(1, 2)() != c());
}

TEST_CASE("prefix energy counted in Eb costs 10 log10(N/(N+cp)) of SNR") {
    // Single-burst link simulation, unclipped QPSK, prefix-penalised calibration.
    ExperimentSpec spec;
    spec.threads = 1;
    const Link link(spec);
    const auto& p = link.params();
    const double overhead = static_cast<double>(p.n_subcarriers) / (p.n_subcarriers + p.cp_len);
    const double ebn0_db = 4.0;
    NoiseConfig cfg{ebn0_db, 2, 1.0 / p.oversample, overhead};

    Rng bit_rng = make_stream(77, 0);
    Rng noise_rng = make_stream(77, 1);
    std::uint64_t errors = 0, total = 0;
    const ModScheme qpsk{Family::Psk, 4};
    while (total < 200000) {
        Bits bits(256);
        for (auto& b : bits) b = static_cast<std::uint8_t>(bit_rng() & 1u);
        const auto body = link.transmit_symbol(map_bits(bits, qpsk));
        const auto burst = link.make_burst(body);
        const double power = 1.0 / p.oversample;
        const auto rx = link.receive_burst(add_awgn(burst, noise_sigma(cfg, power), noise_rng));
        const auto got = demap_symbols(rx, qpsk);
        for (std::size_t i = 0; i < bits.size(); ++i) errors += bits[i] != got[i];
        total += bits.size();
    }
    const double ber = static_cast<double>(errors) / static_cast<double>(total);
    const double theory = 0.5 * std::erfc(std::sqrt(overhead * std::pow(10.0, ebn0_db / 10.0)));
    CHECK(std::abs(ber / theory - 1.0) < 0.15);
}
