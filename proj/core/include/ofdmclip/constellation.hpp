#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ofdmclip/types.hpp"

namespace ofdmclip {

enum class Family { Psk, Qam };

/// Modulation family plus order. QPSK is (Psk, 4); plain "QAM" is (Qam, 4).
struct ModScheme {
    Family family = Family::Psk;
    int order = 4;

    int bits_per_symbol() const;

    /// Config-file name: "qpsk", "qam", "8psk", "8qam", ...
    std::string name() const;

    /// Inverse of name(); throws ConfigError for unknown strings.
    static ModScheme parse(std::string_view text);

    friend bool operator==(const ModScheme&, const ModScheme&) = default;
};

/// The eight schemes compared in the experiments, in reporting order.
std::vector<ModScheme> all_schemes();

/// Points and their bit labels. labels[i] is the log2(M)-bit pattern of
/// points[i], MSB first.
struct ConstellationTable {
    std::vector<Complex> points;
    std::vector<std::uint32_t> labels;
    int bits_per_symbol = 0;
};

/// Unit average energy table. PSK orders are Gray labeled around the
/// circle; square QAM is Gray per axis; 8-QAM is a 4x2 rectangle and 32-QAM
/// the 6x6 cross without corners.
const ConstellationTable& constellation_points(ModScheme scheme);

std::vector<Complex> map_bits(std::span<const std::uint8_t> bits, ModScheme scheme);

/// Hard decision: each symbol becomes the label of the nearest table point,
/// ties resolved to the lowest table index.
Bits demap_symbols(std::span<const Complex> symbols, ModScheme scheme);

}  // namespace ofdmclip
