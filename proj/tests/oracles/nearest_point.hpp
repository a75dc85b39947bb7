#pragma once

// Exhaustive nearest-point hard decision: tabulate every distance, take the
// first minimum.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include "ofdmclip/constellation.hpp"

namespace oracle {

inline std::vector<std::uint8_t> nearest_point_bits(const std::vector<std::complex<double>>& symbols,
                                                    const ofdmclip::ConstellationTable& table) {
    std::vector<std::uint8_t> bits;
    std::vector<double> dist(table.points.size());
    for (const auto& y : symbols) {
        for (std::size_t i = 0; i < table.points.size(); ++i) {
            const auto d = y - table.points[i];
            dist[i] = d.real() * d.real() + d.imag() * d.imag();
        }
        const auto idx = static_cast<std::size_t>(std::min_element(dist.begin(), dist.end()) - dist.begin());
        for (int b = table.bits_per_symbol - 1; b >= 0; --b) {
            bits.push_back(static_cast<std::uint8_t>((table.labels[idx] >> b) & 1u));
        }
    }
    return bits;
}

}  // namespace oracle
