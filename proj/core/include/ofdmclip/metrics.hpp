#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ofdmclip/types.hpp"

namespace ofdmclip {

/// Empirical P(PAPR > threshold).
struct CcdfCurve {
    std::vector<double> thresholds_db;
    std::vector<double> prob_exceed;
    std::size_t sample_count = 0;
};

struct BerPoint {
    double ebn0_db = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits_total = 0;

    double ber() const { return bits_total == 0 ? 0.0 : static_cast<double>(bit_errors) / static_cast<double>(bits_total); }
};

/// 10 log10(max |x|^2 / mean |x|^2) over the given samples.
/// Throws MetricError for an all-zero signal, InputShapeError for empty input.
double papr_db(std::span<const double> samples);
double papr_db(std::span<const Complex> samples);
inline double papr_db(const PassbandSignal& s) { return papr_db(std::span<const double>(s.samples)); }
inline double papr_db(const BasebandSignal& s) { return papr_db(std::span<const Complex>(s.samples)); }

/// prob_exceed[i] = fraction of values strictly greater than thresholds[i].
CcdfCurve estimate_ccdf(std::span<const double> papr_values, std::span<const double> thresholds_db);

/// Ascending grid lo, lo+step, ... covering hi.
std::vector<double> threshold_grid(double lo_db, double hi_db, double step_db);

/// Smallest threshold whose exceedance is <= p, interpolated linearly between
/// the bracketing grid points. Throws OutOfRangeError if p is not inside the
/// range the curve resolves.
double ccdf_quantile(const CcdfCurve& curve, double p);

/// Hamming distance between equal-length bit sequences.
BerPoint count_bit_errors(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits);

/// CSV with columns threshold_db,value,sample_count.
void write_ccdf_csv(const CcdfCurve& curve, const std::filesystem::path& path);

/// CSV with columns ebn0_db,value,sample_count (sample_count = bits).
void write_ber_csv(std::span<const BerPoint> points, const std::filesystem::path& path);

}  // namespace ofdmclip
