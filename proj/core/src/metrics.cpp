#include "ofdmclip/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ofdmclip/csv.hpp"
#include "ofdmclip/error.hpp"

namespace ofdmclip {

namespace {

template <typename Power>
double papr_from_powers(std::size_t n, Power power) {
    if (n == 0) throw InputShapeError("papr of an empty signal");
    double peak = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = power(i);
        peak = std::max(peak, p);
        total += p;
    }
    if (!(peak > 0.0)) throw MetricError("papr is undefined for an all-zero signal");
    return 10.0 * std::log10(peak / (total / static_cast<double>(n)));
}

}  // namespace

double papr_db(std::span<const double> samples) {
    return papr_from_powers(samples.size(), [&](std::size_t i) { return samples[i] * samples[i]; });
}

double papr_db(std::span<const Complex> samples) {
    return papr_from_powers(samples.size(), [&](std::size_t i) { return std::norm(samples[i]); });
}

CcdfCurve estimate_ccdf(std::span<const double> papr_values, std::span<const double> thresholds_db) {
    if (papr_values.empty()) throw InputShapeError("ccdf needs at least one sample");
    if (!std::is_sorted(thresholds_db.begin(), thresholds_db.end())) {
        throw InputShapeError("ccdf thresholds must be ascending");
    }
    std::vector<double> sorted(papr_values.begin(), papr_values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());

    CcdfCurve curve;
    curve.sample_count = sorted.size();
    curve.thresholds_db.assign(thresholds_db.begin(), thresholds_db.end());
    curve.prob_exceed.reserve(thresholds_db.size());
    for (double t : thresholds_db) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
        curve.prob_exceed.push_back(static_cast<double>(above) / n);
    }
    return curve;
}

std::vector<double> threshold_grid(double lo_db, double hi_db, double step_db) {
    if (!(step_db > 0.0) || !(hi_db >= lo_db)) throw InputShapeError("threshold grid needs step > 0 and hi >= lo");
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::ceil((hi_db - lo_db) / step_db - 1e-9)) + 1;
    out.reserve(count);
    // Multiply rather than accumulate so grid points do not drift.
    for (std::size_t i = 0; i < count; ++i) out.push_back(lo_db + step_db * static_cast<double>(i));
    return out;
}

double ccdf_quantile(const CcdfCurve& curve, double p) {
    const auto& t = curve.thresholds_db;
    const auto& q = curve.prob_exceed;
    if (t.empty() || t.size() != q.size()) throw InputShapeError("ccdf curve is empty or malformed");
    const double hi = q.front();
    const double lo = q.back();
    if (!(p > 0.0 && p < 1.0) || p < lo || p > hi) {
        throw OutOfRangeError("ccdf read point " + std::to_string(p) + " outside the resolved range [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    std::size_t i = 0;
    while (q[i] > p) ++i;
    if (i == 0 || q[i] == p) return t[i];
    const double frac = (q[i - 1] - p) / (q[i - 1] - q[i]);
    return t[i - 1] + frac * (t[i] - t[i - 1]);
}

BerPoint count_bit_errors(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits) {
    if (tx_bits.size() != rx_bits.size()) {
        throw InputShapeError("bit sequences differ in length (" + std::to_string(tx_bits.size()) + " vs " +
                              std::to_string(rx_bits.size()) + ")");
    }
    if (tx_bits.empty()) throw InputShapeError("bit error count needs a non-empty sequence");
    BerPoint out;
    out.bits_total = tx_bits.size();
    for (std::size_t i = 0; i < tx_bits.size(); ++i) out.bit_errors += ((tx_bits[i] ^ rx_bits[i]) & 1u);
    return out;
}

void write_ccdf_csv(const CcdfCurve& curve, const std::filesystem::path& path) {
    csv::Table t{{"threshold_db", "value", "sample_count"}, {}};
    for (std::size_t i = 0; i < curve.thresholds_db.size(); ++i) {
        t.rows.push_back({csv::format(curve.thresholds_db[i]), csv::format(curve.prob_exceed[i]),
                          csv::format(static_cast<long long>(curve.sample_count))});
    }
    csv::write(t, path);
}

void write_ber_csv(std::span<const BerPoint> points, const std::filesystem::path& path) {
    csv::Table t{{"ebn0_db", "value", "sample_count"}, {}};
    for (const auto& p : points) {
        t.rows.push_back({csv::format(p.ebn0_db), csv::format(p.ber()),
                          csv::format(static_cast<long long>(p.bits_total))});
    }
    csv::write(t, path);
}

}  // namespace ofdmclip
