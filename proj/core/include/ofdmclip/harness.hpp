#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "ofdmclip/channel.hpp"
#include "ofdmclip/clip_filter.hpp"
#include "ofdmclip/constellation.hpp"
#include "ofdmclip/fir_design.hpp"
#include "ofdmclip/metrics.hpp"
#include "ofdmclip/ofdm.hpp"

namespace ofdmclip {

struct FirSettings {
    int hpf_taps = 71;
    /// Overrides the default HPF band plan when set.
    std::optional<std::vector<Band>> hpf_bands;
    int lpf_taps = 31;
    std::optional<std::vector<Band>> lpf_bands;
};

struct ExperimentSpec {
    OfdmParams params;
    std::vector<ModScheme> schemes = all_schemes();
    std::vector<double> cr_values{0.8, 1.0, 1.2, 1.4, 1.6};

    // PAPR experiment
    int n_symbols = 10000;
    double ccdf_read_point = 1e-3;
    double ccdf_step_db = 0.01;

    // BER experiment
    std::vector<double> ebn0_grid{0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
    std::int64_t bits_per_point = 200000;
    /// Also simulate the link without clipping or filtering.
    bool include_unclipped = true;
    /// Count prefix energy in Eb (cp_overhead = N/(N+cp)); otherwise Eb is
    /// the energy inside the FFT window.
    bool eb_includes_cp = false;

    std::uint64_t seed = 1;
    /// Worker threads; 0 picks the hardware concurrency.
    int threads = 0;
    FirSettings fir;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    FirDesignSpec hpf_spec() const;
    FirDesignSpec lpf_spec() const;
};

/// Transmit/receive chain with its filters designed once.
class Link {
public:
    explicit Link(const ExperimentSpec& spec);

    const OfdmParams& params() const { return params_; }
    const FirFilter& hpf() const { return hpf_; }
    const FirFilter& lpf() const { return lpf_; }

    /// N data symbols -> oversampled passband symbol (N*L samples, no prefix).
    PassbandSignal transmit_symbol(std::span<const Complex> symbols) const;
    /// Baseband counterpart of transmit_symbol.
    BasebandSignal baseband_symbol(std::span<const Complex> symbols) const;
    /// Clip at `amplitude` then run the composed filter.
    PassbandSignal clip_and_filter(const PassbandSignal& body, double amplitude) const;
    /// Prefix + body, ready for the channel.
    PassbandSignal make_burst(const PassbandSignal& body) const;
    /// Downconvert one received burst and return the N demodulated symbols.
    std::vector<Complex> receive_burst(const PassbandSignal& burst) const;

private:
    OfdmParams params_;
    FirFilter hpf_;
    FirFilter lpf_;
    ComposedFilter composed_;
};

enum class CurveKind { UnclippedBaseband, UnclippedPassband, ClippedFiltered };

struct PaprCurve {
    ModScheme scheme;
    CurveKind kind = CurveKind::ClippedFiltered;
    /// Set for ClippedFiltered curves.
    std::optional<double> cr;
    CcdfCurve curve;
};

struct PaprRow {
    ModScheme scheme;
    double cr = 0.0;
    /// RMS of the unclipped passband batch; A = cr * sigma.
    double sigma = 0.0;
    double papr_db_clipped_filtered = 0.0;
    double papr_db_unclipped = 0.0;
    double papr_db_unclipped_baseband = 0.0;
    /// Fraction of symbols whose filtered peak exceeds A.
    double peak_regrowth_fraction = 0.0;
    /// PSK minus QAM of the same order, when both are in the run.
    std::optional<double> difference_db;
};

struct PaprResult {
    std::vector<PaprRow> rows;
    std::vector<PaprCurve> curves;
};

struct BerRow {
    ModScheme scheme;
    /// Empty for the unclipped baseline.
    std::optional<double> cr;
    double ebn0_db = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits_total = 0;
    double ber = 0.0;
    /// Receiver amplitude correction: least-squares gain between sent and
    /// noiselessly received symbols of this batch (1 when unclipped).
    double rx_gain = 1.0;
    std::optional<double> difference;
};

PaprResult run_papr_experiment(const ExperimentSpec& spec);
std::vector<BerRow> run_ber_experiment(const ExperimentSpec& spec);

/// papr_table.csv, papr_comparison.csv and one ccdf_*.csv per curve.
void emit_papr_outputs(const PaprResult& result, const std::filesystem::path& dir);
/// ber_table.csv, ber_comparison.csv and one ber_*.csv curve per (scheme, cr).
void emit_ber_outputs(std::span<const BerRow> rows, const std::filesystem::path& dir);

void emit_csv(std::span<const PaprRow> rows, const std::filesystem::path& path);
void emit_csv(std::span<const BerRow> rows, const std::filesystem::path& path);

}  // namespace ofdmclip
