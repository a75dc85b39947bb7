#pragma once

#include <span>
#include <vector>

#include "ofdmclip/types.hpp"

namespace ofdmclip {

/// One approximation band. Edges are normalized to the sample rate, [0, 0.5].
struct Band {
    double lo = 0.0;
    double hi = 0.5;
    double desired = 1.0;
    double weight = 1.0;
};

/// Type-I (odd length, symmetric) equiripple design request.
struct FirDesignSpec {
    int num_taps = 31;
    std::vector<Band> bands;

    /// Throws ConfigError unless num_taps is odd and >= 3 and the bands are
    /// ascending, inside [0, 0.5], separated by non-empty gaps, with positive
    /// weights.
    void validate() const;
};

struct FirFilter {
    std::vector<double> taps;
    FirDesignSpec spec;
    /// Achieved weighted Chebyshev error on the design grid.
    double ripple = 0.0;
    int iterations = 0;
    /// Final extremal set, normalized frequency.
    std::vector<double> extremal_freqs;
    /// |delta| after each exchange iteration.
    std::vector<double> ripple_history;

    std::size_t group_delay() const { return (taps.size() - 1) / 2; }
};

struct RemezOptions {
    int grid_density = 16;
    int max_iterations = 50;
    double relative_tolerance = 1e-6;
};

/// Parks-McClellan design: minimizes max_f W(f)|D(f) - A(f)| over the bands.
/// Throws DesignError (carrying the last ripple) if the exchange does not
/// settle within max_iterations.
FirFilter design_equiripple(const FirDesignSpec& spec, const RemezOptions& options = {});

/// H(f) = sum_n h[n] e^{-j2pi f n} on normalized frequencies.
std::vector<Complex> frequency_response(const FirFilter& filter, std::span<const double> grid);

/// Zero-phase amplitude A(f) = H(f) e^{+j2pi f D}, D the group delay. Real for
/// symmetric taps; may be negative in stopbands.
std::vector<double> amplitude_response(const FirFilter& filter, std::span<const double> grid);

}  // namespace ofdmclip
