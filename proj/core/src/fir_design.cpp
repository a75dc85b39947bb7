#include "ofdmclip/fir_design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ofdmclip/error.hpp"

namespace ofdmclip {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct DenseGrid {
    std::vector<double> freq;
    std::vector<double> x;  // cos(2 pi f)
    std::vector<double> desired;
    std::vector<double> weight;
    std::vector<int> band;
};

DenseGrid make_grid(const FirDesignSpec& spec, int density) {
    double total = 0.0;
    for (const auto& b : spec.bands) total += b.hi - b.lo;
    const double points = static_cast<double>(density) * spec.num_taps;

    DenseGrid g;
    for (std::size_t bi = 0; bi < spec.bands.size(); ++bi) {
        const auto& b = spec.bands[bi];
        const double width = b.hi - b.lo;
        std::size_t n = 1;
        if (width > 0.0) {
            n = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(points * width / total)));
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double f = n == 1 ? b.lo : b.lo + width * static_cast<double>(i) / static_cast<double>(n - 1);
            g.freq.push_back(f);
            g.x.push_back(std::cos(two_pi * f));
            g.desired.push_back(b.desired);
            g.weight.push_back(b.weight);
            g.band.push_back(static_cast<int>(bi));
        }
    }
    return g;
}

// Barycentric weights 1 / prod_{i != j} 2 (x_j - x_i). The factor 2 keeps the
// products in range for the tap counts used here; it cancels in every ratio.
std::vector<double> barycentric_weights(std::span<const double> xs) {
    std::vector<double> w(xs.size(), 1.0);
    for (std::size_t j = 0; j < xs.size(); ++j) {
        double prod = 1.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i != j) prod *= 2.0 * (xs[j] - xs[i]);
        }
        w[j] = 1.0 / prod;
    }
    return w;
}

/// Cosine polynomial through (xs, values), evaluated in barycentric form.
class Interpolant {
public:
    Interpolant() = default;
    Interpolant(std::vector<double> xs, std::vector<double> values)
        : xs_(std::move(xs)), values_(std::move(values)), w_(barycentric_weights(xs_)) {}

    double operator()(double x) const {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t j = 0; j < xs_.size(); ++j) {
            const double diff = x - xs_[j];
            if (diff == 0.0) return values_[j];
            const double t = w_[j] / diff;
            num += t * values_[j];
            den += t;
        }
        return num / den;
    }

private:
    std::vector<double> xs_;
    std::vector<double> values_;
    std::vector<double> w_;
};

struct ExchangeStep {
    double delta = 0.0;
    Interpolant amplitude;
};

ExchangeStep solve_on_extremals(const DenseGrid& g, std::span<const std::size_t> ext) {
    std::vector<double> xs;
    xs.reserve(ext.size());
    for (auto i : ext) xs.push_back(g.x[i]);
    const auto bw = barycentric_weights(xs);

    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < ext.size(); ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        num += bw[j] * g.desired[ext[j]];
        den += sign * bw[j] / g.weight[ext[j]];
    }
    const double delta = num / den;

    // The polynomial has one coefficient fewer than there are extremals, so
    // interpolate through all but the last point.
    std::vector<double> px(xs.begin(), xs.end() - 1);
    std::vector<double> pv;
    pv.reserve(px.size());
    for (std::size_t j = 0; j + 1 < ext.size(); ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        pv.push_back(g.desired[ext[j]] - sign * delta / g.weight[ext[j]]);
    }
    return {delta, Interpolant(std::move(px), std::move(pv))};
}

std::vector<std::size_t> local_extrema(const DenseGrid& g, std::span<const double> err, double floor) {
    std::vector<std::size_t> out;
    const std::size_t n = err.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool has_left = i > 0 && g.band[i - 1] == g.band[i];
        const bool has_right = i + 1 < n && g.band[i + 1] == g.band[i];
        const double e = err[i];
        if (std::abs(e) < floor) continue;
        bool is_peak;
        if (e >= 0.0) {
            is_peak = (!has_left || e > err[i - 1]) && (!has_right || e >= err[i + 1]);
        } else {
            is_peak = (!has_left || e < err[i - 1]) && (!has_right || e <= err[i + 1]);
        }
        if (is_peak) out.push_back(i);
    }
    return out;
}

// Keep the largest of each run of same-signed extrema, then trim from the
// ends (smaller magnitude first) down to `wanted` points.
std::vector<std::size_t> enforce_alternation(std::span<const std::size_t> cand, std::span<const double> err,
                                             std::size_t wanted) {
    std::vector<std::size_t> kept;
    for (auto i : cand) {
        if (!kept.empty() && std::signbit(err[kept.back()]) == std::signbit(err[i])) {
            if (std::abs(err[i]) > std::abs(err[kept.back()])) kept.back() = i;
        } else {
            kept.push_back(i);
        }
    }
    while (kept.size() > wanted) {
        if (std::abs(err[kept.front()]) < std::abs(err[kept.back()])) {
            kept.erase(kept.begin());
        } else {
            kept.pop_back();
        }
    }
    return kept;
}

}  // namespace

void FirDesignSpec::validate() const {
    if (num_taps < 3 || num_taps % 2 == 0) {
        throw ConfigError("num_taps must be odd and >= 3 (got " + std::to_string(num_taps) + ")");
    }
    if (bands.empty()) throw ConfigError("fir design needs at least one band");
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const auto& b = bands[i];
        if (!(b.lo >= 0.0 && b.hi <= 0.5 && b.lo <= b.hi)) {
            throw ConfigError("band " + std::to_string(i) + " edges must satisfy 0 <= lo <= hi <= 0.5");
        }
        if (!(b.weight > 0.0) || !std::isfinite(b.weight)) {
            throw ConfigError("band " + std::to_string(i) + " weight must be positive");
        }
        if (!std::isfinite(b.desired)) {
            throw ConfigError("band " + std::to_string(i) + " desired gain must be finite");
        }
        if (i > 0 && !(b.lo > bands[i - 1].hi)) {
            throw ConfigError("bands must be ascending with a non-empty transition gap before band " +
                              std::to_string(i));
        }
    }
}

FirFilter design_equiripple(const FirDesignSpec& spec, const RemezOptions& options) {
    spec.validate();
    const auto r = static_cast<std::size_t>((spec.num_taps + 1) / 2);
    const std::size_t n_ext = r + 1;

    const DenseGrid g = make_grid(spec, options.grid_density);
    if (g.freq.size() < n_ext) {
        throw ConfigError("design grid has " + std::to_string(g.freq.size()) + " points, need at least " +
                          std::to_string(n_ext));
    }

    std::vector<std::size_t> ext(n_ext);
    for (std::size_t j = 0; j < n_ext; ++j) {
        ext[j] = static_cast<std::size_t>(
            std::lround(static_cast<double>(j) * static_cast<double>(g.freq.size() - 1) / static_cast<double>(r)));
    }

    FirFilter out;
    out.spec = spec;
    std::vector<double> err(g.freq.size());
    ExchangeStep step;
    double prev_delta = 0.0;
    bool converged = false;

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        step = solve_on_extremals(g, ext);
        const double delta = std::abs(step.delta);
        out.ripple_history.push_back(delta);
        out.iterations = iter;

        double max_err = 0.0;
        for (std::size_t i = 0; i < g.freq.size(); ++i) {
            err[i] = g.weight[i] * (g.desired[i] - step.amplitude(g.x[i]));
            max_err = std::max(max_err, std::abs(err[i]));
        }
        if (max_err <= 1e-13) {
            converged = true;
            break;
        }

        auto cand = enforce_alternation(local_extrema(g, err, delta * (1.0 - 1e-9)), err, n_ext);
        if (cand.size() < n_ext) {
            cand = enforce_alternation(local_extrema(g, err, 0.0), err, n_ext);
        }
        const bool stable = cand.size() < n_ext || cand == ext;
        const bool settled = iter > 1 && std::abs(delta - prev_delta) <= options.relative_tolerance * delta &&
                             max_err - delta <= 0.01 * delta;
        if (stable || settled) {
            converged = true;
            break;
        }
        ext = std::move(cand);
        prev_delta = delta;
    }
    if (!converged) {
        throw DesignError("remez exchange did not converge in " + std::to_string(options.max_iterations) +
                              " iterations (last ripple " + std::to_string(out.ripple_history.back()) + ")",
                          out.ripple_history.back());
    }

    out.ripple = std::abs(step.delta);
    for (auto i : ext) out.extremal_freqs.push_back(g.freq[i]);

    // Sample the amplitude on the num_taps-point DFT grid and invert.
    const auto n = static_cast<std::size_t>(spec.num_taps);
    const double center = static_cast<double>(n - 1) / 2.0;
    std::vector<double> amp(n);
    for (std::size_t k = 0; k < n; ++k) {
        amp[k] = step.amplitude(std::cos(two_pi * static_cast<double>(k) / static_cast<double>(n)));
    }
    out.taps.assign(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            acc += amp[k] * std::cos(two_pi * static_cast<double>(k) * (static_cast<double>(m) - center) /
                                     static_cast<double>(n));
        }
        out.taps[m] = acc / static_cast<double>(n);
    }
    for (std::size_t m = 0; m < n / 2; ++m) {
        const double avg = 0.5 * (out.taps[m] + out.taps[n - 1 - m]);
        out.taps[m] = avg;
        out.taps[n - 1 - m] = avg;
    }
    return out;
}

std::vector<Complex> frequency_response(const FirFilter& filter, std::span<const double> grid) {
    std::vector<Complex> out;
    out.reserve(grid.size());
    for (double f : grid) {
        Complex acc = 0.0;
        for (std::size_t n = 0; n < filter.taps.size(); ++n) {
            acc += filter.taps[n] * std::polar(1.0, -two_pi * f * static_cast<double>(n));
        }
        out.push_back(acc);
    }
    return out;
}

std::vector<double> amplitude_response(const FirFilter& filter, std::span<const double> grid) {
    const double center = filter.taps.empty() ? 0.0 : static_cast<double>(filter.taps.size() - 1) / 2.0;
    std::vector<double> out;
    out.reserve(grid.size());
    for (double f : grid) {
        double acc = 0.0;
        for (std::size_t n = 0; n < filter.taps.size(); ++n) {
            acc += filter.taps[n] * std::cos(two_pi * f * (static_cast<double>(n) - center));
        }
        out.push_back(acc);
    }
    return out;
}

}  // namespace ofdmclip
