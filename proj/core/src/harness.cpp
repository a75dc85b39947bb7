#include "ofdmclip/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <thread>

#include "ofdmclip/csv.hpp"
#include "ofdmclip/error.hpp"

namespace ofdmclip {

namespace {

// Stream indices; the scheme id comes from its slot in all_schemes() so a
// scheme's draws do not depend on which other schemes are in the run.
constexpr std::uint64_t papr_stream_base = 0;
constexpr std::uint64_t ber_bits_stream_base = 1000;
constexpr std::uint64_t ber_noise_stream_base = 1'000'000;

std::uint64_t scheme_id(ModScheme s) {
    const auto all = all_schemes();
    return static_cast<std::uint64_t>(std::find(all.begin(), all.end(), s) - all.begin());
}

void run_parallel(std::size_t tasks, int threads, const std::function<void(std::size_t)>& body) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, tasks);
    std::vector<std::exception_ptr> errors(tasks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

[[noreturn]] void rethrow_with_context(const std::string& context) {
    try {
        throw;
    } catch (const std::exception& e) {
        throw ExperimentError(context + ": " + e.what());
    }
}

Bits draw_bits(Rng& rng, std::size_t count) {
    Bits bits(count);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 64 == 0) word = rng();
        bits[i] = static_cast<std::uint8_t>(word & 1u);
        word >>= 1;
    }
    return bits;
}

std::optional<ModScheme> partner(ModScheme s) {
    return ModScheme{s.family == Family::Psk ? Family::Qam : Family::Psk, s.order};
}

std::string cr_label(double cr) { return "cr" + csv::format(cr); }

std::string kind_label(CurveKind k) {
    switch (k) {
        case CurveKind::UnclippedBaseband: return "unclipped_baseband";
        case CurveKind::UnclippedPassband: return "unclipped_passband";
        case CurveKind::ClippedFiltered: return "clipped_filtered";
    }
    return "unknown";
}

std::string opt(const std::optional<double>& v) { return v ? csv::format(*v) : std::string(); }

}  // namespace

void ExperimentSpec::validate() const {
    params.validate();
    if (schemes.empty()) throw ConfigError("schemes must not be empty");
    for (const auto& s : schemes) {
        (void)s.bits_per_symbol();
        if (std::count(schemes.begin(), schemes.end(), s) > 1) {
            throw ConfigError("schemes lists '" + s.name() + "' more than once");
        }
    }
    if (cr_values.empty()) throw ConfigError("cr_values must not be empty");
    for (double cr : cr_values) {
        if (!(cr > 0.0) || !std::isfinite(cr)) throw ConfigError("cr_values must be positive");
    }
    if (n_symbols < 1000) throw ConfigError("n_symbols must be >= 1000 for CCDF estimation");
    if (!(ccdf_read_point > 0.0 && ccdf_read_point < 1.0)) {
        throw ConfigError("ccdf_read_point must lie in (0, 1)");
    }
    if (ccdf_read_point * n_symbols < 1.0) {
        throw ConfigError("ccdf_read_point * n_symbols must be >= 1 so the read point is resolved");
    }
    if (!(ccdf_step_db > 0.0)) throw ConfigError("ccdf_step_db must be positive");
    if (ebn0_grid.empty()) throw ConfigError("ebn0_db must not be empty");
    for (double e : ebn0_grid) {
        if (std::isnan(e) || e == -INFINITY) throw ConfigError("ebn0_db values must be finite or +inf");
    }
    if (bits_per_point < 1) throw ConfigError("bits_per_point must be positive");
    if (threads < 0) throw ConfigError("threads must be >= 0");
    hpf_spec().validate();
    const auto lpf = lpf_spec();
    lpf.validate();
    if (params.cp_samples() < static_cast<std::size_t>(lpf.num_taps - 1)) {
        throw ConfigError("fir.lpf_taps - 1 must not exceed cp_len * oversample (the receiver window advance "
                          "needs the whole filter span inside the prefix)");
    }
}

FirDesignSpec ExperimentSpec::hpf_spec() const {
    if (fir.hpf_bands) return FirDesignSpec{fir.hpf_taps, *fir.hpf_bands};
    return default_hpf_spec(params, fir.hpf_taps);
}

FirDesignSpec ExperimentSpec::lpf_spec() const {
    if (fir.lpf_bands) return FirDesignSpec{fir.lpf_taps, *fir.lpf_bands};
    return default_image_reject_spec(params, fir.lpf_taps);
}

Link::Link(const ExperimentSpec& spec)
    : params_(spec.params),
      hpf_(design_equiripple(spec.hpf_spec())),
      lpf_(design_equiripple(spec.lpf_spec())),
      composed_(spec.params, hpf_) {}

BasebandSignal Link::baseband_symbol(std::span<const Complex> symbols) const {
    FreqFrame frame{{symbols.begin(), symbols.end()}};
    return ofdm_modulate(oversample_extend(frame, params_.oversample), params_);
}

PassbandSignal Link::transmit_symbol(std::span<const Complex> symbols) const {
    return upconvert(baseband_symbol(symbols), params_.carrier_hz, params_);
}

PassbandSignal Link::clip_and_filter(const PassbandSignal& body, double amplitude) const {
    return composed_(clip_passband(body, amplitude));
}

PassbandSignal Link::make_burst(const PassbandSignal& body) const {
    return add_cyclic_prefix(body, params_.cp_samples());
}

std::vector<Complex> Link::receive_burst(const PassbandSignal& burst) const {
    const auto start = -static_cast<long>(params_.cp_samples());
    const auto baseband = downconvert(burst, params_.carrier_hz, params_, lpf_, start);
    return ofdm_demodulate(symbol_window(baseband, params_, lpf_.group_delay()), params_);
}

PaprResult run_papr_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const Link link(spec);
    const auto& params = spec.params;
    const auto n_cr = spec.cr_values.size();

    struct SchemeOutput {
        std::vector<PaprRow> rows;
        std::vector<PaprCurve> curves;
    };
    std::vector<SchemeOutput> outputs(spec.schemes.size());

    run_parallel(spec.schemes.size(), spec.threads, [&](std::size_t si) {
        const ModScheme scheme = spec.schemes[si];
        try {
            const std::size_t bits_per_frame =
                static_cast<std::size_t>(params.n_subcarriers) * static_cast<std::size_t>(scheme.bits_per_symbol());
            auto frame_at = [&](Rng& rng) {
                const auto symbols = map_bits(draw_bits(rng, bits_per_frame), scheme);
                return link.baseband_symbol(symbols);
            };
            const auto n = static_cast<std::size_t>(spec.n_symbols);

            // Pass 1: unclipped statistics and the batch RMS.
            std::vector<double> papr_bb(n), papr_pb(n);
            double energy = 0.0;
            {
                Rng rng = make_stream(spec.seed, papr_stream_base + scheme_id(scheme));
                for (std::size_t f = 0; f < n; ++f) {
                    const auto bb = frame_at(rng);
                    const auto pb = upconvert(bb, params.carrier_hz, params);
                    papr_bb[f] = papr_db(bb);
                    papr_pb[f] = papr_db(pb);
                    for (double s : pb.samples) energy += s * s;
                }
            }
            const double sigma = std::sqrt(energy / static_cast<double>(n * params.fft_size()));

            // Pass 2: the same frames, clipped and filtered at every CR.
            std::vector<std::vector<double>> papr_cf(n_cr, std::vector<double>(n));
            std::vector<std::size_t> regrowth(n_cr, 0);
            std::vector<double> amplitude(n_cr);
            for (std::size_t c = 0; c < n_cr; ++c) amplitude[c] = ClipConfig(spec.cr_values[c], sigma).amplitude();
            {
                Rng rng = make_stream(spec.seed, papr_stream_base + scheme_id(scheme));
                for (std::size_t f = 0; f < n; ++f) {
                    const auto pb = upconvert(frame_at(rng), params.carrier_hz, params);
                    for (std::size_t c = 0; c < n_cr; ++c) {
                        const auto out = link.clip_and_filter(pb, amplitude[c]);
                        papr_cf[c][f] = papr_db(out);
                        double peak = 0.0;
                        for (double s : out.samples) peak = std::max(peak, std::abs(s));
                        if (peak > amplitude[c]) ++regrowth[c];
                    }
                }
            }

            auto curve_of = [&](const std::vector<double>& values) {
                const double hi = *std::max_element(values.begin(), values.end());
                return estimate_ccdf(values, threshold_grid(0.0, hi + spec.ccdf_step_db, spec.ccdf_step_db));
            };
            auto& out = outputs[si];
            const auto bb_curve = curve_of(papr_bb);
            const auto pb_curve = curve_of(papr_pb);
            const double q_bb = ccdf_quantile(bb_curve, spec.ccdf_read_point);
            const double q_pb = ccdf_quantile(pb_curve, spec.ccdf_read_point);
            out.curves.push_back({scheme, CurveKind::UnclippedBaseband, std::nullopt, bb_curve});
            out.curves.push_back({scheme, CurveKind::UnclippedPassband, std::nullopt, pb_curve});
            for (std::size_t c = 0; c < n_cr; ++c) {
                const auto curve = curve_of(papr_cf[c]);
                PaprRow row;
                row.scheme = scheme;
                row.cr = spec.cr_values[c];
                row.sigma = sigma;
                row.papr_db_clipped_filtered = ccdf_quantile(curve, spec.ccdf_read_point);
                row.papr_db_unclipped = q_pb;
                row.papr_db_unclipped_baseband = q_bb;
                row.peak_regrowth_fraction = static_cast<double>(regrowth[c]) / static_cast<double>(n);
                out.rows.push_back(row);
                out.curves.push_back({scheme, CurveKind::ClippedFiltered, spec.cr_values[c], curve});
            }
        } catch (...) {
            rethrow_with_context("papr experiment, scheme " + scheme.name());
        }
    });

    PaprResult result;
    for (auto& o : outputs) {
        result.rows.insert(result.rows.end(), o.rows.begin(), o.rows.end());
        result.curves.insert(result.curves.end(), o.curves.begin(), o.curves.end());
    }
    for (auto& row : result.rows) {
        const auto other = partner(row.scheme);
        auto it = std::find_if(result.rows.begin(), result.rows.end(),
                               [&](const PaprRow& r) { return r.scheme == *other && r.cr == row.cr; });
        if (it == result.rows.end()) continue;
        const bool psk = row.scheme.family == Family::Psk;
        const double psk_v = psk ? row.papr_db_clipped_filtered : it->papr_db_clipped_filtered;
        const double qam_v = psk ? it->papr_db_clipped_filtered : row.papr_db_clipped_filtered;
        row.difference_db = psk_v - qam_v;
    }
    return result;
}

std::vector<BerRow> run_ber_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const Link link(spec);
    const auto& params = spec.params;
    const std::size_t n_modes = spec.cr_values.size() + (spec.include_unclipped ? 1 : 0);
    std::vector<std::vector<BerRow>> outputs(spec.schemes.size());

    run_parallel(spec.schemes.size(), spec.threads, [&](std::size_t si) {
        const ModScheme scheme = spec.schemes[si];
        std::string context = "ber experiment, scheme " + scheme.name();
        try {
            const int bps = scheme.bits_per_symbol();
            const std::size_t bits_per_frame = static_cast<std::size_t>(params.n_subcarriers) * static_cast<std::size_t>(bps);
            const std::size_t n_frames =
                (static_cast<std::size_t>(spec.bits_per_point) + bits_per_frame - 1) / bits_per_frame;

            Rng bit_rng = make_stream(spec.seed, ber_bits_stream_base + scheme_id(scheme));
            std::vector<Bits> tx_bits(n_frames);
            std::vector<PassbandSignal> bodies(n_frames);
            double energy = 0.0;
            for (std::size_t f = 0; f < n_frames; ++f) {
                tx_bits[f] = draw_bits(bit_rng, bits_per_frame);
                bodies[f] = link.transmit_symbol(map_bits(tx_bits[f], scheme));
                for (double s : bodies[f].samples) energy += s * s;
            }
            const double total_samples = static_cast<double>(n_frames * params.fft_size());
            const double sigma = std::sqrt(energy / total_samples);

            NoiseConfig noise;
            noise.bits_per_symbol = bps;
            noise.occupied_fraction = 1.0 / params.oversample;
            noise.cp_overhead = spec.eb_includes_cp
                                    ? static_cast<double>(params.n_subcarriers) / (params.n_subcarriers + params.cp_len)
                                    : 1.0;

            for (std::size_t mode = 0; mode < n_modes; ++mode) {
                const bool clipped = mode < spec.cr_values.size();
                const std::optional<double> cr = clipped ? std::optional(spec.cr_values[mode]) : std::nullopt;
                context = "ber experiment, scheme " + scheme.name() + ", cr " + (cr ? csv::format(*cr) : "unclipped");

                std::vector<PassbandSignal> bursts(n_frames);
                double tx_energy = 0.0;
                for (std::size_t f = 0; f < n_frames; ++f) {
                    const auto body =
                        clipped ? link.clip_and_filter(bodies[f], ClipConfig(*cr, sigma).amplitude()) : bodies[f];
                    for (double s : body.samples) tx_energy += s * s;
                    bursts[f] = link.make_burst(body);
                }
                const double tx_power = tx_energy / total_samples;

                // Clipping scales the wanted symbols by a deterministic gain
                // (Bussgang); calibrate it once per batch on the noiseless link.
                double gain_num = 0.0;
                double gain_den = 0.0;
                for (std::size_t f = 0; clipped && f < n_frames; ++f) {
                    const auto tx = map_bits(tx_bits[f], scheme);
                    const auto rx = link.receive_burst(bursts[f]);
                    for (std::size_t k = 0; k < tx.size(); ++k) {
                        gain_num += (rx[k] * std::conj(tx[k])).real();
                        gain_den += std::norm(tx[k]);
                    }
                }
                const double rx_gain = clipped ? gain_num / gain_den : 1.0;

                for (std::size_t e = 0; e < spec.ebn0_grid.size(); ++e) {
                    noise.ebn0_db = spec.ebn0_grid[e];
                    const double sigma_n = noise_sigma(noise, tx_power);
                    Rng noise_rng = make_stream(
                        spec.seed, ber_noise_stream_base + scheme_id(scheme) * 10000 + mode * 100 + e);
                    BerRow row;
                    row.scheme = scheme;
                    row.cr = cr;
                    row.ebn0_db = spec.ebn0_grid[e];
                    row.rx_gain = rx_gain;
                    for (std::size_t f = 0; f < n_frames; ++f) {
                        auto rx = link.receive_burst(add_awgn(bursts[f], sigma_n, noise_rng));
                        for (auto& y : rx) y /= rx_gain;
                        const auto count = count_bit_errors(tx_bits[f], demap_symbols(rx, scheme));
                        row.bit_errors += count.bit_errors;
                        row.bits_total += count.bits_total;
                    }
                    row.ber = static_cast<double>(row.bit_errors) / static_cast<double>(row.bits_total);
                    outputs[si].push_back(row);
                }
            }
        } catch (...) {
            rethrow_with_context(context);
        }
    });

    std::vector<BerRow> rows;
    for (auto& o : outputs) rows.insert(rows.end(), o.begin(), o.end());
    for (auto& row : rows) {
        const auto other = partner(row.scheme);
        auto it = std::find_if(rows.begin(), rows.end(), [&](const BerRow& r) {
            return r.scheme == *other && r.cr == row.cr && r.ebn0_db == row.ebn0_db;
        });
        if (it == rows.end()) continue;
        const bool psk = row.scheme.family == Family::Psk;
        row.difference = psk ? row.ber - it->ber : it->ber - row.ber;
    }
    return rows;
}

void emit_csv(std::span<const PaprRow> rows, const std::filesystem::path& path) {
    csv::Table t{{"scheme", "cr", "sigma", "papr_db_clipped_filtered", "papr_db_unclipped",
                  "papr_db_unclipped_baseband", "peak_regrowth_fraction", "difference_db"},
                 {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.scheme.name(), csv::format(r.cr), csv::format(r.sigma),
                          csv::format(r.papr_db_clipped_filtered), csv::format(r.papr_db_unclipped),
                          csv::format(r.papr_db_unclipped_baseband), csv::format(r.peak_regrowth_fraction),
                          opt(r.difference_db)});
    }
    csv::write(t, path);
}

void emit_csv(std::span<const BerRow> rows, const std::filesystem::path& path) {
    csv::Table t{{"scheme", "mode", "cr", "ebn0_db", "bit_errors", "bits_total", "ber", "rx_gain", "difference"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.scheme.name(), r.cr ? "clipped_filtered" : "unclipped", opt(r.cr), csv::format(r.ebn0_db),
                          csv::format(static_cast<long long>(r.bit_errors)),
                          csv::format(static_cast<long long>(r.bits_total)), csv::format(r.ber), csv::format(r.rx_gain),
                          opt(r.difference)});
    }
    csv::write(t, path);
}

void emit_papr_outputs(const PaprResult& result, const std::filesystem::path& dir) {
    emit_csv(result.rows, dir / "papr_table.csv");

    csv::Table cmp{{"cr", "order", "psk_scheme", "qam_scheme", "psk_papr_db", "qam_papr_db", "difference_db"}, {}};
    for (const auto& r : result.rows) {
        if (r.scheme.family != Family::Psk || !r.difference_db) continue;
        const ModScheme qam{Family::Qam, r.scheme.order};
        cmp.rows.push_back({csv::format(r.cr), csv::format(static_cast<long long>(r.scheme.order)), r.scheme.name(),
                            qam.name(), csv::format(r.papr_db_clipped_filtered),
                            csv::format(r.papr_db_clipped_filtered - *r.difference_db), csv::format(*r.difference_db)});
    }
    csv::write(cmp, dir / "papr_comparison.csv");

    for (const auto& c : result.curves) {
        std::string name = "ccdf_" + c.scheme.name() + "_" + kind_label(c.kind);
        if (c.cr) name += "_" + cr_label(*c.cr);
        write_ccdf_csv(c.curve, dir / (name + ".csv"));
    }
}

void emit_ber_outputs(std::span<const BerRow> rows, const std::filesystem::path& dir) {
    emit_csv(rows, dir / "ber_table.csv");

    csv::Table cmp{{"cr", "ebn0_db", "order", "psk_scheme", "qam_scheme", "psk_ber", "qam_ber", "difference"}, {}};
    for (const auto& r : rows) {
        if (r.scheme.family != Family::Psk || !r.difference) continue;
        const ModScheme qam{Family::Qam, r.scheme.order};
        cmp.rows.push_back({opt(r.cr), csv::format(r.ebn0_db), csv::format(static_cast<long long>(r.scheme.order)),
                            r.scheme.name(), qam.name(), csv::format(r.ber), csv::format(r.ber - *r.difference),
                            csv::format(*r.difference)});
    }
    csv::write(cmp, dir / "ber_comparison.csv");

    // Curves: group consecutive rows of one (scheme, cr).
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        std::vector<BerPoint> pts;
        while (j < rows.size() && rows[j].scheme == rows[i].scheme && rows[j].cr == rows[i].cr) {
            pts.push_back({rows[j].ebn0_db, rows[j].bit_errors, rows[j].bits_total});
            ++j;
        }
        const std::string name =
            "ber_" + rows[i].scheme.name() + "_" + (rows[i].cr ? cr_label(*rows[i].cr) : std::string("unclipped"));
        write_ber_csv(pts, dir / (name + ".csv"));
        i = j;
    }
}

}  // namespace ofdmclip
