// ofdmclip: run PAPR / BER experiments for clipping + composed filtering.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error, 3 I/O error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ofdmclip/config.hpp"
#include "ofdmclip/error.hpp"
#include "ofdmclip/harness.hpp"

namespace {

using namespace ofdmclip;

void print_papr(const PaprResult& r, double read_point) {
    std::printf("PAPR at CCDF %g (dB)\n", read_point);
    std::printf("%-7s %6s %10s %10s %10s %8s\n", "scheme", "cr", "clip+filt", "unclipped", "diff", "regrowth");
    for (const auto& row : r.rows) {
        std::printf("%-7s %6.2f %10.3f %10.3f %10s %8.3f\n", row.scheme.name().c_str(), row.cr,
                    row.papr_db_clipped_filtered, row.papr_db_unclipped,
                    row.difference_db ? std::to_string(row.difference_db.value()).c_str() : "-",
                    row.peak_regrowth_fraction);
    }
}

void print_ber(const std::vector<BerRow>& rows) {
    std::printf("BER\n%-7s %10s %8s %12s %12s\n", "scheme", "cr", "Eb/N0", "ber", "diff");
    for (const auto& row : rows) {
        std::printf("%-7s %10s %8.2f %12.5g %12s\n", row.scheme.name().c_str(),
                    row.cr ? std::to_string(*row.cr).substr(0, 4).c_str() : "unclipped", row.ebn0_db, row.ber,
                    row.difference ? std::to_string(*row.difference).c_str() : "-");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"OFDM clipping and composed-filter PAPR/BER simulator"};
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string kind;
    bool quiet = false;
    bool verbose = false;
    app.add_option("-c,--config", config_path, "YAML run configuration (defaults if omitted)");
    app.add_option("-o,--output-dir", out_dir, "Output directory (overrides output_dir)");
    app.add_option("-s,--seed", seed, "Master seed (overrides seed)");
    app.add_option("-k,--kind", kind, "Experiment kind: papr, ber or both")
        ->check(CLI::IsMember({"papr", "ber", "both"}));
    auto* q = app.add_flag("-q,--quiet", quiet, "Print nothing on success");
    app.add_flag("-v,--verbose", verbose, "Print configuration and timing")->excludes(q);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    RunConfig cfg;
    try {
        cfg = config_path.empty() ? parse_config_text("") : parse_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (seed) cfg.spec.seed = *seed;
        if (!kind.empty()) cfg.kind = parse_experiment_kind(kind);
        if (quiet) cfg.verbosity = Verbosity::Quiet;
        if (verbose) cfg.verbosity = Verbosity::Verbose;
        cfg.validate();
    } catch (const Error& e) {
        std::cerr << "ofdmclip: config error: " << e.what() << "\n";
        return 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::optional<PaprResult> papr;
    std::optional<std::vector<BerRow>> ber;
    try {
        if (cfg.verbosity == Verbosity::Verbose) {
            const auto& p = cfg.spec.params;
            std::printf("N=%d L=%d BW=%g Hz fc=%g Hz fs=%g Hz cp=%d seed=%llu kind=%s\n", p.n_subcarriers,
                        p.oversample, p.bandwidth_hz, p.carrier_hz, p.sample_hz(), p.cp_len,
                        static_cast<unsigned long long>(cfg.spec.seed), to_string(cfg.kind).c_str());
        }
        if (cfg.kind != ExperimentKind::Ber) papr = run_papr_experiment(cfg.spec);
        if (cfg.kind != ExperimentKind::Papr) ber = run_ber_experiment(cfg.spec);
    } catch (const ConfigError& e) {
        std::cerr << "ofdmclip: config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ofdmclip: runtime error: " << e.what() << "\n";
        return 2;
    }

    try {
        std::filesystem::create_directories(cfg.output_dir);
        if (papr) emit_papr_outputs(*papr, cfg.output_dir);
        if (ber) emit_ber_outputs(*ber, cfg.output_dir);
    } catch (const std::exception& e) {
        std::cerr << "ofdmclip: i/o error: " << e.what() << "\n";
        return 3;
    }

    if (cfg.verbosity != Verbosity::Quiet) {
        if (papr) print_papr(*papr, cfg.spec.ccdf_read_point);
        if (ber) print_ber(*ber);
        std::printf("outputs written to %s\n", cfg.output_dir.string().c_str());
    }
    if (cfg.verbosity == Verbosity::Verbose) {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        std::printf("elapsed %.1f s\n", dt.count());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "ofdmclip: runtime error: " << e.what() << "\n";
        return 2;
    }
}
