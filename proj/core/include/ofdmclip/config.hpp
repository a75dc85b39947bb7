#pragma once

#include <filesystem>
#include <string>

#include "ofdmclip/harness.hpp"

namespace ofdmclip {

enum class ExperimentKind { Papr, Ber, Both };
enum class Verbosity { Quiet, Normal, Verbose };

ExperimentKind parse_experiment_kind(const std::string& text);
std::string to_string(ExperimentKind kind);

struct RunConfig {
    ExperimentKind kind = ExperimentKind::Both;
    ExperimentSpec spec;
    std::filesystem::path output_dir = "ofdmclip_out";
    Verbosity verbosity = Verbosity::Normal;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Reads a YAML run configuration; omitted keys keep their defaults (the
/// 128-subcarrier, L = 8, 1 MHz / 2 MHz carrier setup). Throws ConfigError
/// for a missing file, malformed YAML, unknown keys or violated constraints.
RunConfig parse_config(const std::filesystem::path& path);

/// Same, from YAML text.
RunConfig parse_config_text(const std::string& text);

}  // namespace ofdmclip
