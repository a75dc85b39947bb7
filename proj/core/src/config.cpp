#include "ofdmclip/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "ofdmclip/error.hpp"

namespace ofdmclip {

namespace {

void reject_unknown(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
    if (!node.IsMap()) throw ConfigError(where.empty() ? "config root must be a mapping" : where + " must be a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
        }
    }
}

template <typename T>
void read(const YAML::Node& node, const char* key, const std::string& path, T& out) {
    const auto v = node[key];
    if (!v) return;
    try {
        out = v.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("key '" + path + "' has an invalid value");
    }
}

std::vector<Band> read_bands(const YAML::Node& node, const std::string& path) {
    if (!node.IsSequence()) throw ConfigError("key '" + path + "' must be a list of bands");
    std::vector<Band> bands;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const auto item = node[i];
        const std::string where = path + "[" + std::to_string(i) + "]";
        reject_unknown(item, where, {"lo", "hi", "desired", "weight"});
        Band b;
        if (!item["lo"] || !item["hi"] || !item["desired"]) {
            throw ConfigError("key '" + where + "' needs lo, hi and desired");
        }
        read(item, "lo", where + ".lo", b.lo);
        read(item, "hi", where + ".hi", b.hi);
        read(item, "desired", where + ".desired", b.desired);
        read(item, "weight", where + ".weight", b.weight);
        bands.push_back(b);
    }
    return bands;
}

RunConfig from_yaml(const YAML::Node& root) {
    RunConfig cfg;
    if (!root || root.IsNull()) {
        cfg.validate();
        return cfg;
    }
    reject_unknown(root, "", {"experiment", "output_dir", "seed", "threads", "verbosity", "ofdm", "schemes",
                              "cr_values", "papr", "ber", "fir"});
    auto& spec = cfg.spec;

    if (root["experiment"]) cfg.kind = parse_experiment_kind(root["experiment"].as<std::string>());
    if (root["output_dir"]) cfg.output_dir = root["output_dir"].as<std::string>();
    read(root, "seed", "seed", spec.seed);
    read(root, "threads", "threads", spec.threads);
    if (root["verbosity"]) {
        const auto v = root["verbosity"].as<std::string>();
        if (v == "quiet") cfg.verbosity = Verbosity::Quiet;
        else if (v == "normal") cfg.verbosity = Verbosity::Normal;
        else if (v == "verbose") cfg.verbosity = Verbosity::Verbose;
        else throw ConfigError("key 'verbosity' must be quiet, normal or verbose");
    }

    if (const auto ofdm = root["ofdm"]) {
        reject_unknown(ofdm, "ofdm", {"n_subcarriers", "oversample", "bandwidth_hz", "carrier_hz", "cp_len"});
        read(ofdm, "n_subcarriers", "ofdm.n_subcarriers", spec.params.n_subcarriers);
        read(ofdm, "oversample", "ofdm.oversample", spec.params.oversample);
        read(ofdm, "bandwidth_hz", "ofdm.bandwidth_hz", spec.params.bandwidth_hz);
        read(ofdm, "carrier_hz", "ofdm.carrier_hz", spec.params.carrier_hz);
        read(ofdm, "cp_len", "ofdm.cp_len", spec.params.cp_len);
    }
    if (const auto schemes = root["schemes"]) {
        if (!schemes.IsSequence()) throw ConfigError("key 'schemes' must be a list");
        spec.schemes.clear();
        for (const auto& s : schemes) spec.schemes.push_back(ModScheme::parse(s.as<std::string>()));
    }
    read(root, "cr_values", "cr_values", spec.cr_values);

    if (const auto papr = root["papr"]) {
        reject_unknown(papr, "papr", {"n_symbols", "ccdf_read_point", "ccdf_step_db"});
        read(papr, "n_symbols", "papr.n_symbols", spec.n_symbols);
        read(papr, "ccdf_read_point", "papr.ccdf_read_point", spec.ccdf_read_point);
        read(papr, "ccdf_step_db", "papr.ccdf_step_db", spec.ccdf_step_db);
    }
    if (const auto ber = root["ber"]) {
        reject_unknown(ber, "ber", {"ebn0_db", "bits_per_point", "include_unclipped", "eb_includes_cp"});
        read(ber, "ebn0_db", "ber.ebn0_db", spec.ebn0_grid);
        read(ber, "bits_per_point", "ber.bits_per_point", spec.bits_per_point);
        read(ber, "include_unclipped", "ber.include_unclipped", spec.include_unclipped);
        read(ber, "eb_includes_cp", "ber.eb_includes_cp", spec.eb_includes_cp);
    }
    if (const auto fir = root["fir"]) {
        reject_unknown(fir, "fir", {"hpf_taps", "hpf_bands", "lpf_taps", "lpf_bands"});
        read(fir, "hpf_taps", "fir.hpf_taps", spec.fir.hpf_taps);
        read(fir, "lpf_taps", "fir.lpf_taps", spec.fir.lpf_taps);
        if (fir["hpf_bands"]) spec.fir.hpf_bands = read_bands(fir["hpf_bands"], "fir.hpf_bands");
        if (fir["lpf_bands"]) spec.fir.lpf_bands = read_bands(fir["lpf_bands"], "fir.lpf_bands");
    }
    cfg.validate();
    return cfg;
}

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& text) {
    if (text == "papr") return ExperimentKind::Papr;
    if (text == "ber") return ExperimentKind::Ber;
    if (text == "both") return ExperimentKind::Both;
    throw ConfigError("experiment must be papr, ber or both (got '" + text + "')");
}

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Papr: return "papr";
        case ExperimentKind::Ber: return "ber";
        case ExperimentKind::Both: return "both";
    }
    return "both";
}

void RunConfig::validate() const {
    // Prefix field names so messages point at config keys.
    try {
        spec.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
    std::error_code ec;
    if (std::filesystem::exists(output_dir, ec) && !std::filesystem::is_directory(output_dir, ec)) {
        throw ConfigError("output_dir '" + output_dir.string() + "' exists and is not a directory");
    }
    auto parent = std::filesystem::absolute(output_dir, ec).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent, ec)) {
        throw ConfigError("output_dir parent '" + parent.string() + "' does not exist");
    }
}

RunConfig parse_config_text(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    try {
        return from_yaml(root);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace ofdmclip
