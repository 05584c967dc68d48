#pragma once

#include "noma/optimizer.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace noma {

enum class Experiment { Fig7, Fig8, Fig9, Fig10, Validate };

/// Subcommand / file-stem name, e.g. "fig8".
std::string experiment_name(Experiment e);
/// Accepts the short name or the long form (fig8_gain_vs_snr). Throws ParameterError.
Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
    Experiment experiment = Experiment::Fig7;
    int mod_k = 4;
    int mod_n = 16;
    double gamma_n = 0.24;  ///< fig7 only.
    double r_t = 0.8;
    double p_t = 0.01;
    int L = 5;
    int K = 40;
    double radius = 50.0;
    std::size_t trials = 100000;
    std::size_t drops = 200;
    std::uint64_t seed = 1;
    std::vector<double> snr_points;  ///< fig7: received SNR (dB); fig8: transmit SNR (dB).
    double snr_db = 10.0;            ///< Transmit SNR for fig9, fig10 and the validate drops.
    std::vector<int> l_points{1, 3, 5, 7, 9};
    std::vector<double> pt_points{1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1, 2e-1};
    double eps = 1e-4;
    unsigned threads = 0;

    SystemParams system() const;
    void validate() const;
};

/// Defaults for an experiment; fig7 uses L = 1 and a 0..30 dB received-SNR sweep.
ExperimentConfig default_config(Experiment e);

/// Applies flat `key = value` lines (with `#` comments and `[a, b]` arrays) to `cfg`.
/// Unknown keys and malformed values throw ParameterError.
void apply_config_text(ExperimentConfig& cfg, std::string_view text);

/// Sets one field from its textual value.
void apply_override(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Splits "key=value".
std::pair<std::string, std::string> split_override(std::string_view kv);

/// Defaults for `e`, then the file, then overrides in order.
ExperimentConfig load_config(Experiment e, const std::string& path,
                             const std::vector<std::string>& overrides = {});

} // namespace noma
