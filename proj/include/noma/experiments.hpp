#pragma once

#include "noma/channel.hpp"
#include "noma/config.hpp"
#include "noma/optimizer.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace noma {

/// Numbers are written with 9 significant digits.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    std::string to_csv() const;
};

std::string format_number(double v);

struct ExperimentResult {
    std::string name;
    CsvTable table;
    nlohmann::json meta;
    std::string report; ///< Human-readable summary; validation lists every check here.
    int exit_code = 0;
};

/// Error probabilities versus received SNR, analytical and Monte Carlo.
ExperimentResult run_fig7(const ExperimentConfig& cfg);

/// Mean lower-bound gain of the three schedulers over paired drops, versus transmit SNR
/// (fig8), L (fig9) or p_t (fig10).
ExperimentResult run_gain_experiment(const ExperimentConfig& cfg);

/// Full oracle suite; exit_code is 1 when any check breaches its tolerance.
ExperimentResult run_validate(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes <dir>/<name>.csv and <dir>/<name>.meta.json.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

/// Mean gain of each scheduler at one sweep point.
struct GainPoint {
    double proposed = 0.0, ss = 0.0, sw = 0.0;
    double se_proposed = 0.0, se_ss = 0.0, se_sw = 0.0;
    double se_diff_sw = 0.0, se_diff_ss = 0.0; ///< Paired SE of proposed minus each baseline.
    std::size_t feasible_drops = 0;
};

/// Drop d uses seed derive_seed(seed, Drops, d) regardless of the sweep point.
GainPoint evaluate_gain_point(const SystemParams& params, int users, double radius, double snr_db,
                              std::size_t drops, std::uint64_t seed, unsigned threads);

struct LinkPair {
    LinkState link_k;
    LinkState link_n;
};

/// Random pairs (snr_n in [15, 40] dB, snr_k at least 3 dB lower) for which the
/// reference grid search finds a feasible split under `params` with the exact model.
std::vector<LinkPair> random_feasible_pairs(std::size_t count, const SystemParams& params,
                                            std::uint64_t seed);

struct AllocationGap {
    double gamma_gap = 0.0;           ///< |gamma* - grid optimum|, 1 when feasibility disagrees.
    double plug_back_violation = 0.0; ///< Largest constraint excess at gamma* under the exact model.
    double rate_boundary_gap = 0.0;   ///< |R_k(gamma_rate) - rate target|.
};

/// allocate() under `params` (possibly a modified model) against the exact-model grid search
/// with step 1e-3, on random_feasible_pairs(count, params, seed).
std::vector<AllocationGap> allocation_grid_gaps(const SystemParams& params, std::uint64_t seed,
                                                std::size_t count);

struct SchedulerOracleStats {
    std::size_t instances = 0;   ///< Drops with a feasible pair that were compared.
    std::size_t drops_drawn = 0; ///< Including drops with no feasible pair.
    double equal_fraction = 0.0; ///< Share where proposed matches the oracle within grid resolution.
    double worst_excess = 0.0;   ///< max(proposed - oracle - tolerance); <= 0 means never above.
};

/// Draws drops of `users` users until `instances` of them admit a feasible pair and compares
/// schedule_proposed with exhaustive_schedule (exact model, step 1e-3) on each.
SchedulerOracleStats scheduler_vs_exhaustive(const SystemParams& params, int users, double radius, double snr_db,
                                             std::size_t instances, std::uint64_t seed, unsigned threads);

/// Validation below this many trials only warns on Monte Carlo breaches.
inline constexpr std::size_t kMinValidationTrials = 1000;

} // namespace noma
