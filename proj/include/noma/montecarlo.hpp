#pragma once

#include "noma/channel.hpp"
#include "noma/optimizer.hpp"
#include "noma/scheduler.hpp"
#include "noma/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace noma {

struct TrialConfig {
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    ModulationPair mods{};
    PowerSplit split{0.76, 0.24};
    LinkState link_k{};
    LinkState link_n{};
    int samples = 1;       ///< L, odd.
    unsigned threads = 0;  ///< 0 = hardware concurrency. Results do not depend on it.
};

/// Bernoulli mean with std_error = sqrt(mean (1 - mean) / trials).
struct EstimateWithCI {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;

    static EstimateWithCI from_counts(std::size_t hits, std::size_t trials);
};

struct ErrorEstimates {
    EstimateWithCI sic_as_nonsic;
    EstimateWithCI nonsic_as_sic;
};

/// Trials are processed in fixed blocks with one substream per block.
inline constexpr std::size_t kTrialBlock = 4096;

/// Empirical error pair: composite symbols drawn uniformly, classified with the ML rule
/// at each user's link. Throws DegenerateConstellationError for unusable splits.
ErrorEstimates estimate_error_pair(const TrialConfig& cfg);

/// Empirical error of a majority vote over L independent decisions, each wrong w.p. p0.
EstimateWithCI estimate_majority_error(double p0, int samples, std::size_t trials,
                                       std::uint64_t seed, unsigned threads = 0);

struct GridOptimum {
    double gamma_n = 0.0;
    double gain = 0.0;
};

/// Best lower-bound gain over gamma_n in {0, step, 2 step, ..., 1} subject to both users'
/// rate and error constraints; ties go to the larger gamma_n. step in (0, 0.1].
std::optional<GridOptimum> grid_optimal_gamma(const LinkState& link_k, const LinkState& link_n,
                                              const SystemParams& params, double step);

inline constexpr std::size_t kExhaustiveMaxUsers = 12;

/// Best pairing of user 0 with any k by grid_optimal_gamma. Throws CostGuardError for
/// drops larger than kExhaustiveMaxUsers.
SchedulingOutcome exhaustive_schedule(const UserDrop& drop, const SystemParams& params,
                                      double step = 1e-3);

} // namespace noma
