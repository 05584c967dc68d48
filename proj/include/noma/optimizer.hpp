#pragma once

#include "noma/analysis.hpp"
#include "noma/channel.hpp"
#include "noma/types.hpp"

#include <optional>

namespace noma {

/// Per-user QoS targets and model settings shared by allocation and scheduling.
struct SystemParams {
    ModulationPair mods{};
    int samples = 5;     ///< L, odd.
    double r_t = 0.8;    ///< Target rate, bit/s/Hz.
    double p_t = 0.01;   ///< Misclassification target.
    double eps = 1e-4;   ///< Bisection tolerance on gamma_n.
    AnalysisModel model{};

    /// R_t / (1 - P_t): the raw rate each user needs so its discounted rate meets R_t.
    double rate_target() const;
    void validate() const;
};

/// Largest gamma_n keeping the non-SIC user's rate at or above the target.
struct RateBoundary {
    double gamma = 0.0;
    bool feasible = false;
};

RateBoundary gamma_rate_boundary(double snr_k, double rate_target);

/// Largest gamma_n keeping the non-SIC user's L-sample error at or below p_t.
struct ClassifierBoundary {
    double gamma = 0.0;
    bool feasible = false;
    bool fallback = false; ///< A probe above the bracket was feasible; a grid scan was used.
    int evaluations = 0;
};

ClassifierBoundary gamma_classifier_boundary(const LinkState& link_k, const SystemParams& params);

enum class Binding { Rate, Classifier, Infeasible };

enum class InfeasibleReason {
    None,
    NonSicRate,       ///< Even gamma_n = 0 leaves the non-SIC user below target.
    SicRate,          ///< SIC user's rate is short at the largest rate-feasible split.
    SicClassifier,    ///< SIC user's error exceeds p_t at the largest rate-feasible split.
    NonSicClassifier, ///< No split keeps the non-SIC user's error within p_t.
    PlugBack,         ///< Constraints fail at the chosen split.
};

struct AllocationResult {
    std::optional<PowerSplit> split;
    double gamma_rate = 0.0;
    double gamma_classifier = 0.0;
    Binding binding = Binding::Infeasible;
    InfeasibleReason reason = InfeasibleReason::None;
    bool classifier_fallback = false;
    ErrorProbabilities errors{1.0, 1.0};
    double lower_bound_gain = 0.0; ///< Zero when infeasible.

    bool feasible() const { return split.has_value(); }
};

/// Closed-form allocation for the pair (k, n); requires snr_n > snr_k.
AllocationResult allocate(const LinkState& link_k, const LinkState& link_n, const SystemParams& params);

/// Slack used when plugging the chosen split back into the rate constraints.
inline constexpr double kPlugBackTolerance = 1e-9;

} // namespace noma
