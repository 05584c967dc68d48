#pragma once

#include "noma/types.hpp"

namespace noma {

/// Achievable NOMA rates in bit/s/Hz.
struct RatePair {
    double r_nonsic = 0.0;
    double r_sic = 0.0;
};

/// Sum-rate gain of NOMA over OMA with each user's rate discounted by its own
/// misclassification probability, and the P_t-based lower bound.
struct GainReport {
    double delta_n = 0.0;
    double delta_k = 0.0;
    double delta_total = 0.0;
    double lower_bound = 0.0;
};

/// Non-SIC user decodes its symbol treating the SIC user's signal as noise.
double rate_nonsic(double snr_k, PowerSplit split);

/// SIC user after cancelling the non-SIC user's signal.
double rate_sic(double snr_n, PowerSplit split);

/// Half-bandwidth orthogonal access.
double rate_oma(double snr);

RatePair noma_rates(double snr_k, double snr_n, PowerSplit split);

/// (R_n + R_k)(1 - p_t) - R~_n - R~_k. May be negative.
double gain_lower_bound(double snr_k, double snr_n, PowerSplit split, double p_t);

GainReport gain_report(double snr_k, double snr_n, PowerSplit split, const ErrorProbabilities& errs,
                       double p_t);

} // namespace noma
