#include "noma/rates.hpp"

#include "noma/errors.hpp"

#include <cmath>

namespace noma {

PowerSplit PowerSplit::from_gamma_n(double gamma_n)
{
    if (!(gamma_n >= 0.0 && gamma_n <= 1.0))
        throw ParameterError("gamma_n must lie in [0, 1]");
    return {1.0 - gamma_n, gamma_n};
}

namespace {

void check_snr(double snr)
{
    if (!(snr >= 0.0) || !std::isfinite(snr))
        throw ParameterError("snr must be finite and non-negative");
}

} // namespace

double rate_nonsic(double snr_k, PowerSplit split)
{
    check_snr(snr_k);
    return std::log2(1.0 + snr_k * split.gamma_k / (snr_k * split.gamma_n + 1.0));
}

double rate_sic(double snr_n, PowerSplit split)
{
    check_snr(snr_n);
    return std::log2(1.0 + snr_n * split.gamma_n);
}

double rate_oma(double snr)
{
    check_snr(snr);
    return 0.5 * std::log2(1.0 + snr);
}

RatePair noma_rates(double snr_k, double snr_n, PowerSplit split)
{
    return {rate_nonsic(snr_k, split), rate_sic(snr_n, split)};
}

double gain_lower_bound(double snr_k, double snr_n, PowerSplit split, double p_t)
{
    if (!(p_t >= 0.0 && p_t <= 1.0))
        throw ParameterError("p_t must lie in [0, 1]");
    const auto r = noma_rates(snr_k, snr_n, split);
    return (r.r_sic + r.r_nonsic) * (1.0 - p_t) - rate_oma(snr_n) - rate_oma(snr_k);
}

GainReport gain_report(double snr_k, double snr_n, PowerSplit split, const ErrorProbabilities& errs,
                       double p_t)
{
    const auto r = noma_rates(snr_k, snr_n, split);
    GainReport g;
    g.delta_n = r.r_sic * (1.0 - errs.p_sic_as_nonsic) - rate_oma(snr_n);
    g.delta_k = r.r_nonsic * (1.0 - errs.p_nonsic_as_sic) - rate_oma(snr_k);
    g.delta_total = g.delta_n + g.delta_k;
    g.lower_bound = gain_lower_bound(snr_k, snr_n, split, p_t);
    return g;
}

} // namespace noma
