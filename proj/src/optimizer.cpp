#include "noma/optimizer.hpp"

#include "noma/errors.hpp"
#include "noma/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace noma {

double SystemParams::rate_target() const
{
    if (r_t == 0.0)
        return 0.0;
    if (p_t >= 1.0)
        return std::numeric_limits<double>::infinity();
    return r_t / (1.0 - p_t);
}

void SystemParams::validate() const
{
    if (samples < 1 || samples % 2 == 0)
        throw ParameterError("L must be a positive odd integer");
    if (!(r_t >= 0.0) || !std::isfinite(r_t))
        throw ParameterError("r_t must be finite and non-negative");
    if (!(p_t >= 0.0 && p_t <= 1.0))
        throw ParameterError("p_t must lie in [0, 1]");
    if (!(eps > 0.0 && eps < 0.5))
        throw ParameterError("eps must lie in (0, 0.5)");
    for (int m : {mods.order_k, mods.order_n})
        if (m != 4 && m != 16 && m != 64)
            throw ParameterError("modulation order must be 4, 16 or 64");
}

RateBoundary gamma_rate_boundary(double snr_k, double rate_target)
{
    if (!(snr_k > 0.0) || !std::isfinite(snr_k))
        throw ParameterError("snr_k must be positive and finite");
    if (!(rate_target >= 0.0))
        throw ParameterError("rate target must be non-negative");
    const double lift = std::exp2(rate_target);
    const double threshold = lift - 1.0;
    if (snr_k < threshold)
        return {0.0, false};
    return {std::clamp((snr_k - threshold) / (lift * snr_k), 0.0, 1.0), true};
}

namespace {

constexpr int kMonotoneProbes = 8;

} // namespace

ClassifierBoundary gamma_classifier_boundary(const LinkState& link_k, const SystemParams& params)
{
    params.validate();
    ClassifierBoundary out;
    if (params.p_t >= 1.0)
        return {1.0, true, false, 0};
    // The exact error is positive at every split; only underflow could make it look zero.
    if (params.p_t <= 0.0)
        return out;

    auto feasible_at = [&](double g) {
        ++out.evaluations;
        return analytical_nonsic_error(link_k, PowerSplit::from_gamma_n(g), params.mods,
                                       params.samples, params.model) <= params.p_t;
    };

    const double eps = params.eps;
    if (!feasible_at(eps))
        return out;

    double lo = eps;
    double hi = 1.0;
    while (hi - lo >= eps) {
        const double mid = 0.5 * (lo + hi);
        (feasible_at(mid) ? lo : hi) = mid;
    }
    out.gamma = lo;
    out.feasible = true;

    bool bracket_ok = true;
    for (int j = 1; j <= kMonotoneProbes && bracket_ok; ++j) {
        const double g = hi + (1.0 - hi) * j / (kMonotoneProbes + 1.0);
        if (feasible_at(g))
            bracket_ok = false;
    }
    if (bracket_ok)
        return out;

    // Not monotone above the bracket: take the largest feasible grid point instead.
    out.fallback = true;
    const auto steps = static_cast<long>(std::floor(1.0 / eps));
    for (long i = steps; i >= 1; --i) {
        const double g = std::min(1.0, static_cast<double>(i) * eps);
        if (g > out.gamma && feasible_at(g)) {
            out.gamma = g;
            break;
        }
        if (g <= out.gamma)
            break;
    }
    return out;
}

AllocationResult allocate(const LinkState& link_k, const LinkState& link_n, const SystemParams& params)
{
    params.validate();
    const double snr_k = link_k.snr();
    const double snr_n = link_n.snr();
    if (!(snr_n > snr_k))
        throw ParameterError("the SIC user must have the larger SNR");

    AllocationResult res;
    const double rt = params.rate_target();
    if (!std::isfinite(rt)) {
        res.reason = InfeasibleReason::NonSicRate;
        return res;
    }

    const auto rb = gamma_rate_boundary(snr_k, rt);
    res.gamma_rate = rb.gamma;
    if (!rb.feasible) {
        res.reason = InfeasibleReason::NonSicRate;
        return res;
    }

    // R_n rises and P_n falls with gamma_n, so the SIC user's constraints hold somewhere
    // in [0, gamma_rate] only if they hold at gamma_rate.
    const auto at_rate = PowerSplit::from_gamma_n(rb.gamma);
    if (rate_sic(snr_n, at_rate) < rt - kPlugBackTolerance) {
        res.reason = InfeasibleReason::SicRate;
        return res;
    }
    if (analytical_sic_error(link_n, at_rate, params.mods, params.samples, params.model) > params.p_t) {
        res.reason = InfeasibleReason::SicClassifier;
        return res;
    }

    const auto cb = gamma_classifier_boundary(link_k, params);
    res.gamma_classifier = cb.gamma;
    res.classifier_fallback = cb.fallback;
    if (!cb.feasible) {
        res.reason = InfeasibleReason::NonSicClassifier;
        return res;
    }

    const double gamma = std::min(rb.gamma, cb.gamma);
    const auto split = PowerSplit::from_gamma_n(gamma);
    const auto errs =
        analytical_error_pair(link_k, link_n, split, params.mods, params.samples, params.model);
    const auto rates = noma_rates(snr_k, snr_n, split);
    if (rates.r_nonsic < rt - kPlugBackTolerance || rates.r_sic < rt - kPlugBackTolerance ||
        errs.p_sic_as_nonsic > params.p_t || errs.p_nonsic_as_sic > params.p_t) {
        res.reason = InfeasibleReason::PlugBack;
        res.errors = errs;
        return res;
    }

    res.split = split;
    res.errors = errs;
    res.binding = rb.gamma <= cb.gamma ? Binding::Rate : Binding::Classifier;
    res.lower_bound_gain = gain_lower_bound(snr_k, snr_n, split, params.p_t);
    return res;
}

} // namespace noma
