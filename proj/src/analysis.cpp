#include "noma/analysis.hpp"

#include "noma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace noma {

double q_function(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

namespace {

// Transmitted non-SIC symbols and their weight. By the four-fold symmetry of square QAM
// the first quadrant of chi_k is enough; SIC-side indices always run over the full set.
struct Outer {
    std::vector<std::size_t> idx;
    double weight;
};

Outer outer_indices(const CompositeConstellation& chi, const AnalysisModel& model)
{
    Outer o;
    const double total = static_cast<double>(chi.size());
    if (model.quadrant_reduction) {
        o.idx = first_quadrant_indices(chi.parent_k);
        o.weight = 4.0 / total;
    } else {
        o.idx.resize(chi.parent_k.size());
        std::iota(o.idx.begin(), o.idx.end(), std::size_t{0});
        o.weight = 1.0 / total;
    }
    return o;
}

// Q(num / den) with den == 0 taken as the limit.
double tail_ratio(TailFunction q, double num, double den)
{
    if (den > 0.0)
        return q(num / den);
    if (num > 0.0)
        return 0.0;
    return num < 0.0 ? 1.0 : 0.5;
}

void check_inputs(double noise_var, const CompositeConstellation& chi)
{
    if (!(noise_var > 0.0))
        throw ParameterError("noise variance must be positive");
    if (chi.size() == 0 || chi.size() != chi.parent_k.size() * chi.parent_n.size())
        throw ParameterError("composite constellation is inconsistent with its parents");
}

void check_parts(const CompositeConstellation& chi, const Constellation& chi_k,
                 const Constellation& chi_n)
{
    if (chi_k.points != chi.parent_k.points || chi_n.points != chi.parent_n.points)
        throw ParameterError("composite constellation was not built from the given parts");
}

} // namespace

double p_err_sic_user_raw(Complex h, double noise_var, const CompositeConstellation& chi,
                          const AnalysisModel& model)
{
    check_inputs(noise_var, chi);
    const auto& ck = chi.parent_k.points;
    const auto& cn = chi.parent_n.points;
    const double g = std::norm(h);
    const double log_ratio = std::log(static_cast<double>(chi.parent_k.size()) /
                                      static_cast<double>(chi.size()));
    const auto outer = outer_indices(chi, model);

    double sum = 0.0;
    for (std::size_t i0 : outer.idx) {
        for (const Complex& sn : cn) {
            const Complex s = ck[i0] + sn;
            const double num = noise_var * log_ratio - g * (std::norm(s) - std::norm(ck[i0])) +
                               2.0 * g * (s * std::conj(sn)).real();
            const double den = std::sqrt(2.0 * noise_var * g * std::norm(sn));
            sum += tail_ratio(model.tail, num, den);
        }
    }
    return sum * outer.weight;
}

double p_err_nonsic_user_raw(Complex h, double noise_var, const CompositeConstellation& chi,
                             const AnalysisModel& model)
{
    check_inputs(noise_var, chi);
    const auto& ck = chi.parent_k.points;
    const auto& cn = chi.parent_n.points;
    const double g = std::norm(h);
    if (g == 0.0)
        return 0.0;
    const double log_ratio = std::log(static_cast<double>(chi.size()) /
                                      static_cast<double>(chi.parent_k.size()));
    // Matched-filter output h* y / |h|^2 has per-axis noise std sqrt(noise_var / (2 |h|^2)).
    const double sd = std::sqrt(noise_var / (2.0 * g));
    const auto outer = outer_indices(chi, model);
    const auto q = model.tail;

    double sum = 0.0;
    for (std::size_t i0 : outer.idx) {
        const Complex sk = ck[i0];
        for (const Complex& sn0 : cn) {
            const Complex s0 = sk + sn0;
            for (std::size_t l = 0; l < cn.size(); ++l) {
                const Complex sn = cn[l];
                const double num = noise_var * log_ratio + g * (std::norm(sk + sn) - std::norm(sk)) -
                                   2.0 * g * (s0 * std::conj(sn)).real();
                const double den = std::sqrt(2.0 * noise_var * g * std::norm(sn));
                const double qt = tail_ratio(q, num, den);
                if (qt == 0.0)
                    continue;
                const DecisionRegion& r = chi.regions[chi.index(i0, l)];
                const double pr = (q((r.re_lo - s0.real()) / sd) - q((r.re_hi - s0.real()) / sd)) *
                                  (q((r.im_lo - s0.imag()) / sd) - q((r.im_hi - s0.imag()) / sd));
                sum += qt * pr;
            }
        }
    }
    return sum * outer.weight;
}

double p_err_sic_user(Complex h, double noise_var, const CompositeConstellation& chi,
                      const AnalysisModel& model)
{
    return std::clamp(p_err_sic_user_raw(h, noise_var, chi, model), 0.0, 1.0);
}

double p_err_nonsic_user(Complex h, double noise_var, const CompositeConstellation& chi,
                         const AnalysisModel& model)
{
    return std::clamp(p_err_nonsic_user_raw(h, noise_var, chi, model), 0.0, 1.0);
}

double p_err_sic_user(Complex h, double noise_var, const CompositeConstellation& chi,
                      const Constellation& chi_k, const Constellation& chi_n,
                      const AnalysisModel& model)
{
    check_parts(chi, chi_k, chi_n);
    return p_err_sic_user(h, noise_var, chi, model);
}

double p_err_nonsic_user(Complex h, double noise_var, const CompositeConstellation& chi,
                         const Constellation& chi_k, const Constellation& chi_n,
                         const AnalysisModel& model)
{
    check_parts(chi, chi_k, chi_n);
    return p_err_nonsic_user(h, noise_var, chi, model);
}

double combine_majority(double p0, int samples, MajoritySum rule)
{
    if (samples < 1 || samples % 2 == 0)
        throw ParameterError("sample count must be a positive odd integer");
    if (!(p0 >= 0.0 && p0 <= 1.0))
        throw ParameterError("single-sample error must lie in [0, 1]");
    const int half = (samples + 1) / 2;
    const int lo = rule == MajoritySum::Standard ? half : 1;
    const int hi = rule == MajoritySum::Standard ? samples : half;
    double sum = 0.0;
    double binom = 1.0; // C(samples, j), built up from C(samples, 0)
    for (int j = 1; j <= hi; ++j) {
        binom = binom * (samples - j + 1) / j;
        if (j >= lo)
            sum += binom * std::pow(p0, j) * std::pow(1.0 - p0, samples - j);
    }
    return std::clamp(sum, 0.0, 1.0);
}

namespace {

std::optional<CompositeConstellation> composite_for(PowerSplit split, ModulationPair mods)
{
    if (!(split.gamma_n > 0.0 && split.gamma_n < 1.0))
        return std::nullopt;
    try {
        return superpose(make_qam(mods.order_k, split.gamma_k), make_qam(mods.order_n, split.gamma_n));
    } catch (const DegenerateConstellationError&) {
        return std::nullopt;
    }
}

} // namespace

double analytical_nonsic_error(const LinkState& link_k, PowerSplit split, ModulationPair mods,
                               int samples, const AnalysisModel& model)
{
    const auto chi = composite_for(split, mods);
    if (!chi)
        return 1.0;
    return combine_majority(p_err_nonsic_user(link_k.h, link_k.noise_var, *chi, model), samples,
                            model.majority);
}

double analytical_sic_error(const LinkState& link_n, PowerSplit split, ModulationPair mods,
                            int samples, const AnalysisModel& model)
{
    const auto chi = composite_for(split, mods);
    if (!chi)
        return 1.0;
    return combine_majority(p_err_sic_user(link_n.h, link_n.noise_var, *chi, model), samples,
                            model.majority);
}

ErrorProbabilities analytical_error_pair(const LinkState& link_k, const LinkState& link_n,
                                         PowerSplit split, ModulationPair mods, int samples,
                                         const AnalysisModel& model)
{
    const auto chi = composite_for(split, mods);
    if (!chi)
        return {1.0, 1.0};
    return {combine_majority(p_err_sic_user(link_n.h, link_n.noise_var, *chi, model), samples,
                             model.majority),
            combine_majority(p_err_nonsic_user(link_k.h, link_k.noise_var, *chi, model), samples,
                             model.majority)};
}

} // namespace noma
