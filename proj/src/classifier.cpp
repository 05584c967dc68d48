#include "noma/classifier.hpp"

#include "noma/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace noma {

double log_likelihood(Complex y, Complex h, double noise_var, std::span<const Complex> alphabet)
{
    if (!(noise_var > 0.0))
        throw ParameterError("noise variance must be positive");
    if (alphabet.empty())
        throw ParameterError("empty alphabet");

    double peak = -std::numeric_limits<double>::infinity();
    for (const auto& s : alphabet)
        peak = std::max(peak, -std::norm(y - h * s) / noise_var);
    double acc = 0.0;
    for (const auto& s : alphabet)
        acc += std::exp(-std::norm(y - h * s) / noise_var - peak);

    return peak + std::log(acc) - std::log(static_cast<double>(alphabet.size()))
         - std::log(std::numbers::pi * noise_var);
}

double log_likelihood_sic(Complex y, Complex h, double noise_var, const CompositeConstellation& chi)
{
    return log_likelihood(y, h, noise_var, chi.points);
}

double log_likelihood_nonsic(Complex y, Complex h, double noise_var, const Constellation& chi_k)
{
    return log_likelihood(y, h, noise_var, chi_k.points);
}

double likelihood_sic(Complex y, Complex h, double noise_var, const CompositeConstellation& chi)
{
    return std::exp(log_likelihood_sic(y, h, noise_var, chi));
}

double likelihood_nonsic(Complex y, Complex h, double noise_var, const Constellation& chi_k)
{
    return std::exp(log_likelihood_nonsic(y, h, noise_var, chi_k));
}

Hypothesis classify_single(Complex y, Complex h, double noise_var, const CompositeConstellation& chi)
{
    const double sic = log_likelihood_sic(y, h, noise_var, chi);
    const double nonsic = log_likelihood_nonsic(y, h, noise_var, chi.parent_k);
    return sic > nonsic ? Hypothesis::SIC : Hypothesis::NonSIC;
}

Hypothesis classify_multi(const Observation& obs, const CompositeConstellation& chi)
{
    if (obs.y.empty() || obs.y.size() % 2 == 0)
        throw ParameterError("majority vote needs an odd number of samples");
    std::size_t sic_votes = 0;
    for (const auto& y : obs.y)
        if (classify_single(y, obs.h, obs.noise_var, chi) == Hypothesis::SIC)
            ++sic_votes;
    return 2 * sic_votes > obs.y.size() ? Hypothesis::SIC : Hypothesis::NonSIC;
}

std::vector<std::vector<Complex>> m_user_hypothesis_sets(std::span<const Constellation> users)
{
    if (users.size() < 2)
        throw ParameterError("an M-user group needs M >= 2");
    std::vector<std::vector<Complex>> sets(users.size());
    sets.back() = users.back().points;
    for (std::size_t m = users.size() - 1; m-- > 0;)
        sets[m] = minkowski_sum(users[m].points, sets[m + 1]);
    return sets;
}

std::size_t classify_m_user(Complex y, Complex h, double noise_var,
                            std::span<const std::vector<Complex>> hypothesis_sets)
{
    if (hypothesis_sets.empty())
        throw ParameterError("no hypotheses to compare");
    std::size_t best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < hypothesis_sets.size(); ++m) {
        const double ll = log_likelihood(y, h, noise_var, hypothesis_sets[m]);
        if (ll > best_ll) {
            best_ll = ll;
            best = m;
        }
    }
    return best;
}

} // namespace noma
