#include "noma/montecarlo.hpp"

#include "noma/analysis.hpp"
#include "noma/classifier.hpp"
#include "noma/errors.hpp"
#include "noma/parallel.hpp"
#include "noma/rates.hpp"
#include "noma/rng.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace noma {

EstimateWithCI EstimateWithCI::from_counts(std::size_t hits, std::size_t trials)
{
    EstimateWithCI e;
    e.trials = trials;
    if (trials == 0)
        return e;
    e.mean = static_cast<double>(hits) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
    return e;
}

namespace {

std::size_t block_count(std::size_t trials)
{
    return (trials + kTrialBlock - 1) / kTrialBlock;
}

std::size_t block_size(std::size_t b, std::size_t trials)
{
    return std::min(kTrialBlock, trials - b * kTrialBlock);
}

} // namespace

ErrorEstimates estimate_error_pair(const TrialConfig& cfg)
{
    if (cfg.trials < 1)
        throw ParameterError("trials must be at least 1");
    if (cfg.samples < 1 || cfg.samples % 2 == 0)
        throw ParameterError("L must be a positive odd integer");
    if (!(cfg.link_k.noise_var > 0.0 && cfg.link_n.noise_var > 0.0))
        throw ParameterError("noise variance must be positive");

    const auto chi =
        superpose(make_qam(cfg.mods.order_k, cfg.split.gamma_k), make_qam(cfg.mods.order_n, cfg.split.gamma_n));
    const std::size_t blocks = block_count(cfg.trials);
    std::vector<std::size_t> sic_hits(blocks, 0), nonsic_hits(blocks, 0);
    const auto L = static_cast<std::size_t>(cfg.samples);

    parallel_for(blocks, cfg.threads, [&](std::size_t b) {
        Rng rng = make_rng(cfg.seed, Stream::Trials, b);
        std::uniform_int_distribution<std::size_t> pick(0, chi.size() - 1);
        Observation at_n{std::vector<Complex>(L), cfg.link_n.h, cfg.link_n.noise_var};
        Observation at_k{std::vector<Complex>(L), cfg.link_k.h, cfg.link_k.noise_var};
        std::size_t sic = 0, nonsic = 0;
        for (std::size_t t = 0; t < block_size(b, cfg.trials); ++t) {
            const auto wn = sample_noise(at_n.noise_var, L, rng);
            for (std::size_t j = 0; j < L; ++j)
                at_n.y[j] = at_n.h * chi.points[pick(rng)] + wn[j];
            const auto wk = sample_noise(at_k.noise_var, L, rng);
            for (std::size_t j = 0; j < L; ++j)
                at_k.y[j] = at_k.h * chi.points[pick(rng)] + wk[j];
            sic += classify_multi(at_n, chi) == Hypothesis::NonSIC;
            nonsic += classify_multi(at_k, chi) == Hypothesis::SIC;
        }
        sic_hits[b] = sic;
        nonsic_hits[b] = nonsic;
    });

    return {EstimateWithCI::from_counts(std::accumulate(sic_hits.begin(), sic_hits.end(), std::size_t{0}),
                                        cfg.trials),
            EstimateWithCI::from_counts(
                std::accumulate(nonsic_hits.begin(), nonsic_hits.end(), std::size_t{0}), cfg.trials)};
}

EstimateWithCI estimate_majority_error(double p0, int samples, std::size_t trials, std::uint64_t seed,
                                       unsigned threads)
{
    if (trials < 1)
        throw ParameterError("trials must be at least 1");
    if (samples < 1 || samples % 2 == 0)
        throw ParameterError("L must be a positive odd integer");
    if (!(p0 >= 0.0 && p0 <= 1.0))
        throw ParameterError("p0 must lie in [0, 1]");
    const std::size_t blocks = block_count(trials);
    std::vector<std::size_t> hits(blocks, 0);
    parallel_for(blocks, threads, [&](std::size_t b) {
        Rng rng = make_rng(seed, Stream::Trials, b);
        std::bernoulli_distribution wrong(p0);
        std::size_t h = 0;
        for (std::size_t t = 0; t < block_size(b, trials); ++t) {
            int errors = 0;
            for (int j = 0; j < samples; ++j)
                errors += wrong(rng);
            h += 2 * errors > samples;
        }
        hits[b] = h;
    });
    return EstimateWithCI::from_counts(std::accumulate(hits.begin(), hits.end(), std::size_t{0}), trials);
}

std::optional<GridOptimum> grid_optimal_gamma(const LinkState& link_k, const LinkState& link_n,
                                              const SystemParams& params, double step)
{
    if (!(step > 0.0 && step <= 0.1))
        throw ParameterError("grid step must lie in (0, 0.1]");
    params.validate();
    if (params.p_t <= 0.0)
        return std::nullopt;
    const double rt = params.rate_target();
    const double snr_k = link_k.snr();
    const double snr_n = link_n.snr();
    const auto n = static_cast<long>(std::floor(1.0 / step + 1e-9));

    std::optional<GridOptimum> best;
    for (long i = 0; i <= n; ++i) {
        const double g = std::min(1.0, static_cast<double>(i) * step);
        const auto split = PowerSplit::from_gamma_n(g);
        const auto r = noma_rates(snr_k, snr_n, split);
        if (r.r_nonsic < rt || r.r_sic < rt)
            continue;
        const auto e = analytical_error_pair(link_k, link_n, split, params.mods, params.samples, params.model);
        if (e.p_sic_as_nonsic > params.p_t || e.p_nonsic_as_sic > params.p_t)
            continue;
        const double gain = gain_lower_bound(snr_k, snr_n, split, params.p_t);
        if (!best || gain >= best->gain)
            best = GridOptimum{g, gain};
    }
    return best;
}

SchedulingOutcome exhaustive_schedule(const UserDrop& drop, const SystemParams& params, double step)
{
    if (drop.size() > kExhaustiveMaxUsers)
        throw CostGuardError("exhaustive scheduling is limited to " + std::to_string(kExhaustiveMaxUsers) +
                             " users");
    if (drop.size() < 2)
        throw ParameterError("a drop needs at least two users");
    SchedulingOutcome out;
    out.nonsic_user = 1;
    const auto& ln = drop.links[0];
    for (std::size_t k = 1; k < drop.size(); ++k) {
        const auto& lk = drop.links[k];
        if (!(lk.snr() < ln.snr()))
            continue;
        const auto opt = grid_optimal_gamma(lk, ln, params, step);
        if (opt && (!out.feasible || opt->gain > out.lower_bound_gain)) {
            out.feasible = true;
            out.nonsic_user = k;
            out.split = PowerSplit::from_gamma_n(opt->gamma_n);
            out.lower_bound_gain = opt->gain;
        }
        ++out.iterations;
    }
    return out;
}

} // namespace noma
