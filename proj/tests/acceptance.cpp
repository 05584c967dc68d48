// One line per acceptance criterion; exit status is nonzero if any criterion fails.

#include "noma/analysis.hpp"
#include "noma/config.hpp"
#include "noma/experiments.hpp"
#include "noma/montecarlo.hpp"
#include "noma/rates.hpp"
#include "noma/rng.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace noma;

namespace {

int failures = 0;

void report(bool pass, int id, const std::string& what, const std::string& measured)
{
    failures += !pass;
    std::printf("[%s] criterion %d: %s | %s\n", pass ? "PASS" : "FAIL", id, what.c_str(), measured.c_str());
    std::fflush(stdout);
}

void note(const std::string& text)
{
    std::printf("       note: %s\n", text.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// SNR (dB) at which a monotone curve crosses `level`, by bisection on [lo, hi].
double crossing(const std::function<double(double)>& f, double level, double lo, double hi)
{
    const bool rising = f(hi) > f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) > level) == rising ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

void criterion1()
{
    constexpr double kTolDb = 2.0;
    const auto split = PowerSplit::from_gamma_n(0.24);
    const ModulationPair mods{4, 16};
    auto pn = [&](double db) { return analytical_sic_error(link_from_snr(db_to_linear(db)), split, mods, 1); };
    auto pk = [&](double db) { return analytical_nonsic_error(link_from_snr(db_to_linear(db)), split, mods, 1); };
    const double xn = crossing(pn, 0.1, -10.0, 50.0);
    const double xk = crossing(pk, 0.1, -10.0, 50.0);
    const bool pass = std::abs(xn - 23.0) <= kTolDb && std::abs(xk - 5.0) <= kTolDb;
    report(pass, 1, "fig7 crossings (SIC-user error 0.1 at 23+-2 dB, non-SIC error 0.1 at 5+-2 dB)",
           fmt("SIC-user crossing %.3f dB, non-SIC crossing %.3f dB", xn, xk));
}

void criterion2()
{
    constexpr std::size_t kTrials = 100000;
    constexpr double kFloorN = 0.05, kFloorK = 0.08, kSeMult = 5.0;
    const ModulationPair pairs[] = {{4, 4}, {4, 16}};
    const double gammas[] = {0.15, 0.24, 0.35};
    const double snrs[] = {0, 5, 10, 15, 20, 25, 30};
    int bad_n = 0, bad_k = 0, points = 0;
    double worst_n = 0.0, worst_k = 0.0;
    std::string worst_n_at, worst_k_at;
    std::uint64_t idx = 0;
    for (auto mods : pairs)
        for (double g : gammas)
            for (double db : snrs) {
                const auto link = link_from_snr(db_to_linear(db));
                const auto split = PowerSplit::from_gamma_n(g);
                const auto an = analytical_error_pair(link, link, split, mods, 1);
                TrialConfig tc;
                tc.trials = kTrials;
                tc.seed = derive_seed(2024, Stream::Trials, idx++);
                tc.mods = mods;
                tc.split = split;
                tc.link_k = tc.link_n = link;
                const auto mc = estimate_error_pair(tc);
                const double dn = std::abs(an.p_sic_as_nonsic - mc.sic_as_nonsic.mean);
                const double dk = std::abs(an.p_nonsic_as_sic - mc.nonsic_as_sic.mean);
                const double tn = std::max(kFloorN, kSeMult * mc.sic_as_nonsic.std_error);
                const double tk = std::max(kFloorK, kSeMult * mc.nonsic_as_sic.std_error);
                const std::string at = std::to_string(mods.order_k) + "/" + std::to_string(mods.order_n) +
                                       fmt(" g=%.2f %.0f dB", g, db);
                bad_n += dn > tn;
                bad_k += dk > tk;
                if (dn - tn > worst_n) {
                    worst_n = dn - tn;
                    worst_n_at = at;
                }
                if (dk - tk > worst_k) {
                    worst_k = dk - tk;
                    worst_k_at = at;
                }
                ++points;
            }
    report(bad_n == 0 && bad_k == 0, 2, "analytical vs Monte Carlo on the 42-point grid, 1e5 trials",
           fmt("%.0f/%.0f SIC-user breaches, %.0f/%.0f non-SIC breaches", bad_n, points, bad_k, points) +
               (bad_n ? fmt("; worst SIC excess %.3f", worst_n) + " at " + worst_n_at : "") +
               (bad_k ? fmt("; worst non-SIC excess %.3f", worst_k) + " at " + worst_k_at : ""));
}

void criterion3()
{
    constexpr double kStep = 1e-6;
    constexpr int kPoints = 1000;
    Rng rng = make_rng(3, Stream::Instances);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0;
    for (int t = 0; t < kPoints; ++t) {
        const double snr_k = std::pow(10.0, 4.0 * u(rng) - 1.0);
        const double snr_n = snr_k * (1.0 + std::pow(10.0, 3.0 * u(rng) - 1.0));
        const double pt = 0.1 * u(rng);
        const double g = kStep + (1.0 - 2.0 * kStep) * u(rng);
        const auto a = PowerSplit::from_gamma_n(g), b = PowerSplit::from_gamma_n(g + kStep);
        violations += !(rate_sic(snr_n, b) > rate_sic(snr_n, a));
        violations += !(rate_nonsic(snr_k, b) < rate_nonsic(snr_k, a));
        violations += !(gain_lower_bound(snr_k, snr_n, b, pt) > gain_lower_bound(snr_k, snr_n, a, pt));
    }
    report(violations == 0, 3, "finite-difference monotonicity of R_n, R_k and the gain bound in gamma_n",
           fmt("%.0f violations over %.0f points", violations, kPoints));
}

void criterion4()
{
    constexpr double kGammaTol = 2e-3, kPlugTol = 1e-6, kRateTol = 1e-9;
    const auto gaps = allocation_grid_gaps(SystemParams{}, 4, 20);
    double wg = 0.0, wp = 0.0, wr = 0.0;
    for (const auto& g : gaps) {
        wg = std::max(wg, g.gamma_gap);
        wp = std::max(wp, g.plug_back_violation);
        wr = std::max(wr, g.rate_boundary_gap);
    }
    report(gaps.size() == 20 && wg <= kGammaTol && wp <= kPlugTol && wr <= kRateTol, 4,
           "allocation vs constrained grid search on 20 feasible instances",
           fmt("max |gamma* - grid| %.2e, max plug-back violation %.2e, max rate-boundary error %.2e", wg, wp, wr));
}

void criterion5()
{
    constexpr std::size_t kTrials = 100000;
    constexpr double kSeMult = 5.0;
    const double exact = combine_majority(0.1, 3);
    bool pass = std::abs(exact - 0.028) <= 1e-15;
    double worst = 0.0;
    std::uint64_t seed = 500;
    for (double p0 : {0.05, 0.1, 0.2})
        for (int l : {3, 5, 7}) {
            const auto e = estimate_majority_error(p0, l, kTrials, seed++);
            const double z = std::abs(e.mean - combine_majority(p0, l)) / std::max(e.std_error, 1e-12);
            worst = std::max(worst, z);
            pass = pass && z <= kSeMult;
        }
    report(pass, 5, "majority combiner: exact value and Monte Carlo agreement",
           fmt("combine_majority(0.1, 3) = %.17g; worst deviation %.2f SE", exact, worst));
}

GainPoint dominance_run(double snr_db, int users, std::size_t drops, std::uint64_t seed)
{
    return evaluate_gain_point(SystemParams{}, users, 50.0, snr_db, drops, seed, 0);
}

void criterion6()
{
    const auto g = dominance_run(10.0, 10, 200, 6);
    const bool dom = g.proposed - g.sw >= -g.se_diff_sw && g.proposed - g.ss >= -g.se_diff_ss;

    // Defaults leave most drops without a feasible pair; the oracle comparison uses 40 dB.
    const auto s = scheduler_vs_exhaustive(SystemParams{}, 5, 50.0, 40.0, 100, 6, 0);
    const bool oracle = s.worst_excess <= 0.0 && s.equal_fraction >= 0.9;
    report(dom && oracle, 6, "scheduler dominance (K=10, 200 paired drops, 10 dB) and exhaustive oracle (K=5)",
           fmt("proposed %.4f, SW %.4f, SS %.4f (paired SE %.4f)", g.proposed, g.sw, g.ss,
               std::max(g.se_diff_sw, g.se_diff_ss)) +
               fmt("; %.0f of 200 drops feasible; oracle: equal on %.0f%% of %.0f drops, worst excess %.2e",
                   g.feasible_drops, 100.0 * s.equal_fraction, s.instances, s.worst_excess));
    if (g.feasible_drops == 0)
        note("no drop admits a feasible pair at 10 dB transmit SNR, so the dominance check compares zeros");

    const auto hi = dominance_run(40.0, 10, 200, 6);
    note(fmt("same check at 40 dB: proposed %.4f, SW %.4f, SS %.4f, %.0f drops feasible", hi.proposed, hi.sw, hi.ss,
             hi.feasible_drops) +
         ((hi.proposed - hi.sw >= -hi.se_diff_sw && hi.proposed - hi.ss >= -hi.se_diff_ss) ? " (holds)"
                                                                                           : " (does not hold)"));
}

struct LSweep {
    std::vector<double> proposed, ss;
    std::size_t feasible = 0;
};

LSweep l_sweep(double snr_db)
{
    const auto cfg = default_config(Experiment::Fig9);
    LSweep out;
    for (int l : cfg.l_points) {
        auto p = cfg.system();
        p.samples = l;
        const auto g = evaluate_gain_point(p, cfg.K, cfg.radius, snr_db, cfg.drops, cfg.seed, 0);
        out.proposed.push_back(g.proposed);
        out.ss.push_back(g.ss);
        out.feasible += g.feasible_drops;
    }
    return out;
}

bool l_sufficient(const LSweep& s)
{
    // l_points = {1, 3, 5, 7, 9}
    const double g3 = s.proposed[1], g9 = s.proposed[4];
    bool ok = std::abs(g3 - g9) <= 0.05 * std::abs(g9);
    for (std::size_t i = 1; i < s.ss.size(); ++i)
        ok = ok && s.ss[i] <= s.ss[i - 1];
    return ok;
}

void criterion7()
{
    const auto s = l_sweep(10.0);
    report(l_sufficient(s), 7, "fig9: proposed gain at L=3 within 5% of L=9, Strongest-Strongest non-increasing in L",
           fmt("proposed L=3 %.4f, L=9 %.4f; SS L=1 %.4f, L=9 %.4f", s.proposed[1], s.proposed[4], s.ss[0], s.ss[4]));
    if (s.feasible == 0)
        note("no drop admits a feasible pair at the default 10 dB, so every gain is zero");
    const auto hi = l_sweep(40.0);
    note(fmt("same sweep at 40 dB: proposed L=3 %.4f, L=9 %.4f; SS L=1 %.4f, L=9 %.4f", hi.proposed[1],
             hi.proposed[4], hi.ss[0], hi.ss[4]) +
         (l_sufficient(hi) ? " (holds)" : " (does not hold)"));
}

void criterion8()
{
    bool same = true;
    for (auto e : {Experiment::Fig7, Experiment::Fig8, Experiment::Fig9, Experiment::Fig10}) {
        auto c = default_config(e);
        c.trials = 20000;
        c.drops = 24;
        c.K = 12;
        if (e == Experiment::Fig7)
            c.snr_points = {0, 10, 20, 30};
        else
            c.snr_db = 35.0;
        if (e == Experiment::Fig8)
            c.snr_points = {25, 35};
        c.threads = 1;
        const auto a = run_experiment(c).table.to_csv();
        const auto a2 = run_experiment(c).table.to_csv();
        c.threads = 4;
        const auto b = run_experiment(c).table.to_csv();
        same = same && a == a2 && a == b;
    }
    report(same, 8, "byte-identical CSV on rerun and across 1 vs 4 workers (fig7-fig10)",
           same ? "all identical" : "outputs differ");
}

} // namespace

int main()
{
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures ? 1 : 0;
}
