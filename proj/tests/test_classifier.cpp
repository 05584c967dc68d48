#include "noma/channel.hpp"
#include "noma/classifier.hpp"
#include "noma/errors.hpp"
#include "noma/montecarlo.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace noma;

namespace {

double density(Complex y, Complex h, double var, Complex s)
{
    return std::exp(-std::norm(y - h * s) / var) / (std::numbers::pi * var);
}

} // namespace

TEST_CASE("sic likelihood equals direct 16-term sum")
{
    const auto chi = superpose(make_qam(4, 0.75), make_qam(4, 0.25));
    double direct = 0.0;
    for (auto s : chi.points)
        direct += std::exp(-std::norm(s)) / std::numbers::pi;
    direct /= 16.0;
    CHECK(likelihood_sic(0.0, 1.0, 1.0, chi) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("non-sic likelihood equals direct 4-term sum")
{
    const auto ck = make_qam(4, 0.76);
    const Complex y(0.3, 0.1);
    double direct = 0.0;
    for (auto s : ck.points)
        direct += density(y, 1.0, 0.5, s);
    direct /= 4.0;
    CHECK(likelihood_nonsic(y, 1.0, 0.5, ck) == doctest::Approx(direct).epsilon(1e-13));

    // Single-point alphabet is the CN(h s, var) density itself.
    const std::vector<Complex> one{Complex(0.2, -0.4)};
    CHECK(std::exp(log_likelihood(y, Complex(0.5, 0.5), 0.3, one)) ==
          doctest::Approx(density(y, Complex(0.5, 0.5), 0.3, one[0])).epsilon(1e-13));
}

TEST_CASE("likelihood is rotation invariant and peaks on the point set")
{
    const auto chi = superpose(make_qam(4, 0.76), make_qam(16, 0.24));
    const Complex y(0.4, -0.7), h(0.9, 0.3);
    const Complex rot = std::polar(1.0, 1.1);
    CHECK(log_likelihood_sic(y, h, 0.2, chi) == doctest::Approx(log_likelihood_sic(y * rot, h * rot, 0.2, chi)));

    // Small variance: dominated by the single nearest term.
    const double var = 1e-4;
    const Complex on = h * chi.points[7];
    CHECK(log_likelihood_sic(on, h, var, chi) ==
          doctest::Approx(std::log(density(on, h, var, chi.points[7]) / 64.0)).epsilon(1e-9));

    const auto ck = make_qam(4, 0.76);
    const double at_point = log_likelihood_nonsic(ck.points[0], 1.0, 1e-3, ck);
    for (Complex d : {Complex(0.01, 0), Complex(0, -0.02), Complex(0.05, 0.05)})
        CHECK(log_likelihood_nonsic(ck.points[0] + d, 1.0, 1e-3, ck) < at_point);
}

TEST_CASE("log-sum-exp survives tiny noise")
{
    const auto chi = superpose(make_qam(4, 0.76), make_qam(16, 0.24));
    const double ll = log_likelihood_sic(Complex(5.0, 5.0), 1.0, 1e-8, chi);
    CHECK(std::isfinite(ll));
}

TEST_CASE("noiseless decisions")
{
    const auto chi = superpose(make_qam(4, 0.76), make_qam(16, 0.24));
    // Largest-energy SIC symbol added to a non-SIC symbol.
    std::size_t corner = 0;
    for (std::size_t l = 0; l < chi.parent_n.size(); ++l)
        if (std::norm(chi.parent_n.points[l]) > std::norm(chi.parent_n.points[corner]))
            corner = l;
    const Complex h(0.8, -0.6);
    const Complex y = h * chi.points[chi.index(2, corner)];
    CHECK(classify_single(y, h, 1e-3, chi) == Hypothesis::SIC);

    // With gamma_n = 4 gamma_k every non-SIC point is also a composite point; the larger
    // prior of the smaller alphabet then decides NonSIC.
    const auto chi2 = superpose(make_qam(4, 0.2), make_qam(4, 0.8));
    for (auto s : chi2.parent_k.points) {
        bool member = false;
        for (auto p : chi2.points)
            member = member || std::abs(p - s) < 1e-12;
        REQUIRE(member);
        CHECK(classify_single(h * s, h, 1e-3, chi2) == Hypothesis::NonSIC);
    }
}

TEST_CASE("majority vote over samples")
{
    const auto chi = superpose(make_qam(4, 0.76), make_qam(16, 0.24));
    const Complex h(1.0, 0.0);
    const double var = 1e-4;
    const Complex sic = chi.points[chi.index(0, 15)];
    const Complex nonsic_like = chi.parent_k.points[0];
    REQUIRE(classify_single(sic, h, var, chi) == Hypothesis::SIC);
    REQUIRE(classify_single(nonsic_like, h, var, chi) == Hypothesis::NonSIC);

    CHECK(classify_multi({{sic, sic, sic}, h, var}, chi) == Hypothesis::SIC);
    CHECK(classify_multi({{sic, nonsic_like, sic}, h, var}, chi) == Hypothesis::SIC);
    CHECK(classify_multi({{nonsic_like, sic, nonsic_like}, h, var}, chi) == Hypothesis::NonSIC);
    CHECK_THROWS_AS(classify_multi({{sic, sic}, h, var}, chi), ParameterError);
    CHECK_THROWS_AS(classify_multi({{}, h, var}, chi), ParameterError);
}

TEST_CASE("sic user at 30 dB is rarely misclassified")
{
    TrialConfig cfg;
    cfg.trials = 10000;
    cfg.seed = 3;
    cfg.split = PowerSplit::from_gamma_n(0.24);
    cfg.link_n = cfg.link_k = link_from_snr(db_to_linear(30.0));
    CHECK(estimate_error_pair(cfg).sic_as_nonsic.mean < 0.05);
}

TEST_CASE("five samples beat one at 20 dB")
{
    TrialConfig cfg;
    cfg.trials = 20000;
    cfg.seed = 4;
    cfg.split = PowerSplit::from_gamma_n(0.24);
    cfg.link_n = cfg.link_k = link_from_snr(db_to_linear(20.0));
    const auto one = estimate_error_pair(cfg).sic_as_nonsic;
    cfg.samples = 5;
    const auto five = estimate_error_pair(cfg).sic_as_nonsic;
    CHECK(five.mean < one.mean);
}

TEST_CASE("two-user group reduces to the binary classifier")
{
    const auto ck = make_qam(4, 0.76);
    const auto cn = make_qam(16, 0.24);
    const auto chi = superpose(ck, cn);
    const std::vector<Constellation> users{cn, ck};
    const auto sets = m_user_hypothesis_sets(users);
    REQUIRE(sets.size() == 2);
    CHECK(sets[0].size() == 64);
    CHECK(sets[1].size() == 4);

    Rng rng = make_rng(21, Stream::Trials);
    std::normal_distribution<double> n01(0.0, 0.4);
    for (int t = 0; t < 2000; ++t) {
        const Complex y(n01(rng), n01(rng));
        const Complex h(0.7, 0.2);
        const double ls = log_likelihood_sic(y, h, 0.05, chi);
        const double ln = log_likelihood_nonsic(y, h, 0.05, ck);
        if (ls == ln)
            continue;
        const auto m = classify_m_user(y, h, 0.05, sets);
        CHECK((m == 0) == (classify_single(y, h, 0.05, chi) == Hypothesis::SIC));
    }

    // Noiseless full composite point at high SNR: the strongest user's hypothesis.
    CHECK(classify_m_user(chi.points[chi.index(1, 3)], 1.0, 1e-4, sets) == 0);
}

TEST_CASE("three-user group agrees with brute force")
{
    const std::vector<Constellation> users{make_qam(4, 0.1), make_qam(4, 0.3), make_qam(4, 0.6)};
    const auto sets = m_user_hypothesis_sets(users);
    REQUIRE(sets.size() == 3);
    CHECK(sets[0].size() == 64);
    CHECK(sets[1].size() == 16);
    CHECK(sets[2].size() == 4);

    // Hypothesis alphabets built independently by nested loops.
    std::vector<std::vector<Complex>> brute(3);
    for (auto a : users[0].points)
        for (auto b : users[1].points)
            for (auto c : users[2].points)
                brute[0].push_back(a + b + c);
    for (auto b : users[1].points)
        for (auto c : users[2].points)
            brute[1].push_back(b + c);
    brute[2] = users[2].points;

    Rng rng = make_rng(22, Stream::Trials);
    std::uniform_int_distribution<std::size_t> pick(0, 63);
    std::normal_distribution<double> n01(0.0, 1.0);
    const double var = 0.05;
    const Complex h(0.6, -0.5);
    for (int t = 0; t < 1000; ++t) {
        const Complex y = h * brute[0][pick(rng)] + std::sqrt(var / 2) * Complex(n01(rng), n01(rng));
        std::size_t best = 0;
        double best_p = -1.0;
        for (std::size_t m = 0; m < 3; ++m) {
            double p = 0.0;
            for (auto s : brute[m])
                p += density(y, h, var, s);
            p /= static_cast<double>(brute[m].size());
            if (p > best_p) {
                best_p = p;
                best = m;
            }
        }
        CHECK(classify_m_user(y, h, var, sets) == best);
    }
}
