#pragma once

#include "noma/constellation.hpp"

#include <span>
#include <vector>

namespace noma {

/// Receiver-side decision on whether the received signal needs SIC.
enum class Hypothesis { SIC, NonSIC };

/// L received samples sharing one channel coefficient.
struct Observation {
    std::vector<Complex> y;
    Complex h{1.0, 0.0};
    double noise_var = 1.0;
};

/// log( (1/|A|) sum_{s in A} exp(-|y - h s|^2 / noise_var) / (pi noise_var) ),
/// evaluated with log-sum-exp so small noise variances do not underflow.
double log_likelihood(Complex y, Complex h, double noise_var, std::span<const Complex> alphabet);

double log_likelihood_sic(Complex y, Complex h, double noise_var, const CompositeConstellation& chi);
double log_likelihood_nonsic(Complex y, Complex h, double noise_var, const Constellation& chi_k);

double likelihood_sic(Complex y, Complex h, double noise_var, const CompositeConstellation& chi);
double likelihood_nonsic(Complex y, Complex h, double noise_var, const Constellation& chi_k);

/// SIC iff p(y|H_S) > p(y|H_N); exact ties go to NonSIC. chi.parent_k is the non-SIC alphabet.
Hypothesis classify_single(Complex y, Complex h, double noise_var, const CompositeConstellation& chi);

/// Per-sample decisions combined by majority vote. The sample count must be odd.
Hypothesis classify_multi(const Observation& obs, const CompositeConstellation& chi);

/// Alphabets scanned by each hypothesis of an M-user group ordered strongest first:
/// entry m is chi_m (+) chi_{m+1} (+) ... (+) chi_M.
std::vector<std::vector<Complex>> m_user_hypothesis_sets(std::span<const Constellation> users);

/// argmax_m p(y|H_m) over the given hypothesis alphabets (0-based); ties go to the smallest m.
std::size_t classify_m_user(Complex y, Complex h, double noise_var,
                            std::span<const std::vector<Complex>> hypothesis_sets);

} // namespace noma
