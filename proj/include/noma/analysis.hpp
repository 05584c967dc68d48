#pragma once

#include "noma/channel.hpp"
#include "noma/constellation.hpp"
#include "noma/types.hpp"

namespace noma {

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
double q_function(double x);

using TailFunction = double (*)(double);

/// How L single-sample error probabilities are merged into the L-sample error.
enum class MajoritySum {
    Standard, ///< sum_{j=(L+1)/2}^{L} C(L,j) p^j (1-p)^(L-j)
    Literal,  ///< sum_{j=1}^{(L+1)/2} C(L,j) p^j (1-p)^(L-j)
};

/// Knobs of the closed-form error model. Tests swap `tail` to check that a
/// corrupted model is caught.
struct AnalysisModel {
    TailFunction tail = &q_function;
    MajoritySum majority = MajoritySum::Standard;
    bool quadrant_reduction = true;
};

/// Single-sample probability that the SIC user classifies its signal as non-SIC.
/// Unclamped; may leave [0, 1] by rounding only.
double p_err_sic_user_raw(Complex h, double noise_var, const CompositeConstellation& chi,
                          const AnalysisModel& model = {});

/// Single-sample probability that the non-SIC user classifies its signal as SIC.
double p_err_nonsic_user_raw(Complex h, double noise_var, const CompositeConstellation& chi,
                             const AnalysisModel& model = {});

/// Raw values clamped to [0, 1].
double p_err_sic_user(Complex h, double noise_var, const CompositeConstellation& chi,
                      const AnalysisModel& model = {});
double p_err_nonsic_user(Complex h, double noise_var, const CompositeConstellation& chi,
                         const AnalysisModel& model = {});

/// Overloads taking the parts separately. Throws ParameterError when chi is not
/// chi_k (+) chi_n.
double p_err_sic_user(Complex h, double noise_var, const CompositeConstellation& chi,
                      const Constellation& chi_k, const Constellation& chi_n,
                      const AnalysisModel& model = {});
double p_err_nonsic_user(Complex h, double noise_var, const CompositeConstellation& chi,
                         const Constellation& chi_k, const Constellation& chi_n,
                         const AnalysisModel& model = {});

/// Error of an L-sample majority vote given the single-sample error p0. L must be odd.
double combine_majority(double p0, int samples, MajoritySum rule = MajoritySum::Standard);

/// L-sample error pair of a scheduled pair at the given split. Splits whose composite
/// set is degenerate (including gamma_n in {0, 1}) report probability 1 for both.
ErrorProbabilities analytical_error_pair(const LinkState& link_k, const LinkState& link_n,
                                         PowerSplit split, ModulationPair mods, int samples,
                                         const AnalysisModel& model = {});

/// Non-SIC user's L-sample error only.
double analytical_nonsic_error(const LinkState& link_k, PowerSplit split, ModulationPair mods,
                               int samples, const AnalysisModel& model = {});

/// SIC user's L-sample error only.
double analytical_sic_error(const LinkState& link_n, PowerSplit split, ModulationPair mods,
                            int samples, const AnalysisModel& model = {});

} // namespace noma
