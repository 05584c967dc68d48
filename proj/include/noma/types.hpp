#pragma once

namespace noma {

/// Power allocation ratios of the scheduled pair; gamma_k + gamma_n == 1.
struct PowerSplit {
    double gamma_k = 1.0;
    double gamma_n = 0.0;

    /// Throws ParameterError unless gamma_n is in [0, 1].
    static PowerSplit from_gamma_n(double gamma_n);
};

/// Modulation orders of the non-SIC user (k) and the SIC user (n).
struct ModulationPair {
    int order_k = 4;
    int order_n = 16;
};

/// The two blind-classification error types of a scheduled pair.
struct ErrorProbabilities {
    double p_sic_as_nonsic = 0.0; ///< SIC user decides it needs no SIC.
    double p_nonsic_as_sic = 0.0; ///< Non-SIC user decides it needs SIC.
};

} // namespace noma
