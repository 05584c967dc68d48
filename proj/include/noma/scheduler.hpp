#pragma once

#include "noma/channel.hpp"
#include "noma/optimizer.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace noma {

/// Lazily allocates power for each pairing (k, 0) of one drop and caches the result,
/// so several schedulers on the same drop share the work.
class PairEvaluator {
public:
    PairEvaluator(const UserDrop& drop, const SystemParams& params);

    /// Allocation with user 0 as SIC user and user k (1 <= k < K) as non-SIC user.
    const AllocationResult& allocation(std::size_t k);
    bool feasible(std::size_t k) { return allocation(k).feasible(); }

    std::size_t user_count() const { return drop_.size(); }
    const UserDrop& drop() const { return drop_; }
    const SystemParams& params() const { return params_; }
    std::size_t evaluations() const { return evaluations_; }

private:
    const UserDrop& drop_;
    SystemParams params_;
    std::vector<std::optional<AllocationResult>> cache_;
    std::size_t evaluations_ = 0;
};

/// Which constraint binds and on which side of the SNR threshold the user sits:
/// 1 rate-bound and snr_k <= thr, 2 rate-bound and snr_k > thr,
/// 3 classifier-bound and snr_k > thr, 4 classifier-bound and snr_k <= thr,
/// with thr = (1 - 2 gamma - 2 p_t + 2 gamma p_t) / gamma. Requires a feasible allocation.
int classify_case(const AllocationResult& alloc, double snr_k, double p_t);

/// Threshold separating cases 1/4 from 2/3.
double case_snr_threshold(double gamma_n, double p_t);

struct CaseStep {
    int case_id = 0;
    std::size_t from = 0;
    std::optional<std::size_t> to; ///< Candidate examined; empty at the edge of the user list.
    bool accepted = false;
    bool shortcut = false; ///< Accepted on the gamma rule without comparing gains.
};

struct SchedulingOutcome {
    std::size_t sic_user = 0;
    std::size_t nonsic_user = 0;
    PowerSplit split{};
    double lower_bound_gain = 0.0;
    bool feasible = false;
    int iterations = 0;
    std::vector<CaseStep> case_trace;
};

/// 0-based default start: the user at rank ceil(K/2), never the SIC user.
std::size_t default_start_user(std::size_t user_count);

/// Case-driven local walk over non-SIC candidates starting from `start`.
SchedulingOutcome schedule_proposed(PairEvaluator& eval, std::optional<std::size_t> start = {});
SchedulingOutcome schedule_proposed(const UserDrop& drop, const SystemParams& params,
                                    std::optional<std::size_t> start = {});

/// Pairs the strongest user with the strongest feasible non-SIC candidate.
SchedulingOutcome schedule_strongest_strongest(PairEvaluator& eval);
SchedulingOutcome schedule_strongest_strongest(const UserDrop& drop, const SystemParams& params);

/// Pairs the strongest user with the weakest feasible non-SIC candidate.
SchedulingOutcome schedule_strongest_weakest(PairEvaluator& eval);
SchedulingOutcome schedule_strongest_weakest(const UserDrop& drop, const SystemParams& params);

} // namespace noma
