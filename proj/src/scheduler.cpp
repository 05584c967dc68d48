#include "noma/scheduler.hpp"

#include "noma/errors.hpp"

#include <set>

namespace noma {

PairEvaluator::PairEvaluator(const UserDrop& drop, const SystemParams& params)
    : drop_(drop), params_(params), cache_(drop.size())
{
    if (drop.size() < 2)
        throw ParameterError("a drop needs at least two users");
    params_.validate();
}

const AllocationResult& PairEvaluator::allocation(std::size_t k)
{
    if (k == 0 || k >= drop_.size())
        throw ParameterError("non-SIC candidate index out of range");
    auto& slot = cache_[k];
    if (!slot) {
        ++evaluations_;
        const auto& lk = drop_.links[k];
        const auto& ln = drop_.links[0];
        // Equal gains leave no SIC ordering; such a pairing is unusable.
        slot = lk.snr() < ln.snr() ? allocate(lk, ln, params_) : AllocationResult{};
    }
    return *slot;
}

double case_snr_threshold(double gamma_n, double p_t)
{
    if (!(gamma_n > 0.0))
        throw ParameterError("gamma_n must be positive");
    return (1.0 - 2.0 * gamma_n - 2.0 * p_t + 2.0 * gamma_n * p_t) / gamma_n;
}

int classify_case(const AllocationResult& alloc, double snr_k, double p_t)
{
    if (!alloc.feasible())
        throw ParameterError("case is undefined for an infeasible allocation");
    const bool at_or_below = snr_k <= case_snr_threshold(alloc.split->gamma_n, p_t);
    if (alloc.binding == Binding::Rate)
        return at_or_below ? 1 : 2;
    return at_or_below ? 4 : 3;
}

std::size_t default_start_user(std::size_t user_count)
{
    if (user_count < 2)
        throw ParameterError("a drop needs at least two users");
    const std::size_t rank = (user_count + 1) / 2;
    return rank < 2 ? 1 : rank - 1;
}

namespace {

SchedulingOutcome outcome_for(PairEvaluator& eval, std::size_t k)
{
    SchedulingOutcome out;
    const auto& a = eval.allocation(k);
    out.nonsic_user = k;
    out.feasible = a.feasible();
    if (out.feasible) {
        out.split = *a.split;
        out.lower_bound_gain = a.lower_bound_gain;
    }
    return out;
}

std::optional<std::size_t> nearest_feasible(PairEvaluator& eval, std::size_t start)
{
    const std::size_t last = eval.user_count() - 1;
    if (eval.feasible(start))
        return start;
    for (std::size_t d = 1; d <= last; ++d) {
        if (start > d && eval.feasible(start - d))
            return start - d;
        if (start + d <= last && eval.feasible(start + d))
            return start + d;
    }
    return std::nullopt;
}

} // namespace

SchedulingOutcome schedule_proposed(PairEvaluator& eval, std::optional<std::size_t> start)
{
    const std::size_t count = eval.user_count();
    const std::size_t first = start.value_or(default_start_user(count));
    if (first == 0 || first >= count)
        throw ParameterError("start user must be a non-SIC candidate");

    const auto begin = nearest_feasible(eval, first);
    if (!begin) {
        SchedulingOutcome none;
        none.nonsic_user = first;
        return none;
    }

    std::size_t cur = *begin;
    std::set<std::size_t> visited{cur};
    std::vector<CaseStep> trace;
    int iterations = 0;
    const double p_t = eval.params().p_t;

    while (true) {
        ++iterations;
        const auto& here = eval.allocation(cur);
        CaseStep step;
        step.case_id = classify_case(here, eval.drop().links[cur].snr(), p_t);
        step.from = cur;

        // Cases 1-2 move toward stronger users, cases 3-4 toward weaker ones.
        const bool stronger = step.case_id <= 2;
        std::optional<std::size_t> next;
        for (std::size_t j = cur;;) {
            if (stronger ? j <= 1 : j + 1 >= count)
                break;
            j = stronger ? j - 1 : j + 1;
            if (eval.feasible(j)) {
                next = j;
                break;
            }
        }
        step.to = next;
        if (!next) {
            trace.push_back(step);
            break;
        }

        const auto& there = eval.allocation(*next);
        const bool better = there.lower_bound_gain > here.lower_bound_gain;
        if (visited.contains(*next)) {
            step.accepted = better;
            trace.push_back(step);
            if (better)
                cur = *next;
            break;
        }
        step.shortcut = (step.case_id == 1 || step.case_id == 3) &&
                        there.split->gamma_n >= here.split->gamma_n;
        step.accepted = step.shortcut || better;
        trace.push_back(step);
        if (!step.accepted)
            break;
        cur = *next;
        visited.insert(cur);
    }

    auto out = outcome_for(eval, cur);
    out.iterations = iterations;
    out.case_trace = std::move(trace);
    return out;
}

SchedulingOutcome schedule_proposed(const UserDrop& drop, const SystemParams& params,
                                    std::optional<std::size_t> start)
{
    PairEvaluator eval(drop, params);
    return schedule_proposed(eval, start);
}

SchedulingOutcome schedule_strongest_strongest(PairEvaluator& eval)
{
    for (std::size_t k = 1; k < eval.user_count(); ++k)
        if (eval.feasible(k))
            return outcome_for(eval, k);
    SchedulingOutcome none;
    none.nonsic_user = 1;
    return none;
}

SchedulingOutcome schedule_strongest_strongest(const UserDrop& drop, const SystemParams& params)
{
    PairEvaluator eval(drop, params);
    return schedule_strongest_strongest(eval);
}

SchedulingOutcome schedule_strongest_weakest(PairEvaluator& eval)
{
    for (std::size_t k = eval.user_count() - 1; k >= 1; --k)
        if (eval.feasible(k))
            return outcome_for(eval, k);
    SchedulingOutcome none;
    none.nonsic_user = eval.user_count() - 1;
    return none;
}

SchedulingOutcome schedule_strongest_weakest(const UserDrop& drop, const SystemParams& params)
{
    PairEvaluator eval(drop, params);
    return schedule_strongest_weakest(eval);
}

} // namespace noma
