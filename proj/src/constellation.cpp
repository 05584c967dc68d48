#include "noma/constellation.hpp"

#include "noma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace noma {

double Constellation::mean_energy() const
{
    double sum = 0.0;
    for (const auto& p : points)
        sum += std::norm(p);
    return points.empty() ? 0.0 : sum / static_cast<double>(points.size());
}

Constellation make_qam(int order, double power_weight)
{
    if (order != 4 && order != 16 && order != 64)
        throw ParameterError("unsupported QAM order " + std::to_string(order));
    if (!(power_weight > 0.0 && power_weight <= 1.0))
        throw ParameterError("power weight must lie in (0, 1]");

    const int side = static_cast<int>(std::lround(std::sqrt(order)));
    // Mean energy of the odd-integer grid {+-1, +-3, ...}^2 is 2(M-1)/3.
    const double scale = std::sqrt(power_weight * 3.0 / (2.0 * (order - 1)));

    Constellation c;
    c.order = order;
    c.power_weight = power_weight;
    c.points.reserve(static_cast<std::size_t>(order));
    for (int a = 0; a < side; ++a) {
        for (int b = 0; b < side; ++b) {
            const double re = 2.0 * a - (side - 1);
            const double im = 2.0 * b - (side - 1);
            c.points.emplace_back(re * scale, im * scale);
        }
    }
    return c;
}

std::vector<Complex> minkowski_sum(std::span<const Complex> a, std::span<const Complex> b)
{
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b)
            out.push_back(x + y);
    return out;
}

double min_pairwise_distance(std::span<const Complex> points)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::min(best, std::abs(points[i] - points[j]));
    return best;
}

CompositeConstellation superpose(const Constellation& ck, const Constellation& cn)
{
    if (std::abs(ck.power_weight + cn.power_weight - 1.0) > 1e-9)
        throw ParameterError("power weights of a superposition must sum to 1");

    CompositeConstellation chi;
    chi.parent_k = ck;
    chi.parent_n = cn;
    chi.points = minkowski_sum(ck.points, cn.points);
    if (min_pairwise_distance(chi.points) <= kDegeneracyThreshold)
        throw DegenerateConstellationError("composite constellation has coincident points");
    chi.regions = decision_regions(chi.points);
    return chi;
}

namespace {

// Sorted distinct levels; values closer than the snap tolerance collapse to the first.
std::vector<double> unique_levels(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    std::vector<double> levels;
    for (double v : values)
        if (levels.empty() || v - levels.back() > kGridSnapTolerance)
            levels.push_back(v);
    return levels;
}

std::size_t level_index(const std::vector<double>& levels, double v)
{
    auto it = std::lower_bound(levels.begin(), levels.end(), v - kGridSnapTolerance);
    return static_cast<std::size_t>(it - levels.begin());
}

} // namespace

std::vector<DecisionRegion> decision_regions(std::span<const Complex> points)
{
    std::vector<double> re, im;
    re.reserve(points.size());
    im.reserve(points.size());
    for (const auto& p : points) {
        re.push_back(p.real());
        im.push_back(p.imag());
    }
    const auto re_levels = unique_levels(std::move(re));
    const auto im_levels = unique_levels(std::move(im));

    if (re_levels.size() * im_levels.size() != points.size())
        throw NonRectangularRegionsError("point set does not factorize into a grid");

    std::vector<char> seen(points.size(), 0);
    std::vector<DecisionRegion> regions;
    regions.reserve(points.size());
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
        const std::size_t a = level_index(re_levels, p.real());
        const std::size_t b = level_index(im_levels, p.imag());
        auto& cell = seen[a * im_levels.size() + b];
        if (cell)
            throw NonRectangularRegionsError("grid cell occupied twice");
        cell = 1;

        DecisionRegion r;
        r.re_lo = a == 0 ? -inf : 0.5 * (re_levels[a - 1] + re_levels[a]);
        r.re_hi = a + 1 == re_levels.size() ? inf : 0.5 * (re_levels[a] + re_levels[a + 1]);
        r.im_lo = b == 0 ? -inf : 0.5 * (im_levels[b - 1] + im_levels[b]);
        r.im_hi = b + 1 == im_levels.size() ? inf : 0.5 * (im_levels[b] + im_levels[b + 1]);
        regions.push_back(r);
    }
    return regions;
}

std::vector<std::size_t> first_quadrant_indices(const Constellation& c)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const auto& p = c.points[i];
        if (std::abs(p.real()) < kGridSnapTolerance || std::abs(p.imag()) < kGridSnapTolerance)
            throw SymmetryError("constellation point on an axis");
        if (p.real() > 0.0 && p.imag() > 0.0)
            out.push_back(i);
    }
    if (out.size() * 4 != c.points.size())
        throw SymmetryError("constellation is not quadrant symmetric");
    return out;
}

} // namespace noma
